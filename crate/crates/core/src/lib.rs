//! Feigin–Loktev fusion products of graded `g[t]`-modules computed by exact
//! linear algebra, affine and generalized Demazure characters, and
//! Q-system / cluster exchange checks.

pub mod charring;
pub mod currentmod;
pub mod error;
pub mod fusion;
pub mod qcluster;
pub mod rational;
pub mod report;
pub mod rootdata;
pub mod sparse;

pub use error::{Error, Result};
