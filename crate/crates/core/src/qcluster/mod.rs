//! Q-system identities between graded characters of Kirillov–Reshetikhin
//! type Demazure modules, and the cluster seed whose exchange relations
//! reproduce them.

mod laurent;
mod seed;

use std::sync::Arc;

use serde::Serialize;

use crate::charring::{affine_demazure_character, fusion_character, DeltaCap, GradedCharacter};
use crate::error::{Error, Result};
use crate::fusion::{default_points, demazure_module_explicit, fusion_product};
use crate::rootdata::{Coweight, DynkinKind, RootSystem, Weight};

pub use laurent::{LaurentPoly, Monomial};
pub use seed::{
    qsystem_exchange_match, qsystem_seed, qsystem_twist, ClusterSeed, ExchangeMatch, ExchangeRelation, Gaussian,
};

/// Class of `D(level, level iota(w_i^vee))`; negative levels are formal.
#[derive(Clone, Debug, Serialize)]
pub struct KClass {
    pub node: usize,
    pub level: i64,
    pub character: Option<GradedCharacter>,
}

impl KClass {
    pub fn new(rs: &RootSystem, node: usize, level: i64, cap: DeltaCap) -> Result<Self> {
        let character = if level < 0 {
            None
        } else {
            let mu = rs.coweight_embed(&Coweight::fundamental(rs.rank(), node)).scale(level);
            Some(affine_demazure_character(rs, level, &mu, cap)?)
        };
        Ok(KClass { node, level, character })
    }

    pub fn is_formal(&self) -> bool {
        self.character.is_none()
    }
}

/// Which exact sequence the characters realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// `ch(D_l * D_l) = ch(D_{l+1} * D_{l-1}) + q^s ch(neighbors)`
    #[serde(rename = "B=A+q^sC")]
    SquareIsSum,
    /// `ch(D_{l+1} * D_{l-1}) = ch(D_l * D_l) + q^s ch(neighbors)`
    #[serde(rename = "A=B+q^sC")]
    ProductIsSum,
}

/// How the three characters of a Q-system instance were computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Engine {
    /// explicit fusion of evaluation modules (type A)
    #[serde(rename = "explicit")]
    Explicit,
    /// Demazure operators on the generalized Demazure module
    #[serde(rename = "character")]
    Character,
}

#[derive(Clone, Debug, Serialize)]
pub struct QSystemCheck {
    pub node: usize,
    pub level: i64,
    pub engine: Engine,
    /// `ch(D(l+1) * D(l-1))`
    pub a: GradedCharacter,
    /// `ch(D(l) * D(l))`
    pub b: GradedCharacter,
    /// fusion over the neighbors of the node
    pub c: GradedCharacter,
    pub orientation: Option<Orientation>,
    pub shift: Option<i64>,
    /// `B - A`, reported when no orientation works
    pub residual: GradedCharacter,
}

impl QSystemCheck {
    pub fn passed(&self) -> bool {
        self.orientation.is_some()
    }
}

/// `sum_{j ~ i} (-C_ij) w_j^vee = 2 w_i^vee - alpha_i^vee`
pub fn neighbor_support_identity(rs: &RootSystem, i: usize) -> bool {
    let n = rs.rank();
    let lhs = rs
        .neighbors(i)
        .into_iter()
        .fold(Coweight::zero(n), |acc, j| &acc + &Coweight::fundamental(n, j).scale(-rs.cartan[i - 1][j - 1]));
    let rhs = &Coweight::fundamental(n, i).scale(2) - &rs.simple_coroot(i);
    lhs == rhs
}

fn kr_weight(rs: &RootSystem, i: usize, level: i64) -> Weight {
    rs.coweight_embed(&Coweight::fundamental(rs.rank(), i)).scale(level)
}

/// Normalized character of `D(l_1, l_1 w_{i_1}) * ... ` over `(node, level)`
/// pairs with equal or decreasing levels.
fn kr_fusion(rs: &Arc<RootSystem>, parts: &[(usize, i64)], engine: Engine, cap: DeltaCap) -> Result<GradedCharacter> {
    let n = rs.rank();
    let parts: Vec<(usize, i64)> = parts.iter().copied().filter(|(_, l)| *l > 0).collect();
    if parts.is_empty() {
        return Ok(GradedCharacter::unit(n, 0));
    }
    let ch = match engine {
        Engine::Explicit => {
            let ms = parts
                .iter()
                .map(|&(i, l)| demazure_module_explicit(rs, l, &Coweight::fundamental(n, i)))
                .collect::<Result<Vec<_>>>()?;
            let mut c = fusion_product(&ms, &default_points(ms.len()))?.character;
            c.level = parts[0].1;
            c
        }
        Engine::Character => {
            let (last, head) = parts.split_last().unwrap();
            let levels: Vec<i64> = head.iter().map(|p| p.1).collect();
            let lambdas: Vec<Coweight> = head.iter().map(|p| Coweight::fundamental(n, p.0)).collect();
            fusion_character(rs, &levels, &lambdas, last.1, &kr_weight(rs, last.0, last.1), cap)?
        }
    };
    Ok(ch.normalized().0)
}

fn as_shift(diff: &GradedCharacter, c: &GradedCharacter) -> Option<i64> {
    let s = diff.min_q()? - c.min_q()?;
    diff.same_terms(&c.shift(s)).then_some(s)
}

/// Checks `ch(D_l * D_l)` against `ch(D_{l+1} * D_{l-1})` plus a shifted
/// fusion over the neighbors of `i`, in either orientation.
pub fn qsystem_check(rs: &Arc<RootSystem>, i: usize, level: i64, engine: Option<Engine>, cap: DeltaCap) -> Result<QSystemCheck> {
    if !rs.is_simply_laced() {
        return Err(Error::Unsupported(format!("Q-system checks need a simply-laced type, not {}", rs.dynkin)));
    }
    if i == 0 || i > rs.rank() || level < 1 {
        return Err(Error::Domain(format!("node {i} and level {level} out of range")));
    }
    let engine = engine.unwrap_or(if rs.dynkin.kind == DynkinKind::A { Engine::Explicit } else { Engine::Character });
    let a = kr_fusion(rs, &[(i, level + 1), (i, level - 1)], engine, cap)?;
    let b = kr_fusion(rs, &[(i, level), (i, level)], engine, cap)?;
    let neighbors: Vec<(usize, i64)> = rs.neighbors(i).into_iter().map(|j| (j, level)).collect();
    let c = kr_fusion(rs, &neighbors, engine, cap)?;
    let residual = b.sub(&a);
    let (orientation, shift) = if let Some(s) = as_shift(&residual, &c) {
        (Some(Orientation::SquareIsSum), Some(s))
    } else if let Some(s) = as_shift(&a.sub(&b), &c) {
        (Some(Orientation::ProductIsSum), Some(s))
    } else {
        (None, None)
    };
    Ok(QSystemCheck { node: i, level, engine, a, b, c, orientation, shift, residual })
}
