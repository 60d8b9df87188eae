//! Root data of a finite-type simple Lie algebra, the finite and extended
//! affine Weyl groups, and the parametrization of affine Demazure modules.
//!
//! Conventions used throughout the crate:
//!
//! * nodes of the finite Dynkin diagram are numbered `1..=rank`, the affine
//!   node is `0`;
//! * `cartan[i][j] = <alpha_i^vee, alpha_j>` (0-based storage);
//! * weights are stored in the fundamental-weight basis, coweights in the
//!   fundamental-coweight basis;
//! * roots are stored by their simple-root coefficients, coroots by their
//!   simple-coroot coefficients.

mod affine;
mod weyl;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use affine::{AffineWeight, ExtAffineWeylElement, LengthZero, ReducedWord};
pub use weyl::FiniteWeylElement;

/// Integral weight in the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

/// Integral coweight in the basis of fundamental coweights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

macro_rules! lattice_ops {
    ($t:ident) => {
        impl $t {
            pub fn zero(rank: usize) -> Self {
                $t(vec![0; rank])
            }

            /// The `i`-th fundamental element, `i` in `1..=rank`.
            pub fn fundamental(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i - 1] = 1;
                $t(v)
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            pub fn is_dominant(&self) -> bool {
                self.0.iter().all(|&c| c >= 0)
            }

            pub fn scale(&self, k: i64) -> Self {
                $t(self.0.iter().map(|c| c * k).collect())
            }
        }

        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $t(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $t(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(self.0.iter().map(|a| -a).collect())
            }
        }
    };
}
lattice_ops!(Weight);
lattice_ops!(Coweight);

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, &self.0, "w")
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, &self.0, "wv")
    }
}

fn write_combination(f: &mut fmt::Formatter<'_>, coords: &[i64], sym: &str) -> fmt::Result {
    let mut first = true;
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !first && c > 0 {
            write!(f, "+")?;
        }
        match c {
            1 => write!(f, "{sym}{}", i + 1)?,
            -1 => write!(f, "-{sym}{}", i + 1)?,
            _ => write!(f, "{c}{sym}{}", i + 1)?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Parses `"2w1+w2"`, `"-w1"`, `"0"` (or with the `wv` symbol for coweights)
/// into coordinates of the given rank.
fn parse_combination(s: &str, rank: usize, sym: &str) -> Result<Vec<i64>> {
    let err = |m: &str| Error::Parse(format!("`{s}`: {m}"));
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coords = vec![0i64; rank];
    if text == "0" {
        return Ok(coords);
    }
    if text.is_empty() {
        return Err(err("empty"));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let pos = body.find(sym).ok_or_else(|| err("missing basis symbol"))?;
        let (coef, rest) = body.split_at(pos);
        let idx_str = &rest[sym.len()..];
        // `w` must not swallow a coweight symbol
        if idx_str.starts_with('v') {
            return Err(err("coweight symbol in a weight"));
        }
        let coef: i64 = if coef.is_empty() {
            1
        } else {
            coef.parse().map_err(|_| err("bad coefficient"))?
        };
        let idx: usize = idx_str.parse().map_err(|_| err("bad index"))?;
        if idx == 0 || idx > rank {
            return Err(err("index out of range"));
        }
        coords[idx - 1] += sign * coef;
    }
    Ok(coords)
}

impl Weight {
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        parse_combination(s, rank, "w").map(Weight)
    }
}

impl Coweight {
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        parse_combination(s, rank, "wv").map(Coweight)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Dynkin datum such as `A2` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinType {
    pub kind: DynkinKind,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(kind: DynkinKind, rank: usize) -> Result<Self> {
        let ok = match kind {
            DynkinKind::A => rank >= 1,
            DynkinKind::B | DynkinKind::C => rank >= 2,
            DynkinKind::D => rank >= 4,
            DynkinKind::E => (6..=8).contains(&rank),
            DynkinKind::F => rank == 4,
            DynkinKind::G => rank == 2,
        };
        if ok {
            Ok(DynkinType { kind, rank })
        } else {
            Err(Error::InvalidDatum(format!("{kind:?}{rank}")))
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.kind, DynkinKind::A | DynkinKind::D | DynkinKind::E)
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => DynkinKind::A,
            Some('B') => DynkinKind::B,
            Some('C') => DynkinKind::C,
            Some('D') => DynkinKind::D,
            Some('E') => DynkinKind::E,
            Some('F') => DynkinKind::F,
            Some('G') => DynkinKind::G,
            _ => return Err(Error::InvalidDatum(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidDatum(s.to_string()))?;
        DynkinType::new(kind, rank)
    }
}

fn cartan_matrix(t: DynkinType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    match t.kind {
        DynkinKind::A | DynkinKind::B | DynkinKind::C | DynkinKind::F | DynkinKind::G => {
            for i in 1..n {
                link(i, i + 1);
            }
        }
        DynkinKind::D => {
            for i in 1..n - 1 {
                link(i, i + 1);
            }
            link(n - 2, n);
        }
        DynkinKind::E => {
            link(1, 3);
            link(3, 4);
            link(2, 4);
            for i in 4..n {
                link(i, i + 1);
            }
        }
    }
    match t.kind {
        // alpha_n short
        DynkinKind::B => c[n - 1][n - 2] = -2,
        // alpha_n long
        DynkinKind::C => c[n - 2][n - 1] = -2,
        // alpha_3, alpha_4 short
        DynkinKind::F => c[2][1] = -2,
        // alpha_1 short
        DynkinKind::G => c[0][1] = -3,
        _ => {}
    }
    c
}

/// A positive root with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    /// coefficients in the simple roots
    pub alpha: Vec<i64>,
    /// the root in the fundamental-weight basis
    pub weight: Weight,
    /// coefficients of the coroot in the simple coroots
    pub coroot: Vec<i64>,
}

/// Cartan datum together with everything derived from it.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub dynkin: DynkinType,
    pub cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
    /// squared lengths of simple roots, long roots have the largest value
    root_len2: Vec<i64>,
    /// `iota(w_i^vee) = embed_factor[i] * w_i`
    embed_factor: Vec<i64>,
    pub positive_roots: Vec<PositiveRoot>,
    /// index of the highest root in `positive_roots`
    theta_index: usize,
    pub rho: Weight,
}

impl RootSystem {
    pub fn new(t: DynkinType) -> Self {
        let n = t.rank;
        let cartan = cartan_matrix(t);
        let cartan_inv = invert(&cartan);

        // C_ij L_i = C_ji L_j
        let mut len: Vec<Option<Rational>> = vec![None; n];
        len[0] = Some(Rational::ONE);
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && len[j].is_none() {
                    let li = len[i].clone().unwrap();
                    len[j] = Some(&li * &Rational::new(cartan[i][j], cartan[j][i]));
                    stack.push(j);
                }
            }
        }
        let len: Vec<Rational> = len.into_iter().map(Option::unwrap).collect();
        let min = len.iter().min().unwrap().clone();
        let root_len2: Vec<i64> = len.iter().map(|l| (l / &min).to_i64().unwrap()).collect();
        let max = *root_len2.iter().max().unwrap();
        let embed_factor = root_len2.iter().map(|l| max / l).collect();

        let positive_roots = positive_roots(&cartan, &root_len2);
        let theta_index = (0..positive_roots.len())
            .max_by_key(|&k| positive_roots[k].alpha.iter().sum::<i64>())
            .unwrap();

        RootSystem {
            dynkin: t,
            cartan,
            cartan_inv,
            root_len2,
            embed_factor,
            positive_roots,
            theta_index,
            rho: Weight(vec![1; n]),
        }
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        self.dynkin.is_simply_laced()
    }

    /// Simple root `alpha_i` in the weight basis (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|k| self.cartan[k][i - 1]).collect())
    }

    /// Simple coroot `alpha_i^vee` in the coweight basis (row `i`).
    pub fn simple_coroot(&self, i: usize) -> Coweight {
        Coweight(self.cartan[i - 1].clone())
    }

    pub fn theta(&self) -> &PositiveRoot {
        &self.positive_roots[self.theta_index]
    }

    /// `theta^vee` as a coweight.
    pub fn theta_coweight(&self) -> Coweight {
        self.coroot_to_coweight(&self.theta().coroot)
    }

    /// Coefficients of `theta^vee` in the simple coroots; together with the
    /// value one for the affine node these are the levels of the fundamental
    /// affine weights.
    pub fn comarks(&self) -> &[i64] {
        &self.theta().coroot
    }

    /// Level of `rho_hat`, the dual Coxeter number.
    pub fn dual_coxeter(&self) -> i64 {
        1 + self.comarks().iter().sum::<i64>()
    }

    pub fn coroot_to_coweight(&self, c: &[i64]) -> Coweight {
        let n = self.rank();
        Coweight((0..n).map(|i| (0..n).map(|j| c[j] * self.cartan[j][i]).sum()).collect())
    }

    /// `<lambda, beta^vee>` for a coroot given by simple-coroot coefficients.
    pub fn pair_coroot(&self, lambda: &Weight, coroot: &[i64]) -> i64 {
        lambda.0.iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    /// `<lambda, theta^vee>`
    pub fn pair_theta(&self, lambda: &Weight) -> i64 {
        self.pair_coroot(lambda, &self.theta().coroot)
    }

    /// `<beta, mu>` for a root given by simple-root coefficients.
    pub fn pair_root(&self, alpha: &[i64], mu: &Coweight) -> i64 {
        alpha.iter().zip(&mu.0).map(|(a, b)| a * b).sum()
    }

    /// `<lambda, mu>` for a weight and a coweight; rational in general.
    pub fn pair(&self, lambda: &Weight, mu: &Coweight) -> Rational {
        let n = self.rank();
        let mut acc = Rational::ZERO;
        for i in 0..n {
            if lambda.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                if mu.0[j] == 0 {
                    continue;
                }
                let c = Rational::from_int(lambda.0[i] * mu.0[j]);
                acc = &acc + &(&c * &self.cartan_inv[j][i]);
            }
        }
        acc
    }

    /// Normalized invariant form on coweights (short coroots have norm 2).
    pub fn coweight_form(&self, a: &Coweight, b: &Coweight) -> Rational {
        self.pair(&self.coweight_embed(a), b)
    }

    /// Invariant form on weights, normalized so long roots have norm 2.
    pub fn weight_form(&self, a: &Weight, b: &Weight) -> Rational {
        let n = self.rank();
        let max = *self.root_len2.iter().max().unwrap();
        let mut acc = Rational::ZERO;
        for i in 0..n {
            for j in 0..n {
                if a.0[i] == 0 || b.0[j] == 0 {
                    continue;
                }
                // (w_i, w_j) = (C^-1)_ij L_i / 2, rescaled so that L_max = 2
                let c = Rational::new(a.0[i] * b.0[j] * self.root_len2[i], max);
                acc = &acc + &(&c * &self.cartan_inv[i][j]);
            }
        }
        acc
    }

    /// The embedding `iota: P^vee -> P` induced by the normalized form.
    pub fn coweight_embed(&self, mu: &Coweight) -> Weight {
        Weight(mu.0.iter().zip(&self.embed_factor).map(|(c, d)| c * d).collect())
    }

    /// Inverse of [`Self::coweight_embed`] where defined.
    pub fn weight_to_coweight(&self, lambda: &Weight) -> Option<Coweight> {
        let mut out = Vec::with_capacity(self.rank());
        for (c, d) in lambda.0.iter().zip(&self.embed_factor) {
            if c % d != 0 {
                return None;
            }
            out.push(c / d);
        }
        Some(Coweight(out))
    }

    /// Coefficients of a weight in the simple roots (rational in general).
    pub fn root_coordinates(&self, lambda: &Weight) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let mut acc = Rational::ZERO;
                for j in 0..n {
                    let c = Rational::from_int(lambda.0[j]);
                    acc = &acc + &(&self.cartan_inv[i][j] * &c);
                }
                acc
            })
            .collect()
    }

    /// `lambda <= mu` in the dominance order.
    pub fn dominance_leq(&self, lambda: &Weight, mu: &Weight) -> bool {
        self.root_coordinates(&(mu - lambda))
            .iter()
            .all(|c| c.is_integer() && c.signum() >= 0)
    }

    pub fn reflect_weight(&self, i: usize, lambda: &Weight) -> Weight {
        let k = lambda.0[i - 1];
        if k == 0 {
            return lambda.clone();
        }
        Weight(
            lambda.0.iter().enumerate().map(|(r, x)| x - k * self.cartan[r][i - 1]).collect(),
        )
    }

    pub fn reflect_coweight(&self, i: usize, mu: &Coweight) -> Coweight {
        let k = mu.0[i - 1];
        if k == 0 {
            return mu.clone();
        }
        Coweight(mu.0.iter().zip(&self.cartan[i - 1]).map(|(x, c)| x - k * c).collect())
    }

    /// Dominant representative of the Weyl orbit of `lambda`.
    pub fn dominant_conjugate(&self, lambda: &Weight) -> Weight {
        let mut x = lambda.clone();
        while let Some(i) = x.0.iter().position(|&c| c < 0) {
            x = self.reflect_weight(i + 1, &x);
        }
        x
    }

    /// `w_0 lambda`
    pub fn longest_weight(&self, lambda: &Weight) -> Weight {
        let mut x = lambda.clone();
        while let Some(i) = x.0.iter().position(|&c| c > 0) {
            x = self.reflect_weight(i + 1, &x);
        }
        // x is the antidominant element of the orbit
        x
    }

    /// `w_0 mu` for a coweight.
    pub fn longest_coweight(&self, mu: &Coweight) -> Coweight {
        let mut x = mu.clone();
        while let Some(i) = x.0.iter().position(|&c| c > 0) {
            x = self.reflect_coweight(i + 1, &x);
        }
        x
    }

    /// Nodes adjacent to `i` in the Dynkin diagram.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (1..=self.rank()).filter(|&j| j != i && self.cartan[i - 1][j - 1] < 0).collect()
    }

    /// Weyl dimension formula `prod <lambda + rho, a^vee> / <rho, a^vee>`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Rational {
        let shifted = lambda + &self.rho;
        let mut acc = Rational::ONE;
        for r in &self.positive_roots {
            let num = self.pair_coroot(&shifted, &r.coroot);
            let den = self.pair_coroot(&self.rho, &r.coroot);
            acc = &acc * &Rational::new(num, den);
        }
        acc
    }

    /// `<2 rho, mu>` for a coweight, the dimension of the spherical Schubert
    /// variety and the length of the translation by an antidominant `mu`.
    pub fn two_rho_pairing(&self, mu: &Coweight) -> i64 {
        self.positive_roots.iter().map(|r| self.pair_root(&r.alpha, mu)).sum()
    }
}

fn invert(c: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = c.len();
    let mut a: Vec<Vec<Rational>> = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_int(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn positive_roots(cartan: &[Vec<i64>], root_len2: &[i64]) -> Vec<PositiveRoot> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if image.iter().all(|&c| c >= 0) && image.iter().any(|&c| c > 0) && seen.insert(image.clone()) {
                roots.push(image);
            }
        }
        k += 1;
    }
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    roots
        .into_iter()
        .map(|alpha| {
            let weight = Weight((0..n).map(|i| (0..n).map(|j| cartan[i][j] * alpha[j]).sum()).collect());
            // 2 (beta, beta) with (alpha_i, alpha_j) = C_ij L_i / 2
            let norm2: i64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| alpha[i] * alpha[j] * cartan[i][j] * root_len2[i])
                .sum();
            let coroot = (0..n)
                .map(|j| {
                    let num = 2 * alpha[j] * root_len2[j];
                    debug_assert_eq!(num % norm2, 0);
                    num / norm2
                })
                .collect();
            PositiveRoot { alpha, weight, coroot }
        })
        .collect()
}

#[cfg(test)]
mod tests;
