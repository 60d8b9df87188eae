//! Cluster seeds, mutation and the Q-system seed.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::laurent::LaurentPoly;
use super::{qsystem_check, KClass, Orientation};
use crate::charring::DeltaCap;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootdata::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSeed {
    nodes: Vec<String>,
    b: Vec<Vec<i64>>,
    vars: Vec<LaurentPoly>,
}

/// `x'_node * x_node = prod positive + prod negative`, exponents per position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeRelation {
    pub node: usize,
    pub positive: Vec<(usize, i64)>,
    pub negative: Vec<(usize, i64)>,
}

impl ClusterSeed {
    pub fn new(nodes: Vec<String>, b: Vec<Vec<i64>>, vars: Vec<LaurentPoly>) -> Result<Self> {
        let n = nodes.len();
        if b.len() != n || b.iter().any(|r| r.len() != n) || vars.len() != n {
            return Err(Error::InvalidDatum("exchange matrix and variables must match the node count".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if b[i][j] != -b[j][i] {
                    return Err(Error::InvalidDatum(format!("exchange matrix not skew-symmetric at ({i},{j})")));
                }
            }
        }
        Ok(ClusterSeed { nodes, b, vars })
    }

    /// Seed with independent initial variables `x0, x1, ...`.
    pub fn initial(nodes: Vec<String>, b: Vec<Vec<i64>>) -> Result<Self> {
        let n = nodes.len();
        Self::new(nodes, b, (0..n).map(|i| LaurentPoly::var(n, i)).collect())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn exchange_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn variable(&self, k: usize) -> &LaurentPoly {
        &self.vars[k]
    }

    pub fn mutate(&self, k: usize) -> Result<(ClusterSeed, ExchangeRelation)> {
        let n = self.len();
        if k >= n {
            return Err(Error::Domain(format!("no node {k} in a seed with {n} nodes")));
        }
        let b = &self.b;
        let mut nb = b.clone();
        for i in 0..n {
            for j in 0..n {
                nb[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                };
            }
        }
        let positive: Vec<(usize, i64)> = (0..n).filter(|&j| b[j][k] > 0).map(|j| (j, b[j][k])).collect();
        let negative: Vec<(usize, i64)> = (0..n).filter(|&j| b[j][k] < 0).map(|j| (j, -b[j][k])).collect();
        let nvars = self.vars[k].nvars();
        let prod = |fs: &[(usize, i64)]| {
            fs.iter()
                .fold(LaurentPoly::constant(nvars, 1), |acc, &(j, e)| &acc * &self.vars[j].pow(e as u32))
        };
        let numer = &prod(&positive) + &prod(&negative);
        let mut vars = self.vars.clone();
        vars[k] = numer.div_exact(&self.vars[k])?;
        Ok((ClusterSeed { nodes: self.nodes.clone(), b: nb, vars }, ExchangeRelation { node: k, positive, negative }))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vars: BTreeMap<&str, String> =
            self.nodes.iter().zip(&self.vars).map(|(n, v)| (n.as_str(), v.to_string())).collect();
        serde_json::json!({ "nodes": self.nodes, "B": self.b, "vars": vars })
    }
}

/// Seed on `I x {0, 1}`: position `i - 1` carries node `i` at level 0 and
/// position `n + i - 1` node `i` at level 1. Arrows between the columns are
/// given by the Cartan matrix, none inside a column.
pub fn qsystem_seed(rs: &RootSystem) -> Result<ClusterSeed> {
    if !rs.is_simply_laced() {
        return Err(Error::Unsupported(format!("Q-system seed needs a simply-laced type, not {}", rs.dynkin)));
    }
    let n = rs.rank();
    let mut b = vec![vec![0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            b[n + j][i] = rs.cartan[j][i];
            b[i][n + j] = -rs.cartan[i][j];
        }
    }
    let nodes = (0..2).flat_map(|c| (1..=n).map(move |i| format!("x[{i},{c}]"))).collect();
    ClusterSeed::initial(nodes, b)
}

/// Exponents `k_j` in Z/4 with `sum_{j~i} k_j = 2 k_i + 2` for every node,
/// so that `x_{j,l} = i^{k_j} Q_{j,l}` turns the positive exchange relations
/// into the Q-system with a minus sign.
pub fn qsystem_twist(rs: &RootSystem) -> Option<Vec<u8>> {
    let n = rs.rank();
    let neighbors: Vec<Vec<usize>> = (1..=n).map(|i| rs.neighbors(i)).collect();
    let total = 4usize.checked_pow(n as u32)?;
    (0..total).find_map(|code| {
        let k: Vec<u8> = (0..n).map(|j| ((code >> (2 * j)) & 3) as u8).collect();
        let ok = (0..n).all(|i| {
            let s: u32 = neighbors[i].iter().map(|&j| k[j - 1] as u32).sum();
            (s + 4 * 4 - 2 * k[i] as u32 - 2) % 4 == 0
        });
        ok.then_some(k)
    })
}

/// Exact Gaussian rational `re + im * i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn from_int(n: i64) -> Self {
        Gaussian { re: n.into(), im: Rational::ZERO }
    }

    /// `i^k`
    pub fn unit_power(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Gaussian::from_int(1),
            1 => Gaussian { re: Rational::ZERO, im: Rational::ONE },
            2 => Gaussian::from_int(-1),
            _ => Gaussian { re: Rational::ZERO, im: -Rational::ONE },
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Gaussian { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Gaussian { re: &(&self.re * &o.re) - &(&self.im * &o.im), im: &(&self.re * &o.im) + &(&self.im * &o.re) }
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = Rational::from(c);
        Gaussian { re: &self.re * &c, im: &self.im * &c }
    }

    pub fn recip(&self) -> Self {
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        Gaussian { re: &self.re / &norm, im: -(&self.im / &norm) }
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Gaussian::from_int(1), |acc, _| acc.mul(&base))
    }

    /// The value as an integer when it is one.
    pub fn to_i64(&self) -> Option<i64> {
        if self.im.is_zero() {
            self.re.to_i64()
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExchangeMatch {
    pub node: usize,
    pub level: i64,
    pub twist: Vec<u8>,
    pub relation: ExchangeRelation,
    /// sign of the neighbor product once the twist is undone
    pub coefficient: Option<i64>,
    pub orientation: Option<Orientation>,
    pub shape_ok: bool,
    pub character_identity: bool,
    pub evaluation_ok: bool,
    pub matched: bool,
}

/// Position and level bookkeeping for the Q-system seed.
fn exchange_for(rs: &RootSystem, i: usize, level: i64) -> Result<(ClusterSeed, ExchangeRelation, Vec<i64>)> {
    let n = rs.rank();
    let mut seed = qsystem_seed(rs)?;
    let mut levels: Vec<i64> = (0..2 * n).map(|p| (p / n) as i64).collect();
    for round in 0..(level - 1) as usize {
        let col = round % 2;
        for p in col * n..(col + 1) * n {
            seed = seed.mutate(p)?.0;
            levels[p] += 2;
        }
    }
    let p = ((level - 1) as usize % 2) * n + i - 1;
    let old = levels.clone();
    let (seed, rel) = seed.mutate(p)?;
    Ok((seed, rel, old))
}

/// Compares the exchange relation that produces `x_{i, l+1}` with the
/// Q-system identity found by [`qsystem_check`]. With `twisted = false` all
/// variables are used without the sign normalization.
pub fn qsystem_exchange_match(rs: &Arc<RootSystem>, i: usize, level: i64, twisted: bool, cap: DeltaCap) -> Result<ExchangeMatch> {
    let n = rs.rank();
    if i == 0 || i > n || level < 1 {
        return Err(Error::Domain(format!("node {i} and level {level} out of range")));
    }
    let twist = if twisted {
        qsystem_twist(rs).ok_or_else(|| Error::Unsupported(format!("no sign normalization for {}", rs.dynkin)))?
    } else {
        vec![0; n]
    };
    let (seed, relation, levels) = exchange_for(rs, i, level)?;
    let node_of = |p: usize| p % n + 1;
    let neighbors = rs.neighbors(i);

    let p = relation.node;
    let other_col = (1 - p / n) * n;
    let mut expect_neg_other: Vec<(usize, i64)> = neighbors.iter().map(|&j| (other_col + j - 1, 1)).collect();
    expect_neg_other.sort();
    let square = vec![(other_col + i - 1, 2)];
    let shape_ok = node_of(p) == i
        && levels[p] == level - 1
        && relation.positive == square
        && levels[other_col + i - 1] == level
        && relation.negative == expect_neg_other
        && relation.negative.iter().all(|&(q, _)| levels[q] == level);

    let ksum: i64 = neighbors.iter().map(|&j| twist[j - 1] as i64).sum();
    let c = Gaussian::unit_power(ksum - 2 * twist[i - 1] as i64).to_i64();

    let check = qsystem_check(rs, i, level, None, cap)?;
    let orientation = check.orientation;
    let character_identity = match (orientation, c) {
        (Some(o), Some(c)) => {
            let (a, b, cc) = (check.a.specialize_q(), check.b.specialize_q(), check.c.specialize_q());
            // A = B + c C at q = 1
            let want = if o == Orientation::SquareIsSum { -1 } else { 1 };
            c == want
                && a.keys().chain(b.keys()).chain(cc.keys()).all(|w| {
                    let g = |m: &BTreeMap<_, i64>| m.get(w).copied().unwrap_or(0);
                    g(&a) == g(&b) + c * g(&cc)
                })
        }
        _ => false,
    };

    let dims = (1..=n)
        .map(|j| Ok(KClass::new(rs, j, 1, cap)?.character.map_or(1, |ch| ch.dim())))
        .collect::<Result<Vec<i64>>>()?;
    let zeta = |j: usize| Gaussian::unit_power(twist[j - 1] as i64);
    let value = seed.variable(p).evaluate(
        Gaussian::from_int(0),
        |q, e| {
            let base = if q < n { zeta(q + 1) } else { zeta(q + 1 - n).mul(&Gaussian::from_int(dims[q - n])) };
            base.pow(e)
        },
        |g, c| g.scale(c),
        |a, b| a.mul(b),
        |a, b| a.add(b),
        Gaussian::from_int(1),
    );
    let target = KClass::new(rs, i, level + 1, cap)?.character.map_or(1, |ch| ch.dim());
    let evaluation_ok = value == zeta(i).mul(&Gaussian::from_int(target));
    let matched = shape_ok && character_identity && evaluation_ok && check.passed();
    Ok(ExchangeMatch {
        node: i,
        level,
        twist,
        relation,
        coefficient: c,
        orientation,
        shape_ok,
        character_identity,
        evaluation_ok,
        matched,
    })
}
