use std::ops::Range;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{cyclic_tensor_character, default_points, demazure_module_explicit, fusion_product};
use crate::charring::GradedCharacter;
use crate::currentmod::CurrentModule;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootdata::{Coweight, RootSystem};

/// `k` pairwise distinct integers drawn from a window of `k + 2`
/// consecutive ones centred at zero. An affine change `t -> a t + b` of the
/// variable preserves the degree filtration, so only the affine class of
/// the tuple matters. Every rational tuple is equivalent to an integer one,
/// and small entries keep the arithmetic cheap.
pub fn random_points(k: usize, rng: &mut impl Rng) -> Vec<Rational> {
    let shift = (k as i64 + 1) / 2;
    rand::seq::index::sample(rng, k + 2, k).into_iter().map(|i| Rational::from(i as i64 - shift)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub points: Vec<Vec<Rational>>,
    /// distinct normalized characters observed
    pub characters: Vec<GradedCharacter>,
}

impl IndependenceReport {
    pub fn is_singleton(&self) -> bool {
        self.characters.len() == 1
    }
}

/// Fusion at `trials` seeded random point tuples.
pub fn check_parameter_independence(ms: &[Arc<CurrentModule>], trials: usize, seed: u64) -> Result<IndependenceReport> {
    if trials < 2 {
        return Err(Error::Domain("parameter independence needs at least two trials".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut characters: Vec<GradedCharacter> = Vec::new();
    for _ in 0..trials {
        let cs = random_points(ms.len(), &mut rng);
        let (ch, _) = fusion_product(ms, &cs)?.character.normalized();
        if !characters.iter().any(|c| c.same_terms(&ch)) {
            characters.push(ch);
        }
        points.push(cs);
    }
    Ok(IndependenceReport { points, characters })
}

#[derive(Clone, Debug, Serialize)]
pub struct AssociativityReport {
    pub flat: GradedCharacter,
    pub nested: GradedCharacter,
    pub equal: bool,
}

/// Compares the flat fusion with the one in which `group` is fused first
/// and its associated graded module used as a single factor.
pub fn check_associativity(
    ms: &[Arc<CurrentModule>],
    group: Range<usize>,
    cs_outer: &[Rational],
    cs_inner: &[Rational],
) -> Result<AssociativityReport> {
    if group.is_empty() || group.end > ms.len() {
        return Err(Error::Domain("grouping must be a nonempty contiguous range".into()));
    }
    let (flat, _) = fusion_product(ms, &default_points(ms.len()))?.character.normalized();
    let inner = Arc::new(fusion_product(&ms[group.clone()], cs_inner)?.graded_module()?);
    let mut outer: Vec<Arc<CurrentModule>> = ms[..group.start].to_vec();
    outer.push(inner);
    outer.extend_from_slice(&ms[group.end..]);
    let (nested, _) = fusion_product(&outer, cs_outer)?.character.normalized();
    let equal = flat.same_terms(&nested);
    Ok(AssociativityReport { flat, nested, equal })
}

/// Graded character of the cyclic submodule generated by the tensor of
/// cyclic vectors in
/// `D(l1 - l2, (l1 - l2) lam1) ⊗ D(l2 - l3, (l2 - l3)(lam1 + lam2)) ⊗ ...
///  ⊗ D(l, l (lam1 + ... + lamk + nu))`,
/// the explicit side of the generalized Demazure module with last weight
/// `mu = l iota(nu)`. Type A only.
pub fn generalized_demazure_oracle(
    rs: &Arc<RootSystem>,
    levels: &[i64],
    lambdas: &[Coweight],
    level: i64,
    nu: &Coweight,
) -> Result<GradedCharacter> {
    if levels.len() != lambdas.len() {
        return Err(Error::Domain("one level per coweight".into()));
    }
    let mut chain = levels.to_vec();
    chain.push(level);
    if chain.windows(2).any(|p| p[0] < p[1]) || level < 0 {
        return Err(Error::Domain("levels must form a chain l1 >= ... >= lk >= l >= 0".into()));
    }
    let n = rs.rank();
    let mut acc = Coweight::zero(n);
    let mut factors = Vec::new();
    for (k, lam) in lambdas.iter().enumerate() {
        acc = &acc + lam;
        let d = chain[k] - chain[k + 1];
        if d > 0 {
            factors.push(demazure_module_explicit(rs, d, &acc)?);
        }
    }
    if level > 0 {
        factors.push(demazure_module_explicit(rs, level, &(&acc + nu))?);
    }
    let mut ch = if factors.is_empty() {
        GradedCharacter::unit(n, 0)
    } else {
        cyclic_tensor_character(&factors)?
    };
    ch.level = chain[0];
    Ok(ch)
}
