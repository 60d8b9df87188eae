use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Coweight, FiniteWeylElement, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Affine weight `level * Lambda_0 + finite - delta * delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub level: i64,
    pub finite: Weight,
    /// coefficient of `-delta`
    pub delta: Rational,
}

impl AffineWeight {
    pub fn new(level: i64, finite: Weight) -> Self {
        AffineWeight { level, finite, delta: Rational::ZERO }
    }

    /// `level * Lambda_0`
    pub fn vacuum(rank: usize, level: i64) -> Self {
        Self::new(level, Weight::zero(rank))
    }

    /// Labels `<Lambda, alpha_i^vee>` for `i = 0..=rank`.
    pub fn labels(&self, rs: &RootSystem) -> Vec<i64> {
        affine_labels(rs, self.level, &self.finite)
    }

    pub fn is_dominant(&self, rs: &RootSystem) -> bool {
        self.finite.is_dominant() && rs.pair_theta(&self.finite) <= self.level
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}L0", self.level)?;
        if !self.finite.is_zero() {
            write!(f, "+({})", self.finite)?;
        }
        if !self.delta.is_zero() {
            write!(f, "-({})d", self.delta)?;
        }
        Ok(())
    }
}

pub(crate) fn affine_labels(rs: &RootSystem, level: i64, x: &Weight) -> Vec<i64> {
    let mut out = Vec::with_capacity(rs.rank() + 1);
    out.push(level - rs.pair_theta(x));
    out.extend_from_slice(&x.0);
    out
}

/// Simple affine reflection on the finite part of a level-`level` weight.
pub(crate) fn reflect_level(rs: &RootSystem, i: usize, level: i64, x: &Weight) -> Weight {
    if i == 0 {
        let m = level - rs.pair_theta(x);
        x + &rs.theta().weight.scale(m)
    } else {
        rs.reflect_weight(i, x)
    }
}

/// Element `tau_translation * finite` of the extended affine Weyl group
/// `W x| P^vee`. On the finite part of a level-`l` weight it acts by
/// `x -> finite(x) + l * iota(translation)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtAffineWeylElement {
    pub translation: Coweight,
    pub finite: FiniteWeylElement,
}

/// Length-zero element together with its permutation of affine nodes:
/// `node_perm[j] = k` when the element maps `Lambda_j` to `Lambda_k` modulo
/// `delta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthZero {
    pub element: ExtAffineWeylElement,
    pub node_perm: Vec<usize>,
}

/// `w = s_{word[0]} ... s_{word[p-1]} * omega`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub word: Vec<usize>,
    pub omega: LengthZero,
}

impl ExtAffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        ExtAffineWeylElement {
            translation: Coweight::zero(rank),
            finite: FiniteWeylElement::identity(),
        }
    }

    pub fn translation(mu: Coweight) -> Self {
        ExtAffineWeylElement { translation: mu, finite: FiniteWeylElement::identity() }
    }

    pub fn from_finite(rank: usize, v: FiniteWeylElement) -> Self {
        ExtAffineWeylElement { translation: Coweight::zero(rank), finite: v }
    }

    /// Simple reflection `s_i`; `s_0 = tau_{theta^vee} s_theta`.
    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        if i == 0 {
            let theta = rs.theta();
            let s_theta = FiniteWeylElement::reflection(rs, &theta.coroot, &theta.weight);
            ExtAffineWeylElement { translation: rs.theta_coweight(), finite: s_theta }
        } else {
            Self::from_finite(rs.rank(), FiniteWeylElement::simple(rs, i))
        }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(rs.rank()), |acc, &i| acc.compose(rs, &Self::simple(rs, i)))
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.finite.is_identity()
    }

    /// `(tau_mu v)(tau_nu u) = tau_{mu + v nu} (v u)`
    pub fn compose(&self, rs: &RootSystem, other: &Self) -> Self {
        ExtAffineWeylElement {
            translation: &self.translation + &self.finite.act_coweight(rs, &other.translation),
            finite: self.finite.compose(rs, &other.finite),
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let vinv = self.finite.inverse(rs);
        ExtAffineWeylElement { translation: -&vinv.act_coweight(rs, &self.translation), finite: vinv }
    }

    /// Action on the finite part of a weight of the given level.
    pub fn act_level(&self, rs: &RootSystem, level: i64, x: &Weight) -> Weight {
        let vx = self.finite.act_weight(rs, x);
        if level == 0 {
            return vx;
        }
        &vx + &rs.coweight_embed(&self.translation).scale(level)
    }

    /// Full action on affine weights, including the `delta` component.
    pub fn act(&self, rs: &RootSystem, w: &AffineWeight) -> AffineWeight {
        let vx = self.finite.act_weight(rs, &w.finite);
        let mu = &self.translation;
        if mu.is_zero() {
            return AffineWeight { level: w.level, finite: vx, delta: w.delta.clone() };
        }
        let shift = &rs.pair(&vx, mu)
            + &(&Rational::new(w.level, 2) * &rs.coweight_form(mu, mu));
        AffineWeight {
            level: w.level,
            finite: &vx + &rs.coweight_embed(mu).scale(w.level),
            delta: &w.delta + &shift,
        }
    }

    /// Length by the alcove count
    /// `sum_{a > 0} |<mu, a> - [v^{-1} a < 0]|` for `w = tau_mu v`.
    pub fn length(&self, rs: &RootSystem) -> usize {
        let vinv = self.finite.inverse(rs);
        rs.positive_roots
            .iter()
            .map(|r| {
                let image = vinv.act_root(rs, &r.alpha);
                let negative = image.iter().any(|&c| c < 0);
                (rs.pair_root(&r.alpha, &self.translation) - i64::from(negative)).unsigned_abs()
                    as usize
            })
            .sum()
    }

    /// Peels left descents (smallest node first) until a length-zero element
    /// remains. Descents are read off from the image of `rho_hat`.
    pub fn reduced_word(&self, rs: &RootSystem) -> ReducedWord {
        let level = rs.dual_coxeter();
        let mut x = self.act_level(rs, level, &rs.rho);
        let mut rest = self.clone();
        let mut word = Vec::new();
        loop {
            let labels = affine_labels(rs, level, &x);
            let Some(i) = labels.iter().position(|&m| m < 0) else { break };
            x = reflect_level(rs, i, level, &x);
            rest = Self::simple(rs, i).compose(rs, &rest);
            word.push(i);
        }
        let node_perm = rest.node_permutation(rs);
        ReducedWord { word, omega: LengthZero { element: rest, node_perm } }
    }

    /// Permutation of affine nodes induced by a length-zero element.
    fn node_permutation(&self, rs: &RootSystem) -> Vec<usize> {
        let n = rs.rank();
        let comarks = rs.comarks();
        (0..=n)
            .map(|j| {
                let (level, fin) = if j == 0 {
                    (1, Weight::zero(n))
                } else {
                    (comarks[j - 1], Weight::fundamental(n, j))
                };
                let image = affine_labels(rs, level, &self.act_level(rs, level, &fin));
                image.iter().position(|&m| m == 1).filter(|_| image.iter().sum::<i64>() == 1)
                    .expect("length-zero elements permute fundamental affine weights")
            })
            .collect()
    }

    /// Whether `w` has the form `tau_{w_0 nu} v` with `nu` dominant, which is
    /// the shape of elements whose Demazure modules are `g[t]`-stable.
    pub fn has_current_stable_form(&self, rs: &RootSystem) -> bool {
        rs.longest_coweight_image(&self.translation).is_dominant()
    }
}

impl RootSystem {
    /// `w_0` applied to an arbitrary coweight.
    pub fn longest_coweight_image(&self, mu: &Coweight) -> Coweight {
        FiniteWeylElement::longest(self).act_coweight(self, mu)
    }

    /// All length-zero elements of the extended affine Weyl group.
    pub fn length_zero_elements(&self) -> Vec<LengthZero> {
        let n = self.rank();
        let marks = &self.theta().alpha;
        let mut out = vec![ExtAffineWeylElement::identity(n).reduced_word(self).omega];
        for j in 1..=n {
            if marks[j - 1] == 1 {
                let tau = ExtAffineWeylElement::translation(Coweight::fundamental(n, j));
                let omega = tau.reduced_word(self).omega;
                if !out.contains(&omega) {
                    out.push(omega);
                }
            }
        }
        out
    }

    /// Parametrization of the `g[t]`-stable Demazure module `D(level, mu)`:
    /// returns `(w, Lambda)` with `Lambda` dominant of the given level and
    /// `w Lambda = level Lambda_0 + w_0 mu` modulo `delta`.
    ///
    /// The finite part `w_0 mu` is walked into the fundamental alcove by simple
    /// affine reflections, which yields a minimal-length `w`. Among the
    /// length-zero twists of the result the one with the largest
    /// `Lambda_0`-label is chosen, so `D(l, l iota(lambda))` comes out as
    /// `(tau_{w_0 lambda}, l Lambda_0)`.
    pub fn demazure_params(&self, level: i64, mu: &Weight) -> Result<(ExtAffineWeylElement, AffineWeight)> {
        let n = self.rank();
        if level < 0 || !mu.is_dominant() {
            return Err(Error::Domain(format!("D({level}, {mu}) needs level >= 0 and dominant weight")));
        }
        if level == 0 {
            if !mu.is_zero() {
                return Err(Error::Domain(format!("D(0, {mu}) requires the zero weight")));
            }
            return Ok((ExtAffineWeylElement::identity(n), AffineWeight::vacuum(n, 0)));
        }
        let target = self.longest_weight(mu);
        let mut x = target.clone();
        let mut word = Vec::new();
        loop {
            let labels = affine_labels(self, level, &x);
            let Some(i) = labels.iter().position(|&m| m < 0) else { break };
            x = reflect_level(self, i, level, &x);
            word.push(i);
        }
        let u = ExtAffineWeylElement::from_word(self, &word);

        let mut best: Option<(ExtAffineWeylElement, AffineWeight)> = None;
        for omega in self.length_zero_elements() {
            let pi_inv = omega.element.inverse(self);
            let lam = pi_inv.act_level(self, level, &x);
            let w = u.compose(self, &omega.element);
            let better = match &best {
                None => true,
                Some((_, b)) => {
                    let key = |l: &Weight| (level - self.pair_theta(l), std::cmp::Reverse(l.clone()));
                    key(&lam) > key(&b.finite)
                }
            };
            if better {
                best = Some((w, AffineWeight::new(level, lam)));
            }
        }
        let (w, lam) = best.expect("identity is always a length-zero element");
        if w.act_level(self, level, &lam.finite) != target || !lam.is_dominant(self) {
            return Err(Error::Internal(format!("parametrization of D({level}, {mu}) failed")));
        }
        if !w.has_current_stable_form(self) {
            return Err(Error::Internal(format!("D({level}, {mu}): element is not of the form tau_(w0 nu) v")));
        }
        Ok((w, lam))
    }
}

#[cfg(test)]
mod tests;
