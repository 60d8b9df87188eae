use std::collections::HashMap;

use super::GradedCharacter;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootdata::{AffineWeight, Coweight, ExtAffineWeylElement, RootSystem, Weight};

/// Cap on the spread of `delta`-degrees during a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaCap {
    /// Start at `2 * sum of lengths` and double on overflow.
    Auto,
    Fixed(i64),
}

const AUTO_LIMIT: i64 = 1 << 14;

/// Element of the affine character ring at a fixed level:
/// `sum m * e^{level Lambda_0 + wt - (offset + d) delta}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCharPoly {
    pub level: i64,
    pub offset: Rational,
    terms: HashMap<(Weight, i64), i64>,
}

impl AffineCharPoly {
    pub fn one(rank: usize) -> Self {
        Self::monomial(&AffineWeight::vacuum(rank, 0))
    }

    pub fn monomial(w: &AffineWeight) -> Self {
        AffineCharPoly {
            level: w.level,
            offset: w.delta.clone(),
            terms: HashMap::from([((w.finite.clone(), 0), 1)]),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(finite weight, absolute -delta coefficient, multiplicity)`
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, Rational, i64)> + '_ {
        self.terms
            .iter()
            .map(|((w, d), m)| (w, &self.offset + &Rational::from_int(*d), *m))
    }

    /// Spread between the largest and smallest `delta`-degree.
    pub fn span(&self) -> i64 {
        let ds = self.terms.keys().map(|(_, d)| *d);
        match (ds.clone().min(), ds.max()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    fn push(terms: &mut HashMap<(Weight, i64), i64>, key: (Weight, i64), m: i64) {
        let slot = terms.entry(key.clone()).or_insert(0);
        *slot += m;
        if *slot == 0 {
            terms.remove(&key);
        }
    }

    /// Multiplication by `e^w`.
    pub fn mul_monomial(&self, w: &AffineWeight) -> Self {
        AffineCharPoly {
            level: self.level + w.level,
            offset: &self.offset + &w.delta,
            terms: self.terms.iter().map(|((x, d), m)| ((x + &w.finite, *d), *m)).collect(),
        }
    }

    /// Demazure operator `D_i`, expanded as a geometric sum along `alpha_i`.
    pub fn apply_node(&self, rs: &RootSystem, i: usize, cap: i64) -> Result<Self> {
        // mu - k alpha_i corresponds to (wt - k step, d + k dstep)
        let (step, dstep) = if i == 0 {
            (-&rs.theta().weight, 1)
        } else {
            (rs.simple_root(i), 0)
        };
        let mut out = HashMap::new();
        for ((wt, d), m) in &self.terms {
            let n = if i == 0 { self.level - rs.pair_theta(wt) } else { wt.0[i - 1] };
            if n >= 0 {
                let mut x = wt.clone();
                for k in 0..=n {
                    Self::push(&mut out, (x.clone(), d + k * dstep), *m);
                    x = &x - &step;
                }
            } else if n <= -2 {
                let mut x = wt.clone();
                for k in 1..=(-n - 1) {
                    x = &x + &step;
                    Self::push(&mut out, (x.clone(), d - k * dstep), -m);
                }
            }
        }
        let res = AffineCharPoly { level: self.level, offset: self.offset.clone(), terms: out };
        let span = res.span();
        if span > cap {
            return Err(Error::Truncation { degree: span, cap });
        }
        Ok(res)
    }

    /// `D_{i_1} ... D_{i_p}`, rightmost operator first.
    pub fn apply_word(&self, rs: &RootSystem, word: &[usize], cap: i64) -> Result<Self> {
        let mut f = self.clone();
        for &i in word.iter().rev() {
            f = f.apply_node(rs, i, cap)?;
        }
        Ok(f)
    }

    /// Action of an element of the extended affine Weyl group on every term.
    pub fn act(&self, rs: &RootSystem, w: &ExtAffineWeylElement) -> Result<Self> {
        if w.is_identity() {
            return Ok(self.clone());
        }
        let mut base: Option<Rational> = None;
        let mut out = HashMap::new();
        for ((wt, d), m) in &self.terms {
            let img = w.act(rs, &AffineWeight::new(self.level, wt.clone()));
            let b = base.get_or_insert_with(|| img.delta.clone()).clone();
            let rel = &img.delta - &b;
            let shift = rel
                .to_i64()
                .filter(|_| rel.is_integer())
                .ok_or_else(|| Error::Internal(format!("non-integral delta shift {rel}")))?;
            Self::push(&mut out, (img.finite, d + shift), *m);
        }
        Ok(AffineCharPoly {
            level: self.level,
            offset: &self.offset + &base.unwrap_or(Rational::ZERO),
            terms: out,
        })
    }

    /// `D_w f = D_{i_1} ... D_{i_p} (pi f)` for `w = s_{i_1} ... s_{i_p} pi`.
    pub fn apply_element(&self, rs: &RootSystem, w: &ExtAffineWeylElement, cap: i64) -> Result<Self> {
        let rw = w.reduced_word(rs);
        self.act(rs, &rw.omega.element)?.apply_word(rs, &rw.word, cap)
    }

    /// Converts to a graded character with `q = d_max - d`, so the
    /// `extremal` weight, which spans the bottom of the `t`-grading, sits in
    /// degree zero.
    pub fn to_graded(&self, extremal: &Weight) -> Result<GradedCharacter> {
        let Some(dmax) = self.terms.keys().map(|(_, d)| *d).max() else {
            return Ok(GradedCharacter::new(self.level));
        };
        if !self.terms.contains_key(&(extremal.clone(), dmax)) {
            return Err(Error::Internal(format!("extremal weight {extremal} is not in the lowest degree")));
        }
        let mut c = GradedCharacter::new(self.level);
        for ((w, d), m) in &self.terms {
            c.add(dmax - d, w.clone(), *m);
        }
        Ok(c)
    }
}

fn with_cap<T>(cap: DeltaCap, auto_start: i64, mut run: impl FnMut(i64) -> Result<T>) -> Result<T> {
    match cap {
        DeltaCap::Fixed(c) => run(c),
        DeltaCap::Auto => {
            let mut c = auto_start.max(1);
            loop {
                match run(c) {
                    Err(Error::Truncation { .. }) if c < AUTO_LIMIT => c *= 2,
                    other => return other,
                }
            }
        }
    }
}

/// `D_{i_1} ... D_{i_p} e^Lambda` for an arbitrary word.
pub fn demazure_word_character(
    rs: &RootSystem,
    word: &[usize],
    lambda: &AffineWeight,
    cap: DeltaCap,
) -> Result<AffineCharPoly> {
    with_cap(cap, 2 * word.len() as i64, |c| AffineCharPoly::monomial(lambda).apply_word(rs, word, c))
}

/// Graded character of `D(level, mu)`.
pub fn affine_demazure_character(
    rs: &RootSystem,
    level: i64,
    mu: &Weight,
    cap: DeltaCap,
) -> Result<GradedCharacter> {
    let (w, lam) = rs.demazure_params(level, mu)?;
    generalized_demazure_character(rs, &[(w, lam)], cap)
}

/// Character of `D(W_1 Lambda_1, ..., W_k Lambda_k)` given the cumulative
/// elements `W_i`, by the nested formula
/// `D_{w_1}(e^{Lambda_1} D_{w_2}(e^{Lambda_2} ... D_{w_k}(e^{Lambda_k})))`
/// with increments `w_i = W_{i-1}^{-1} W_i`.
pub fn generalized_demazure_character(
    rs: &RootSystem,
    factors: &[(ExtAffineWeylElement, AffineWeight)],
    cap: DeltaCap,
) -> Result<GradedCharacter> {
    let n = rs.rank();
    let mut increments = Vec::with_capacity(factors.len());
    let mut prev = ExtAffineWeylElement::identity(n);
    let mut prev_len = 0;
    for (k, (w, lam)) in factors.iter().enumerate() {
        if !w.has_current_stable_form(rs) {
            return Err(Error::Domain(format!("factor {} is not of the form tau_(w0 nu) v", k + 1)));
        }
        if !lam.is_dominant(rs) {
            return Err(Error::Domain(format!("factor {} has a non-dominant weight {lam}", k + 1)));
        }
        let inc = prev.inverse(rs).compose(rs, w);
        let len = w.length(rs);
        if k > 0 && len != prev_len + inc.length(rs) {
            return Err(Error::LengthAdditivity(k, k + 1));
        }
        increments.push(inc);
        prev = w.clone();
        prev_len = len;
    }
    let extremal = factors
        .iter()
        .fold(Weight::zero(n), |acc, (w, lam)| &acc + &w.act_level(rs, lam.level, &lam.finite));
    let total_len: usize = increments.iter().map(|w| w.length(rs)).sum();

    let poly = with_cap(cap, 2 * total_len as i64, |c| {
        let mut f = AffineCharPoly::one(n);
        for ((_, lam), inc) in factors.iter().zip(&increments).rev() {
            f = f.mul_monomial(lam).apply_element(rs, inc, c)?;
        }
        Ok(f)
    })?;
    poly.to_graded(&extremal)
}

/// Factors `(W_i, Lambda_i)` of the generalized Demazure module isomorphic
/// to `D(l_1, l_1 iota(lam_1)) * ... * D(l_k, l_k iota(lam_k)) * D(l, mu)`:
/// `W_i = tau_{w_0(lam_1 + ... + lam_i)}` with `Lambda_i = (l_i - l_{i+1}) Lambda_0`,
/// and a last factor `tau_{w_0(lam_1 + ... + lam_k)} w` with `Lambda`, where
/// `(w, Lambda)` parametrizes `D(l, mu)`.
pub fn fusion_factors(
    rs: &RootSystem,
    levels: &[i64],
    lambdas: &[Coweight],
    level: i64,
    mu: &Weight,
) -> Result<Vec<(ExtAffineWeylElement, AffineWeight)>> {
    if levels.len() != lambdas.len() {
        return Err(Error::Domain("one level per coweight".into()));
    }
    let mut chain = levels.to_vec();
    chain.push(level);
    if level < 0 || chain.windows(2).any(|p| p[0] < p[1]) {
        return Err(Error::Domain("levels must form a chain l1 >= ... >= lk >= l >= 0".into()));
    }
    if lambdas.iter().any(|l| !l.is_dominant()) {
        return Err(Error::Domain("coweights must be dominant".into()));
    }
    let n = rs.rank();
    let mut acc = Coweight::zero(n);
    let mut out = Vec::with_capacity(lambdas.len() + 1);
    for (k, lam) in lambdas.iter().enumerate() {
        acc = &acc + lam;
        out.push((
            ExtAffineWeylElement::translation(rs.longest_coweight(&acc)),
            AffineWeight::vacuum(n, chain[k] - chain[k + 1]),
        ));
    }
    let (w, lam) = rs.demazure_params(level, mu)?;
    out.push((ExtAffineWeylElement::translation(rs.longest_coweight(&acc)).compose(rs, &w), lam));
    Ok(out)
}

/// Graded character of the fusion product described in [`fusion_factors`].
pub fn fusion_character(
    rs: &RootSystem,
    levels: &[i64],
    lambdas: &[Coweight],
    level: i64,
    mu: &Weight,
    cap: DeltaCap,
) -> Result<GradedCharacter> {
    generalized_demazure_character(rs, &fusion_factors(rs, levels, lambdas, level, mu)?, cap)
}
