//! Graded characters, Weyl characters by Freudenthal's recursion and the
//! Demazure-operator engine for affine and generalized Demazure characters.

mod demazure;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootdata::{RootSystem, Weight};

pub use demazure::{
    affine_demazure_character, demazure_word_character, fusion_character, fusion_factors,
    generalized_demazure_character,
    AffineCharPoly, DeltaCap,
};

/// Character of a finite-dimensional `g`-module.
pub type FiniteCharacter = BTreeMap<Weight, i64>;

/// Character graded by `q`, the `t`-degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedCharacter {
    pub level: i64,
    terms: BTreeMap<(i64, Weight), i64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    wt: Vec<i64>,
    q: i64,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    level: i64,
    terms: Vec<TermJson>,
}

impl Serialize for GradedCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterJson {
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|((q, wt), m)| TermJson { wt: wt.0.clone(), q: *q, mult: *m })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CharacterJson::deserialize(d)?;
        let mut c = GradedCharacter::new(raw.level);
        for t in raw.terms {
            c.add(t.q, Weight(t.wt), t.mult);
        }
        Ok(c)
    }
}

impl GradedCharacter {
    pub fn new(level: i64) -> Self {
        GradedCharacter { level, terms: BTreeMap::new() }
    }

    /// The one-dimensional trivial character.
    pub fn unit(rank: usize, level: i64) -> Self {
        let mut c = Self::new(level);
        c.add(0, Weight::zero(rank), 1);
        c
    }

    pub fn from_finite(level: i64, q: i64, ch: &FiniteCharacter) -> Self {
        let mut c = Self::new(level);
        for (wt, m) in ch {
            c.add(q, wt.clone(), *m);
        }
        c
    }

    pub fn add(&mut self, q: i64, wt: Weight, mult: i64) {
        if mult == 0 {
            return;
        }
        let key = (q, wt);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Weight, i64)> {
        self.terms.iter().map(|((q, w), m)| (*q, w, *m))
    }

    pub fn mult(&self, q: i64, wt: &Weight) -> i64 {
        self.terms.get(&(q, wt.clone())).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn min_q(&self) -> Option<i64> {
        self.terms.keys().next().map(|(q, _)| *q)
    }

    pub fn max_q(&self) -> Option<i64> {
        self.terms.keys().next_back().map(|(q, _)| *q)
    }

    /// Finite character of the degree-`q` layer.
    pub fn layer(&self, q: i64) -> FiniteCharacter {
        self.terms
            .range((q, Weight(vec![]))..)
            .take_while(|((k, _), _)| *k == q)
            .map(|((_, w), m)| (w.clone(), *m))
            .collect()
    }

    /// Dimensions of the layers `0..=max_q`.
    pub fn layer_dims(&self) -> Vec<i64> {
        let Some(top) = self.max_q() else { return Vec::new() };
        let mut dims = vec![0; (top.max(0) + 1) as usize];
        for ((q, _), m) in &self.terms {
            if *q >= 0 {
                dims[*q as usize] += m;
            }
        }
        dims
    }

    /// Sum over `q`, i.e. the value at `q = 1`.
    pub fn specialize_q(&self) -> FiniteCharacter {
        let mut out = FiniteCharacter::new();
        for ((_, w), m) in &self.terms {
            *out.entry(w.clone()).or_insert(0) += m;
        }
        out.retain(|_, m| *m != 0);
        out
    }

    pub fn shift(&self, k: i64) -> Self {
        GradedCharacter {
            level: self.level,
            terms: self.terms.iter().map(|((q, w), m)| ((q + k, w.clone()), *m)).collect(),
        }
    }

    /// Shifts so that the lowest degree is zero; returns the applied shift.
    pub fn normalized(&self) -> (Self, i64) {
        let k = -self.min_q().unwrap_or(0);
        (self.shift(k), k)
    }

    /// Equality of the terms, ignoring the level tag.
    pub fn same_terms(&self, other: &Self) -> bool {
        self.terms == other.terms
    }

    /// Product of characters; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: HashMap<(i64, Weight), i64> = HashMap::new();
        for ((q1, w1), m1) in &self.terms {
            for ((q2, w2), m2) in &other.terms {
                *acc.entry((q1 + q2, w1 + w2)).or_insert(0) += m1 * m2;
            }
        }
        GradedCharacter {
            level: self.level + other.level,
            terms: acc.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((q, w), m) in &other.terms {
            out.add(*q, w.clone(), *m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((q, w), m) in &other.terms {
            out.add(*q, w.clone(), -m);
        }
        out
    }

    /// Whether each layer is constant on Weyl orbits.
    pub fn is_w_symmetric(&self, rs: &RootSystem) -> bool {
        self.terms.iter().all(|((q, w), m)| {
            (1..=rs.rank()).all(|i| self.mult(*q, &rs.reflect_weight(i, w)) == *m)
        })
    }

    /// Multiplicities of irreducibles `V(lambda)` in each layer.
    pub fn decompose(&self, rs: &RootSystem) -> Result<BTreeMap<(i64, Weight), i64>> {
        let mut out = BTreeMap::new();
        let qs: Vec<i64> = self.terms.keys().map(|(q, _)| *q).collect::<HashSet<_>>().into_iter().collect();
        for q in qs {
            for (wt, m) in decompose_finite(rs, &self.layer(q))? {
                out.insert((q, wt), m);
            }
        }
        Ok(out)
    }

    /// Human-readable form, `q^k [V(...)]` summands.
    pub fn pretty(&self, rs: &RootSystem) -> String {
        match self.decompose(rs) {
            Ok(d) if !d.is_empty() => d
                .iter()
                .map(|((q, w), m)| {
                    let coeff = if *m == 1 { String::new() } else { format!("{m}*") };
                    let qs = match q {
                        0 => String::new(),
                        1 => "q*".to_string(),
                        _ => format!("q^{q}*"),
                    };
                    format!("{qs}{coeff}V({w})")
                })
                .collect::<Vec<_>>()
                .join(" + "),
            Ok(_) => "0".to_string(),
            Err(_) => format!("{} terms, dim {}", self.terms.len(), self.dim()),
        }
    }

    /// Tab-separated `q`, weight and multiplicity lines.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("q\twt\tmult\n");
        for ((q, w), m) in &self.terms {
            let wt: Vec<String> = w.0.iter().map(i64::to_string).collect();
            s.push_str(&format!("{q}\t{}\t{m}\n", wt.join(",")));
        }
        s
    }
}

/// Dominant weights of `V(lambda)`, sorted by increasing depth below `lambda`.
fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let n = rs.rank();
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::from([lambda.clone()]);
    seen.insert(lambda.clone());
    let mut out = Vec::new();
    while let Some(mu) = queue.pop_front() {
        if mu.is_dominant() {
            out.push(mu.clone());
        }
        for i in 1..=n {
            let next = &mu - &rs.simple_root(i);
            if seen.contains(&next) {
                continue;
            }
            if rs.dominance_leq(&rs.dominant_conjugate(&next), lambda) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    out
}

/// Multiplicities of dominant weights in `V(lambda)`.
pub fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, i64>> {
    if lambda.0.len() != rs.rank() || !lambda.is_dominant() {
        return Err(Error::Domain(format!("V({lambda}) needs a dominant weight of rank {}", rs.rank())));
    }
    let shifted = lambda + &rs.rho;
    let norm_top = rs.weight_form(&shifted, &shifted);
    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    for mu in dominant_weights_below(rs, lambda) {
        if &mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc = Rational::ZERO;
        for r in &rs.positive_roots {
            let mut k = 1;
            loop {
                let nu = &mu + &r.weight.scale(k);
                let dom = rs.dominant_conjugate(&nu);
                if !rs.dominance_leq(&dom, lambda) {
                    break;
                }
                if let Some(m) = mult.get(&dom) {
                    let form = rs.weight_form(&nu, &r.weight);
                    acc = &acc + &(&form * &Rational::from_int(*m));
                }
                k += 1;
            }
        }
        let mr = &mu + &rs.rho;
        let denom = &norm_top - &rs.weight_form(&mr, &mr);
        let value = &(&acc * &Rational::from_int(2)) / &denom;
        let m = value
            .to_i64()
            .filter(|_| value.is_integer())
            .ok_or_else(|| Error::Internal(format!("non-integral multiplicity {value} at {mu}")))?;
        if m != 0 {
            mult.insert(mu, m);
        }
    }
    Ok(mult)
}

/// Character of the irreducible `g`-module `V(lambda)`.
pub fn finite_weyl_character(rs: &RootSystem, lambda: &Weight) -> Result<FiniteCharacter> {
    let dom = dominant_multiplicities(rs, lambda)?;
    let mut out = FiniteCharacter::new();
    for (mu, m) in dom {
        for nu in weyl_orbit(rs, &mu) {
            out.insert(nu, m);
        }
    }
    Ok(out)
}

/// `ch V(lambda)` concentrated in degree zero.
pub fn weyl_character(rs: &RootSystem, lambda: &Weight) -> Result<GradedCharacter> {
    Ok(GradedCharacter::from_finite(0, 0, &finite_weyl_character(rs, lambda)?))
}

/// The Weyl orbit of a weight.
pub fn weyl_orbit(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut seen = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    let mut out = Vec::new();
    while let Some(mu) = queue.pop_front() {
        for i in 1..=rs.rank() {
            let nu = rs.reflect_weight(i, &mu);
            if seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
        out.push(mu);
    }
    out
}

/// Decomposes a `W`-invariant finite character into irreducibles.
pub fn decompose_finite(rs: &RootSystem, ch: &FiniteCharacter) -> Result<BTreeMap<Weight, i64>> {
    let mut rest: FiniteCharacter = ch.iter().filter(|(_, m)| **m != 0).map(|(w, m)| (w.clone(), *m)).collect();
    let mut out = BTreeMap::new();
    let height = |w: &Weight| -> Rational {
        rs.root_coordinates(w).iter().fold(Rational::ZERO, |a, b| &a + b)
    };
    while !rest.is_empty() {
        let top = rest
            .keys()
            .filter(|w| w.is_dominant())
            .max_by(|a, b| height(a).cmp(&height(b)).then_with(|| a.cmp(b)))
            .cloned()
            .ok_or_else(|| Error::Domain("character is not Weyl-invariant".into()))?;
        let m = rest[&top];
        for (w, k) in finite_weyl_character(rs, &top)? {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= m * k;
            if *e == 0 {
                rest.remove(&w);
            }
        }
        out.insert(top, m);
    }
    Ok(out)
}
