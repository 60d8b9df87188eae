//! Laurent polynomials with integer coefficients in finitely many variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    /// ordered lexicographically, so the last entry is the leading term
    terms: BTreeMap<Monomial, i64>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    fn leading(&self) -> Option<(&Monomial, i64)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(self.nvars, 1), |acc, _| &acc * self)
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let (dm, dc) = d.leading().ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let (dm, dc) = (dm.clone(), dc);
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        // every step removes the leading term, and an exact quotient has
        // finitely many terms
        let limit = 4 * (self.terms.len() + 1) * (d.terms.len() + 1) + 1024;
        for _ in 0..limit {
            let Some((rm, rc)) = rem.leading() else { return Ok(q) };
            if rc % dc != 0 {
                break;
            }
            let m: Monomial = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let t = Self::monomial(self.nvars, m.clone(), rc / dc);
            q.add_term(m, rc / dc);
            rem = &rem + &(&t * &Self::constant(self.nvars, -1) * d);
        }
        Err(Error::Domain(format!("{d} does not divide {self}")))
    }

    /// Evaluates with `eval_var(i, e)` giving the value of `x_i^e`.
    pub fn evaluate<T: Clone>(
        &self,
        zero: T,
        mut eval_var: impl FnMut(usize, i32) -> T,
        scale: impl Fn(&T, i64) -> T,
        mul: impl Fn(&T, &T) -> T,
        add: impl Fn(&T, &T) -> T,
        one: T,
    ) -> T {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut term = one.clone();
            for (i, &e) in m.iter().enumerate() {
                if e != 0 {
                    term = mul(&term, &eval_var(i, e));
                }
            }
            acc = add(&acc, &scale(&term, *c));
        }
        acc
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(u, v)| u + v).collect(), x * y);
            }
        }
        out
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        &self * other
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in decreasing lexicographic order, `2*x0^2*x1^-1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(i, e)| if *e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            match (vars.is_empty(), a) {
                (true, _) => write!(f, "{a}")?,
                (false, 1) => write!(f, "{}", vars.join("*"))?,
                (false, _) => write!(f, "{a}*{}", vars.join("*"))?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let x = LaurentPoly::var(2, 0);
        let y = LaurentPoly::var(2, 1);
        let one = LaurentPoly::constant(2, 1);
        let a = &(&x * &x) + &one;
        let b = &(&x * &y) + &(&y * &y);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(a.div_exact(&b).is_err());
        let inv = one.div_exact(&x).unwrap();
        assert_eq!(inv.to_string(), "x0^-1");
        assert_eq!((&a * &inv).to_string(), "x0 + x0^-1");
    }

    #[test]
    fn display_signs() {
        let x = LaurentPoly::var(1, 0);
        let p = &(&x * &LaurentPoly::constant(1, -2)) + &LaurentPoly::constant(1, 3);
        assert_eq!(p.to_string(), "-2*x0 + 3");
    }
}
