use super::{Coweight, RootSystem, Weight};

/// Element of the finite Weyl group, kept as a canonical reduced word.
///
/// `word = [i1, ..., ip]` denotes `s_{i1} ... s_{ip}`; the canonical word is
/// the one obtained by peeling the smallest left descent, which is read off
/// from the image of `rho`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteWeylElement {
    word: Vec<usize>,
}

impl FiniteWeylElement {
    pub fn identity() -> Self {
        FiniteWeylElement { word: Vec::new() }
    }

    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        Self::from_word(rs, &[i])
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut x = rs.rho.clone();
        for &i in word.iter().rev() {
            x = rs.reflect_weight(i, &x);
        }
        Self::from_rho_image(rs, &x)
    }

    /// Recovers `v` from `v(rho)`.
    pub fn from_rho_image(rs: &RootSystem, image: &Weight) -> Self {
        let mut x = image.clone();
        let mut word = Vec::new();
        while let Some(i) = x.0.iter().position(|&c| c < 0) {
            x = rs.reflect_weight(i + 1, &x);
            word.push(i + 1);
        }
        debug_assert_eq!(x, rs.rho);
        FiniteWeylElement { word }
    }

    /// The longest element.
    pub fn longest(rs: &RootSystem) -> Self {
        Self::from_rho_image(rs, &(-&rs.rho))
    }

    /// Reflection in the root `beta` given by simple-root coefficients.
    pub fn reflection(rs: &RootSystem, coroot: &[i64], root: &Weight) -> Self {
        let k = rs.pair_coroot(&rs.rho, coroot);
        let image = &rs.rho - &root.scale(k);
        Self::from_rho_image(rs, &image)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn act_weight(&self, rs: &RootSystem, lambda: &Weight) -> Weight {
        let mut x = lambda.clone();
        for &i in self.word.iter().rev() {
            x = rs.reflect_weight(i, &x);
        }
        x
    }

    pub fn act_coweight(&self, rs: &RootSystem, mu: &Coweight) -> Coweight {
        let mut x = mu.clone();
        for &i in self.word.iter().rev() {
            x = rs.reflect_coweight(i, &x);
        }
        x
    }

    /// Image of a root given by simple-root coefficients.
    pub fn act_root(&self, rs: &RootSystem, alpha: &[i64]) -> Vec<i64> {
        let n = rs.rank();
        let mut x = alpha.to_vec();
        for &i in self.word.iter().rev() {
            let pairing: i64 = (0..n).map(|j| x[j] * rs.cartan[i - 1][j]).sum();
            x[i - 1] -= pairing;
        }
        x
    }

    pub fn compose(&self, rs: &RootSystem, other: &Self) -> Self {
        let image = self.act_weight(rs, &other.act_weight(rs, &rs.rho));
        Self::from_rho_image(rs, &image)
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::from_word(rs, &rev)
    }
}
