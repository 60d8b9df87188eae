use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CurrentModule, GenKind, Generator};
use crate::rational::Rational;
use crate::sparse::SparseVec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> SparseVec {
    let k = rng.gen_range(1..=3.min(dim));
    SparseVec::from_pairs((0..k).map(|_| {
        (rng.gen_range(0..dim) as u32, Rational::from_int(rng.gen_range(-3..=3)))
    }))
}

/// Expected `[x, y]` as a combination of generators.
fn bracket(m: &CurrentModule, x: Generator, y: Generator) -> Vec<(i64, Generator)> {
    let s = x.s + y.s;
    let c = |i: usize, j: usize| m.rs.cartan[i - 1][j - 1];
    match (x.kind, y.kind) {
        (GenKind::E, GenKind::F) if x.node == y.node => vec![(1, Generator::new(GenKind::H, x.node, s))],
        (GenKind::F, GenKind::E) if x.node == y.node => vec![(-1, Generator::new(GenKind::H, x.node, s))],
        (GenKind::H, GenKind::E) => vec![(c(x.node, y.node), Generator::new(GenKind::E, y.node, s))],
        (GenKind::H, GenKind::F) => vec![(-c(x.node, y.node), Generator::new(GenKind::F, y.node, s))],
        (GenKind::E, GenKind::H) => vec![(-c(y.node, x.node), Generator::new(GenKind::E, x.node, s))],
        (GenKind::F, GenKind::H) => vec![(c(y.node, x.node), Generator::new(GenKind::F, x.node, s))],
        _ => Vec::new(),
    }
}

fn check_shift(m: &CurrentModule, g: Generator, v: &SparseVec, out: &SparseVec) -> Option<String> {
    let shift = g.weight_shift(&m.rs);
    for (j, _) in out.iter() {
        let j = *j as usize;
        let ok = v.iter().any(|(i, _)| {
            let i = *i as usize;
            let wt_ok = m.weights[j] == &m.weights[i] + &shift;
            let q_ok = m.qdeg.as_ref().map_or(true, |q| q[j] == q[i] + i64::from(g.s));
            wt_ok && q_ok
        });
        if !ok {
            return Some(format!("{g:?} breaks the weight or degree grading"));
        }
    }
    None
}

/// Random exact checks of the defining relations of `g[t]`: commutators
/// of Chevalley generators, Serre relations, and the weight and degree
/// shifts of each generator.
pub fn bracket_audit(m: &CurrentModule, checks: usize, seed: u64) -> AuditReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = m.rs.rank();
    let smax = m.t_bound().max(2) + 1;
    let mut failures = Vec::new();
    let kinds = [GenKind::E, GenKind::F, GenKind::H];
    for check in 0..checks {
        let v = if m.dim() == 0 { SparseVec::new() } else { random_vector(&mut rng, m.dim()) };
        let pick = |rng: &mut ChaCha8Rng| {
            Generator::new(kinds[rng.gen_range(0..3)], rng.gen_range(1..=n), rng.gen_range(0..=smax))
        };
        if n >= 2 && check % 5 == 4 {
            // Serre: sum_k (-1)^k binom(r, k) e_i^{r-k} e_j e_i^k = 0 with r = 1 - a_ij
            let i = rng.gen_range(1..=n);
            let j = (1..=n).filter(|&j| j != i).nth(rng.gen_range(0..n - 1)).unwrap();
            let kind = if rng.gen_bool(0.5) { GenKind::E } else { GenKind::F };
            let (a, b) = (rng.gen_range(0..=smax), rng.gen_range(0..=smax));
            let gi = Generator::new(kind, i, a);
            let gj = Generator::new(kind, j, b);
            let r = (1 - m.rs.cartan[i - 1][j - 1]) as u32;
            let mut total = SparseVec::new();
            let mut binom = 1i64;
            for k in 0..=r {
                let mut x = v.clone();
                for _ in 0..k {
                    x = m.apply(gi, &x);
                }
                x = m.apply(gj, &x);
                for _ in 0..(r - k) {
                    x = m.apply(gi, &x);
                }
                let sign = if k % 2 == 0 { binom } else { -binom };
                total.axpy(&Rational::from_int(sign), &x);
                binom = binom * i64::from(r - k) / i64::from(k + 1);
            }
            if !total.is_zero() {
                failures.push(format!("Serre relation fails for nodes {i}, {j}"));
            }
            continue;
        }
        let x = pick(&mut rng);
        let y = pick(&mut rng);
        let xv = m.apply(x, &v);
        let yv = m.apply(y, &v);
        if let Some(f) = check_shift(m, x, &v, &xv).or_else(|| check_shift(m, y, &v, &yv)) {
            failures.push(f);
            continue;
        }
        let mut lhs = m.apply(x, &yv);
        lhs.axpy(&Rational::from_int(-1), &m.apply(y, &xv));
        let mut rhs = SparseVec::new();
        for (c, g) in bracket(m, x, y) {
            rhs.axpy(&Rational::from_int(c), &m.apply(g, &v));
        }
        // brackets outside the generating set, such as [e_i, e_j] for i != j,
        // are not checked
        let covered = !matches!((x.kind, y.kind), (GenKind::E, GenKind::E) | (GenKind::F, GenKind::F))
            || x.node == y.node;
        if covered && lhs != rhs {
            failures.push(format!("[{x:?}, {y:?}] does not act as expected"));
        }
    }
    AuditReport { checks, failures }
}
