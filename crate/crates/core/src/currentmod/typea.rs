use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{cyclic_closure, tensor, CurrentModule, GenKind, Generator};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootdata::{DynkinKind, RootSystem, Weight};
use crate::sparse::{SparseMatrix, SparseVec};

fn require_type_a(rs: &RootSystem) -> Result<usize> {
    if rs.dynkin.kind != DynkinKind::A {
        return Err(Error::Unsupported(format!("explicit modules are only built in type A, not {}", rs.dynkin)));
    }
    Ok(rs.rank())
}

/// The natural module `C^{n+1}` of `sl_{n+1}`, evaluated at `t = 0`.
pub fn natural_module(rs: &Arc<RootSystem>) -> Result<CurrentModule> {
    let n = require_type_a(rs)?;
    let dim = n + 1;
    let weights = (0..dim)
        .map(|k| {
            let mut w = vec![0; n];
            if k < n {
                w[k] += 1;
            }
            if k > 0 {
                w[k - 1] -= 1;
            }
            Weight(w)
        })
        .collect();
    let mut mats = HashMap::new();
    for i in 1..=n {
        let unit = |pairs: &[(usize, usize, i64)]| {
            let mut cols = vec![SparseVec::new(); dim];
            for &(r, c, x) in pairs {
                cols[c] = SparseVec::from_pairs([(r as u32, Rational::from_int(x))]);
            }
            SparseMatrix::from_columns(dim, cols)
        };
        mats.insert(Generator::new(GenKind::E, i, 0), unit(&[(i - 1, i, 1)]));
        mats.insert(Generator::new(GenKind::F, i, 0), unit(&[(i, i - 1, 1)]));
        mats.insert(Generator::new(GenKind::H, i, 0), unit(&[(i - 1, i - 1, 1), (i, i, -1)]));
    }
    Ok(CurrentModule::from_table(rs.clone(), weights, vec![0; dim], Some(SparseVec::unit(0)), 1, mats))
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(k - 1) {
        // insert k-1 at every position; each step left flips the sign
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let flips = (p.len() - pos) as i64;
            out.push((q, if flips % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

type Cache = Mutex<HashMap<(String, Weight), Arc<CurrentModule>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Finishes a closure as an evaluation module: explicit degree-zero matrices,
/// higher powers of `t` acting by zero.
fn as_evaluation_module(m: CurrentModule) -> Result<CurrentModule> {
    let mut out = m.materialize()?;
    out.factors = 1;
    out.t_bound = 1;
    Ok(out)
}

/// `V(lambda)` for type A, with `x t^s` acting by zero for `s >= 1` and the
/// highest-weight vector as cyclic vector.
pub fn irreducible_evaluation_module(rs: &Arc<RootSystem>, lambda: &Weight) -> Result<Arc<CurrentModule>> {
    let n = require_type_a(rs)?;
    if lambda.0.len() != n || !lambda.is_dominant() {
        return Err(Error::Domain(format!("V({lambda}) needs a dominant weight of rank {n}")));
    }
    let key = (rs.dynkin.to_string(), lambda.clone());
    if let Some(m) = cache().lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let module = if lambda.is_zero() {
        CurrentModule::from_table(rs.clone(), vec![Weight::zero(n)], vec![0], Some(SparseVec::unit(0)), 1, HashMap::new())
    } else if let Some(i) = (1..=n).find(|&i| *lambda == Weight::fundamental(n, i)) {
        // exterior power inside the i-th tensor power of the natural module
        let nat = Arc::new(natural_module(rs)?);
        let power = Arc::new(tensor(&vec![nat; i])?);
        let dims = vec![n + 1; i];
        let wedge = SparseVec::from_pairs(permutations(i).into_iter().map(|(p, sign)| {
            let idx = p.iter().fold(0, |acc, d| acc * dims[0] + d);
            (idx as u32, Rational::from_int(sign))
        }));
        let (sub, _) = cyclic_closure(&power, &wedge, Some(0))?;
        as_evaluation_module(sub)?
    } else {
        let j = (1..=n).find(|&j| lambda.0[j - 1] > 0).unwrap();
        let fund = Weight::fundamental(n, j);
        let a = irreducible_evaluation_module(rs, &(lambda - &fund))?;
        let b = irreducible_evaluation_module(rs, &fund)?;
        let t = Arc::new(tensor(&[a, b])?);
        let v = t.cyclic_vector().cloned().expect("factors carry highest-weight vectors");
        let (sub, _) = cyclic_closure(&t, &v, Some(0))?;
        as_evaluation_module(sub)?
    };
    if Rational::from_int(module.dim() as i64) != rs.weyl_dimension(lambda) {
        return Err(Error::Internal(format!("V({lambda}) has dimension {}", module.dim())));
    }
    let module = Arc::new(module);
    cache().lock().unwrap().insert(key, module.clone());
    Ok(module)
}
