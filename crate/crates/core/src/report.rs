//! Verification reports over bounded instance matrices. Every instance keeps
//! both characters so a failure can be audited without a rerun. A passing
//! report is instance evidence, nothing more.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use serde::Serialize;
use serde_json::{json, Value};

use crate::charring::{affine_demazure_character, fusion_character, DeltaCap, GradedCharacter};
use crate::error::{Error, Result};
use crate::currentmod::CurrentModule;
use crate::fusion::{
    check_associativity, check_parameter_independence, default_points, demazure_module_explicit, fusion_product,
    generalized_demazure_oracle,
};
use crate::qcluster::{qsystem_check, qsystem_exchange_match, Orientation};
use crate::rootdata::{Coweight, DynkinKind, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    CorFusionDemazure,
    QSystem,
    ParamIndependence,
    Associativity,
    Remark24,
}

impl Claim {
    pub const ALL: [Claim; 5] =
        [Claim::CorFusionDemazure, Claim::QSystem, Claim::ParamIndependence, Claim::Associativity, Claim::Remark24];

    pub fn name(self) -> &'static str {
        match self {
            Claim::CorFusionDemazure => "cor-fusion-demazure",
            Claim::QSystem => "qsystem",
            Claim::ParamIndependence => "param-independence",
            Claim::Associativity => "associativity",
            Claim::Remark24 => "remark-2.4",
        }
    }
}

impl std::str::FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown claim `{s}`")))
    }
}

/// Size caps and randomness for an instance matrix.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// largest level in a chain
    pub lmax: i64,
    /// bound on the total `<2 rho, lambda>` of the coweights in an instance
    pub cap: i64,
    pub trials: usize,
    pub seed: u64,
    pub dmax: DeltaCap,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            lmax: 3,
            cap: 6,
            trials: 5,
            seed: 0,
            dmax: DeltaCap::Auto,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub input: Value,
    pub lhs: GradedCharacter,
    pub rhs: GradedCharacter,
    pub equal: bool,
    pub qshift: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Instance {
    fn failed(input: Value, e: &Error) -> Self {
        Instance {
            input,
            lhs: GradedCharacter::new(0),
            rhs: GradedCharacter::new(0),
            equal: false,
            qshift: 0,
            detail: None,
            error: Some(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    #[serde(rename = "type")]
    pub dynkin: String,
    pub evidence: &'static str,
    pub instances: Vec<Instance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Value>,
    pub pass: bool,
}

/// Equality up to a grading shift; `qshift = min_q(lhs) - min_q(rhs)`.
pub fn compare(lhs: &GradedCharacter, rhs: &GradedCharacter) -> (bool, i64) {
    let s = match (lhs.min_q(), rhs.min_q()) {
        (Some(a), Some(b)) => a - b,
        _ => 0,
    };
    (lhs.same_terms(&rhs.shift(s)), s)
}

/// Evaluates `jobs` on a small thread pool; results keep the input order.
fn run_parallel<T: Sync, R: Send>(jobs: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.max(1).min(jobs.len().max(1)) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= jobs.len() {
                    break;
                }
                let r = f(&jobs[k]);
                out.lock().unwrap()[k] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(|r| r.unwrap()).collect()
}

/// Nonzero dominant coweights with `<2 rho, lambda>` at most `bound`.
pub fn small_coweights(rs: &RootSystem, bound: i64) -> Vec<Coweight> {
    let n = rs.rank();
    let mut out = vec![Coweight::zero(n)];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|c| {
                (0..=bound).map(move |a| {
                    let mut c = c.clone();
                    c.0[i] = a;
                    c
                })
            })
            .filter(|c| rs.two_rho_pairing(c) <= bound)
            .collect();
    }
    out.retain(|c| !c.is_zero());
    out.sort();
    out
}

/// Multisets `lambda_1 >= ... >= lambda_k` of nonzero dominant coweights
/// with total `<2 rho, .>` at most `bound`.
pub fn coweight_multisets(rs: &RootSystem, bound: i64, max_len: usize) -> Vec<Vec<Coweight>> {
    let basis = small_coweights(rs, bound);
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, i64)> = (0..basis.len()).map(|i| (vec![i], rs.two_rho_pairing(&basis[i]))).collect();
    stack.reverse();
    while let Some((idx, used)) = stack.pop() {
        out.push(idx.iter().map(|&i| basis[i].clone()).collect::<Vec<_>>());
        if idx.len() == max_len {
            continue;
        }
        let last = *idx.last().unwrap();
        for j in (0..=last).rev() {
            let u = used + rs.two_rho_pairing(&basis[j]);
            if u <= bound {
                let mut next = idx.clone();
                next.push(j);
                stack.push((next, u));
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
    out
}

fn names(cs: &[Coweight]) -> Vec<String> {
    cs.iter().map(|c| c.to_string()).collect()
}

fn level_one_factors(rs: &Arc<RootSystem>, lambdas: &[Coweight]) -> Result<Vec<Arc<CurrentModule>>> {
    lambdas.iter().map(|l| demazure_module_explicit(rs, 1, l)).collect()
}

fn remark24_instance(rs: &Arc<RootSystem>, lambdas: &[Coweight], dmax: DeltaCap) -> Result<Instance> {
    let ms = level_one_factors(rs, lambdas)?;
    let f = fusion_product(&ms, &default_points(ms.len()))?;
    let total = lambdas.iter().fold(Coweight::zero(rs.rank()), |a, b| &a + b);
    let rhs = affine_demazure_character(rs, 1, &rs.coweight_embed(&total), dmax)?;
    let explicit = demazure_module_explicit(rs, 1, &total)?.graded_character()?;
    let (equal, qshift) = compare(&f.character, &rhs);
    let explicit_ok = compare(&explicit, &rhs).0;
    Ok(Instance {
        input: json!({ "coweights": names(lambdas) }),
        lhs: f.character,
        rhs,
        equal: equal && explicit_ok,
        qshift,
        detail: Some(json!({ "stages": f.filtration.stages, "explicit_module_agrees": explicit_ok })),
        error: None,
    })
}

fn type_a_only(rs: &RootSystem, claim: Claim) -> Result<()> {
    if rs.dynkin.kind != DynkinKind::A {
        return Err(Error::Unsupported(format!("{} builds explicit modules in type A only, not {}", claim.name(), rs.dynkin)));
    }
    Ok(())
}

/// One generalized Demazure instance: levels `l_1 >= ... >= l_k >= l`,
/// coweights `lambda_j`, last weight `l iota(nu)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainInstance {
    pub levels: Vec<i64>,
    pub lambdas: Vec<Coweight>,
    pub level: i64,
    pub nu: Coweight,
}

impl ChainInstance {
    pub fn to_json(&self) -> Value {
        json!({ "levels": self.levels, "coweights": names(&self.lambdas), "level": self.level, "nu": self.nu.to_string() })
    }

    fn factors(&self, rs: &Arc<RootSystem>) -> Result<Vec<Arc<CurrentModule>>> {
        let mut ms = self
            .levels
            .iter()
            .zip(&self.lambdas)
            .map(|(&l, lam)| demazure_module_explicit(rs, l, lam))
            .collect::<Result<Vec<_>>>()?;
        if self.level > 0 {
            ms.push(demazure_module_explicit(rs, self.level, &self.nu)?);
        }
        Ok(ms)
    }
}

fn nonincreasing(len: usize, top: i64, bottom: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    (bottom..=top)
        .rev()
        .flat_map(|first| {
            nonincreasing(len - 1, first, bottom).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Chains with `l_1 <= lmax`, at most three coweights of at most two
/// fundamental units each, `nu` of at most two units, and total
/// `<2 rho, .>` over the coweights and `nu` at most `cap`.
pub fn chain_instances(rs: &RootSystem, lmax: i64, cap: i64) -> Vec<ChainInstance> {
    let units = |c: &Coweight| c.0.iter().sum::<i64>();
    let small: Vec<Coweight> = small_coweights(rs, cap).into_iter().filter(|c| units(c) <= 2).collect();
    let mut nus = vec![Coweight::zero(rs.rank())];
    nus.extend(small.iter().cloned());
    let mut out = Vec::new();
    for k in 1..=3usize {
        let mut tuples: Vec<Vec<Coweight>> = vec![Vec::new()];
        for _ in 0..k {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    small.iter().map(move |c| {
                        let mut t = t.clone();
                        t.push(c.clone());
                        t
                    })
                })
                .collect();
        }
        for levels in nonincreasing(k, lmax, 1) {
            for level in 0..=levels[k - 1] {
                for lambdas in &tuples {
                    for nu in &nus {
                        if level == 0 && !nu.is_zero() {
                            continue;
                        }
                        let size: i64 = lambdas.iter().chain([nu]).map(|c| rs.two_rho_pairing(c)).sum();
                        if size <= cap {
                            out.push(ChainInstance { levels: levels.clone(), lambdas: lambdas.clone(), level, nu: nu.clone() });
                        }
                    }
                }
            }
        }
    }
    out
}

fn cor_instance(rs: &Arc<RootSystem>, c: &ChainInstance, dmax: DeltaCap) -> Result<Instance> {
    let ms = c.factors(rs)?;
    let f = fusion_product(&ms, &default_points(ms.len()))?;
    let mu = rs.coweight_embed(&c.nu).scale(c.level);
    let rhs = fusion_character(rs, &c.levels, &c.lambdas, c.level, &mu, dmax)?;
    let oracle = generalized_demazure_oracle(rs, &c.levels, &c.lambdas, c.level, &c.nu)?;
    let (equal, qshift) = compare(&f.character, &rhs);
    let (oracle_ok, oracle_shift) = compare(&oracle, &rhs);
    Ok(Instance {
        input: c.to_json(),
        lhs: f.character,
        rhs,
        equal: equal && oracle_ok,
        qshift,
        detail: Some(json!({ "oracle_agrees": oracle_ok, "oracle_qshift": oracle_shift, "stages": f.filtration.stages })),
        error: None,
    })
}

/// Factor list `D(l, l iota(lambda))` of a fusion, as (level, coweight).
pub type FactorList = Vec<(i64, Coweight)>;

impl ChainInstance {
    /// The fused modules, sorted and without the one-dimensional `D(l, 0)`;
    /// the fusion only depends on this multiset.
    pub fn factor_list(&self) -> FactorList {
        let mut out: FactorList = self.levels.iter().copied().zip(self.lambdas.iter().cloned()).collect();
        if self.level > 0 {
            out.push((self.level, self.nu.clone()));
        }
        out.retain(|(_, c)| !c.is_zero());
        out.sort();
        out
    }
}

fn factor_names(fs: &FactorList) -> Vec<String> {
    fs.iter().map(|(l, c)| format!("D({l},{c})")).collect()
}

fn independence_instance(rs: &Arc<RootSystem>, fs: &FactorList, trials: usize, seed: u64) -> Result<Instance> {
    let input = json!({ "factors": factor_names(fs), "seed": seed });
    let ms = fs.iter().map(|(l, c)| demazure_module_explicit(rs, *l, c)).collect::<Result<Vec<_>>>()?;
    let r = check_parameter_independence(&ms, trials, seed)?;
    let lhs = r.characters[0].clone();
    let rhs = r.characters.last().unwrap().clone();
    Ok(Instance {
        input,
        equal: r.is_singleton(),
        qshift: compare(&lhs, &rhs).1,
        detail: Some(json!({ "distinct": r.characters.len(), "points": r.points, "characters": r.characters })),
        lhs,
        rhs,
        error: None,
    })
}

fn qsystem_instance(rs: &Arc<RootSystem>, i: usize, level: i64, dmax: DeltaCap) -> Result<Instance> {
    let c = qsystem_check(rs, i, level, None, dmax)?;
    let (lhs, rhs) = match (c.orientation, c.shift) {
        (Some(Orientation::ProductIsSum), Some(s)) => (c.a.clone(), c.b.sum(&c.c.shift(s))),
        (_, s) => (c.b.clone(), c.a.sum(&c.c.shift(s.unwrap_or(0)))),
    };
    let m = qsystem_exchange_match(rs, i, level, true, dmax)?;
    let dims = json!({ "A": c.a.dim(), "B": c.b.dim(), "C": c.c.dim() });
    let q1 = match c.orientation {
        Some(Orientation::SquareIsSum) => c.b.dim() == c.a.dim() + c.c.dim(),
        Some(Orientation::ProductIsSum) => c.a.dim() == c.b.dim() + c.c.dim(),
        None => false,
    };
    let detail = json!({
        "engine": c.engine,
        "orientation": c.orientation,
        "dims": dims,
        "q1_identity": q1,
        "exchange_match": m.matched,
        "residual": if c.passed() { Value::Null } else { serde_json::to_value(&c.residual).unwrap() },
    });
    Ok(Instance {
        input: json!({ "node": i, "level": level }),
        lhs,
        rhs,
        equal: c.passed() && q1 && m.matched,
        qshift: c.shift.unwrap_or(0),
        detail: Some(detail),
        error: None,
    })
}

fn associativity_instances(rs: &Arc<RootSystem>, lambdas: &[Coweight]) -> Vec<Instance> {
    let input = |g: &str| json!({ "coweights": names(lambdas), "grouping": g });
    let ms = match level_one_factors(rs, lambdas) {
        Ok(ms) => ms,
        Err(e) => return vec![Instance::failed(input("all"), &e)],
    };
    [(0..2, "(12)3"), (1..3, "1(23)")]
        .into_iter()
        .map(|(g, label)| match check_associativity(&ms, g, &default_points(2), &default_points(2)) {
            Ok(r) => Instance {
                input: input(label),
                qshift: compare(&r.flat, &r.nested).1,
                lhs: r.flat,
                rhs: r.nested,
                equal: r.equal,
                detail: None,
                error: None,
            },
            Err(e) => Instance::failed(input(label), &e),
        })
        .collect()
}

fn settle(input: Value, r: Result<Instance>) -> Instance {
    r.unwrap_or_else(|e| Instance::failed(input, &e))
}

pub fn verify(rs: &Arc<RootSystem>, claim: Claim, opts: &VerifyOptions) -> Result<Report> {
    let instances = match claim {
        Claim::Remark24 => {
            type_a_only(rs, claim)?;
            let jobs = coweight_multisets(rs, opts.cap, usize::MAX);
            run_parallel(&jobs, opts.threads, |l| {
                settle(json!({ "coweights": names(l) }), remark24_instance(rs, l, opts.dmax))
            })
        }
        Claim::Associativity => {
            type_a_only(rs, claim)?;
            let jobs: Vec<_> = coweight_multisets(rs, opts.cap, 3).into_iter().filter(|l| l.len() == 3).collect();
            run_parallel(&jobs, opts.threads, |l| associativity_instances(rs, l)).into_iter().flatten().collect()
        }
        Claim::CorFusionDemazure => {
            type_a_only(rs, claim)?;
            let jobs = chain_instances(rs, opts.lmax, opts.cap);
            run_parallel(&jobs, opts.threads, |c| settle(c.to_json(), cor_instance(rs, c, opts.dmax)))
        }
        Claim::ParamIndependence => {
            type_a_only(rs, claim)?;
            let mut lists: Vec<FactorList> = chain_instances(rs, opts.lmax, opts.cap)
                .iter()
                .map(ChainInstance::factor_list)
                .filter(|f| f.len() >= 2)
                .collect();
            lists.sort();
            lists.dedup();
            let jobs: Vec<(u64, FactorList)> = lists.into_iter().enumerate().map(|(k, f)| (opts.seed.wrapping_add(k as u64), f)).collect();
            run_parallel(&jobs, opts.threads, |(seed, f)| {
                settle(json!({ "factors": factor_names(f), "seed": seed }), independence_instance(rs, f, opts.trials, *seed))
            })
        }
        Claim::QSystem => {
            if !rs.is_simply_laced() {
                return Err(Error::Unsupported(format!("qsystem needs a simply-laced type, not {}", rs.dynkin)));
            }
            let jobs: Vec<(usize, i64)> =
                (1..=opts.lmax).flat_map(|l| (1..=rs.rank()).map(move |i| (i, l))).collect();
            run_parallel(&jobs, opts.threads, |&(i, l)| {
                settle(json!({ "node": i, "level": l }), qsystem_instance(rs, i, l, opts.dmax))
            })
        }
    };
    let summary = match claim {
        Claim::QSystem => {
            let shifts: Vec<(i64, i64)> = instances
                .iter()
                .filter(|x| x.error.is_none())
                .map(|x| (x.input["level"].as_i64().unwrap(), x.qshift))
                .collect();
            Some(json!({ "shift_equals_level": shifts.iter().all(|(l, s)| l == s) }))
        }
        _ => None,
    };
    let pass = !instances.is_empty() && instances.iter().all(|x| x.equal && x.error.is_none());
    Ok(Report { claim: claim.name().to_string(), dynkin: rs.dynkin.to_string(), evidence: "instance evidence", instances, summary, pass })
}

#[doc(hidden)]
pub fn verify_chain(rs: &Arc<RootSystem>, c: &ChainInstance, dmax: DeltaCap) -> Instance {
    settle(c.to_json(), cor_instance(rs, c, dmax))
}
