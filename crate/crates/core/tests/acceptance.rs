//! One PASS/FAIL line per acceptance criterion, with timings.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fusion_core::charring::{
    demazure_word_character, weyl_character, AffineCharPoly, DeltaCap,
};
use fusion_core::currentmod::{bracket_audit, irreducible_evaluation_module, CurrentModule};
use fusion_core::fusion::{check_parameter_independence, default_points, demazure_module_explicit, fusion_product};
use fusion_core::qcluster::{qsystem_check, qsystem_exchange_match, ClusterSeed};
use fusion_core::report::{verify, Claim, Report, VerifyOptions};
use fusion_core::rootdata::{AffineWeight, Coweight, DynkinType, ExtAffineWeylElement, RootSystem, Weight};

fn rs(t: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(t.parse::<DynkinType>().unwrap()))
}

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(ok: bool, note: impl Into<String>) -> Outcome {
    Outcome { ok, note: note.into() }
}

/// Runs one criterion and prints its line; the budget is part of the verdict.
fn criterion(n: usize, what: &str, budget: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let t0 = Instant::now();
    let r = run();
    let el = t0.elapsed();
    let ok = r.ok && el <= budget;
    let verdict = if ok { "PASS" } else { "FAIL" };
    // straight to the handle, so the line shows without --nocapture
    let mut out = std::io::stdout().lock();
    writeln!(out, "{verdict} criterion {n}: {what} [{:.1}s of {}s] {}", el.as_secs_f64(), budget.as_secs(), r.note).unwrap();
    out.flush().unwrap();
    ok
}

fn report_note(r: &Report) -> String {
    let ok = r.instances.iter().filter(|x| x.equal).count();
    let mut shifts: BTreeMap<i64, usize> = BTreeMap::new();
    for x in &r.instances {
        *shifts.entry(x.qshift).or_default() += 1;
    }
    let bad: Vec<String> = r.instances.iter().filter(|x| !x.equal).take(3).map(|x| x.input.to_string()).collect();
    format!("{} {}/{} qshifts {:?}{}", r.dynkin, ok, r.instances.len(), shifts, if bad.is_empty() { String::new() } else { format!(" bad {bad:?}") })
}

fn run_claim(types: &[&str], claim: Claim, opts: &VerifyOptions) -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for t in types {
        match verify(&rs(t), claim, opts) {
            Ok(r) => {
                ok &= r.pass;
                notes.push(report_note(&r));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{t} error {e}"));
            }
        }
    }
    outcome(ok, notes.join("; "))
}

fn criterion1() -> Outcome {
    let a1 = rs("A1");
    let v = irreducible_evaluation_module(&a1, &Weight(vec![1])).unwrap();
    let f = fusion_product(&[v.clone(), v], &default_points(2)).unwrap();
    let want = weyl_character(&a1, &Weight(vec![2])).unwrap().sum(&weyl_character(&a1, &Weight(vec![0])).unwrap().shift(1));
    let ok = f.filtration.stages == vec![3, 4] && f.character == want;
    outcome(ok, format!("stages {:?} character {}", f.filtration.stages, f.character.pretty(&a1)))
}

fn criterion6() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for t in ["A1", "A2", "A3", "D4"] {
        let r = rs(t);
        let mut shifts = Vec::new();
        for i in 1..=r.rank() {
            for level in 1..=3 {
                match qsystem_check(&r, i, level, None, DeltaCap::Auto) {
                    Ok(c) => {
                        ok &= c.passed() && c.shift.is_some();
                        shifts.push(c.shift.unwrap_or(-1));
                    }
                    Err(e) => {
                        ok = false;
                        notes.push(format!("{t} node {i} level {level}: {e}"));
                    }
                }
            }
        }
        notes.push(format!("{t} shifts {shifts:?}"));
    }
    let dims = |t: &str| {
        let c = qsystem_check(&rs(t), 1, 1, None, DeltaCap::Auto).unwrap();
        (c.b.dim(), c.a.dim(), c.c.dim())
    };
    for (t, want) in [("A1", (4, 3, 1)), ("A2", (9, 6, 3))] {
        let d = dims(t);
        ok &= d == want;
        notes.push(format!("{t} q=1: {} = {} + {}", d.0, d.1, d.2));
    }
    outcome(ok, notes.join("; "))
}

fn random_seed(rng: &mut ChaCha8Rng) -> ClusterSeed {
    let n = rng.gen_range(1..=6);
    let mut b = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.gen_range(-3..=3);
            b[i][j] = x;
            b[j][i] = -x;
        }
    }
    ClusterSeed::initial((0..n).map(|i| format!("v{i}")).collect(), b).unwrap()
}

fn criterion7() -> Outcome {
    let mut ok = true;
    let mut matched = 0;
    let mut total = 0;
    for t in ["A1", "A2"] {
        let r = rs(t);
        for i in 1..=r.rank() {
            for level in 1..=3 {
                let m = qsystem_exchange_match(&r, i, level, true, DeltaCap::Auto).unwrap();
                total += 1;
                if m.matched {
                    matched += 1;
                } else {
                    ok = false;
                }
            }
        }
    }
    let mut involutions = 0;
    for s in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        // start from a random point of the exchange graph
        let mut seed = random_seed(&mut rng);
        for _ in 0..rng.gen_range(0..3) {
            let k = rng.gen_range(0..seed.len());
            seed = seed.mutate(k).unwrap().0;
        }
        let k = rng.gen_range(0..seed.len());
        let back = seed.mutate(k).unwrap().0.mutate(k).unwrap().0;
        if back == seed {
            involutions += 1;
        } else {
            ok = false;
        }
    }
    outcome(ok, format!("exchange match {matched}/{total}, involution {involutions}/100"))
}

fn audited_modules() -> Vec<(String, Arc<CurrentModule>)> {
    let a1 = rs("A1");
    let a2 = rs("A2");
    let mut out: Vec<(String, Arc<CurrentModule>)> = Vec::new();
    let mut add = |name: &str, m: &Arc<CurrentModule>| out.push((name.to_string(), m.clone()));
    let v1 = irreducible_evaluation_module(&a1, &Weight(vec![1])).unwrap();
    add("A1 V(w1)", &v1);
    add("A1 V(2w1)", &irreducible_evaluation_module(&a1, &Weight(vec![2])).unwrap());
    add("A2 V(w1+w2)", &irreducible_evaluation_module(&a2, &Weight(vec![1, 1])).unwrap());
    add("A1 D(1,2w1)", &demazure_module_explicit(&a1, 1, &Coweight(vec![2])).unwrap());
    add("A1 D(2,2w1)", &demazure_module_explicit(&a1, 2, &Coweight(vec![1])).unwrap());
    add("A2 D(1,w1+w2)", &demazure_module_explicit(&a2, 1, &Coweight(vec![1, 1])).unwrap());
    let f = fusion_product(&[v1.clone(), v1], &default_points(2)).unwrap();
    out.push(("A1 V(w1)*V(w1)".into(), Arc::new(f.graded_module().unwrap())));
    let w1 = irreducible_evaluation_module(&a2, &Weight(vec![1, 0])).unwrap();
    let w2 = irreducible_evaluation_module(&a2, &Weight(vec![0, 1])).unwrap();
    let f = fusion_product(&[w1, w2], &default_points(2)).unwrap();
    out.push(("A2 V(w1)*V(w2)".into(), Arc::new(f.graded_module().unwrap())));
    out
}

fn words(nodes: usize, len: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    let mut last = vec![vec![]];
    for _ in 0..len {
        last = last
            .iter()
            .flat_map(|w: &Vec<usize>| (0..nodes).map(move |i| [w.as_slice(), &[i]].concat()))
            .collect();
        all.extend(last.iter().cloned());
    }
    all
}

/// Idempotence `D_i^2 = D_i` and agreement of reduced words for the same element.
fn demazure_hygiene(t: &str, lam: &AffineWeight) -> Result<(usize, usize), String> {
    let r = rs(t);
    let cap = 64;
    let mut by_element: HashMap<ExtAffineWeylElement, (Vec<usize>, AffineCharPoly)> = HashMap::new();
    let mut pairs = 0;
    let ws = words(r.rank() + 1, 4);
    for w in &ws {
        let p = demazure_word_character(&r, w, lam, DeltaCap::Fixed(cap)).map_err(|e| e.to_string())?;
        for i in 0..=r.rank() {
            let once = p.apply_node(&r, i, cap).map_err(|e| e.to_string())?;
            if once.apply_node(&r, i, cap).map_err(|e| e.to_string())? != once {
                return Err(format!("{t}: D_{i} not idempotent after {w:?}"));
            }
        }
        let el = ExtAffineWeylElement::from_word(&r, w);
        if el.length(&r) != w.len() {
            continue;
        }
        match by_element.get(&el) {
            Some((v, q)) => {
                pairs += 1;
                if q != &p {
                    return Err(format!("{t}: words {v:?} and {w:?} disagree"));
                }
            }
            None => {
                by_element.insert(el, (w.clone(), p));
            }
        }
    }
    Ok((ws.len(), pairs))
}

fn criterion8() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let mods = audited_modules();
    let mut checks = 0;
    for (k, (name, m)) in mods.iter().enumerate() {
        let a = bracket_audit(m, 200, k as u64);
        checks += a.checks;
        if !a.passed() {
            ok = false;
            notes.push(format!("audit {name}: {:?}", a.failures.iter().take(2).collect::<Vec<_>>()));
        }
    }
    notes.push(format!("bracket audit {} modules, {checks} checks", mods.len()));
    for (t, lam) in [
        ("A1", AffineWeight::new(1, Weight(vec![1]))),
        ("A1", AffineWeight::new(2, Weight(vec![0]))),
        ("A2", AffineWeight::new(1, Weight(vec![0, 1]))),
        ("A2", AffineWeight::new(2, Weight(vec![1, 0]))),
    ] {
        match demazure_hygiene(t, &lam) {
            Ok((n, pairs)) => notes.push(format!("{t} level {}: {n} words, {pairs} word pairs", lam.level)),
            Err(e) => {
                ok = false;
                notes.push(e);
            }
        }
    }
    let a2 = rs("A2");
    let ms: Vec<Arc<CurrentModule>> = [vec![1, 0], vec![0, 1], vec![1, 0]]
        .into_iter()
        .map(|w| irreducible_evaluation_module(&a2, &Weight(w)).unwrap())
        .collect();
    let run = || serde_json::to_string(&check_parameter_independence(&ms, 3, 11).unwrap().characters).unwrap();
    let opts = VerifyOptions::default();
    let report = || serde_json::to_string(&verify(&rs("A1"), Claim::Associativity, &opts).unwrap()).unwrap();
    let same = run() == run() && report() == report();
    ok &= same;
    notes.push(format!("reruns identical {same}"));
    outcome(ok, notes.join("; "))
}

#[test]
fn acceptance() {
    let opts = VerifyOptions::default();
    let results = [
        criterion(1, "sl2 V(w1)*V(w1)", Duration::from_secs(1), criterion1),
        criterion(2, "level-one fusions", Duration::from_secs(120), || {
            run_claim(&["A1", "A2"], Claim::Remark24, &opts)
        }),
        criterion(3, "fusion of general Demazure modules", Duration::from_secs(600), || {
            run_claim(&["A1", "A2"], Claim::CorFusionDemazure, &opts)
        }),
        criterion(4, "parameter independence", Duration::from_secs(600), || {
            run_claim(&["A1", "A2"], Claim::ParamIndependence, &opts)
        }),
        criterion(5, "associativity", Duration::from_secs(600), || run_claim(&["A1", "A2"], Claim::Associativity, &opts)),
        criterion(6, "Q-system", Duration::from_secs(300), criterion6),
        criterion(7, "cluster exchange", Duration::from_secs(300), criterion7),
        criterion(8, "engine hygiene", Duration::from_secs(600), criterion8),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
