//! Explicit finite-dimensional `g[t]`-modules over the rationals:
//! evaluation modules, evaluation twists, tensor products and cyclic
//! submodules.

mod audit;
mod typea;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::charring::GradedCharacter;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootdata::{RootSystem, Weight};
use crate::sparse::{Echelon, SparseMatrix, SparseVec};

pub use audit::{bracket_audit, AuditReport};
pub use typea::{irreducible_evaluation_module, natural_module};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GenKind {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "h")]
    H,
}

/// Chevalley generator `x_node ⊗ t^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub node: usize,
    pub s: u32,
}

impl Generator {
    pub fn new(kind: GenKind, node: usize, s: u32) -> Self {
        Generator { kind, node, s }
    }

    /// All generators of degree `s`.
    pub fn all(rank: usize, s: u32) -> impl Iterator<Item = Generator> {
        [GenKind::E, GenKind::F, GenKind::H]
            .into_iter()
            .flat_map(move |kind| (1..=rank).map(move |node| Generator { kind, node, s }))
    }

    pub fn weight_shift(&self, rs: &RootSystem) -> Weight {
        match self.kind {
            GenKind::E => rs.simple_root(self.node),
            GenKind::F => -&rs.simple_root(self.node),
            GenKind::H => Weight::zero(rs.rank()),
        }
    }
}

/// Key of a homogeneous component: weight and, for graded modules, degree.
pub type Key = (Weight, Option<i64>);

#[derive(Debug)]
enum Source {
    /// Matrices for `s < t_bound`; higher powers of `t` act by zero.
    Table(HashMap<Generator, SparseMatrix>),
    Shifted { base: Arc<CurrentModule>, c: Rational },
    Tensor { factors: Vec<Arc<CurrentModule>> },
    Sub { parent: Arc<CurrentModule>, basis: SubBasis },
}

/// Basis of a homogeneous subspace, with one echelon per key.
#[derive(Debug, Clone, Default)]
pub struct SubBasis {
    rows: Vec<SparseVec>,
    blocks: HashMap<Key, (Echelon, Vec<usize>)>,
    keys: Vec<Key>,
}

impl SubBasis {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Basis vectors in the ambient basis.
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn key(&self, k: usize) -> &Key {
        &self.keys[k]
    }

    /// Inserts a homogeneous vector; returns its index if it enlarged the span.
    fn insert(&mut self, key: Key, v: &SparseVec) -> Option<usize> {
        let (ech, idx) = self.blocks.entry(key.clone()).or_default();
        let local = ech.insert(v)?;
        let global = self.rows.len();
        idx.push(global);
        self.rows.push(ech.row(local).clone());
        self.keys.push(key);
        Some(global)
    }

    fn contains(&self, key: &Key, v: &SparseVec) -> bool {
        v.is_zero() || self.blocks.get(key).is_some_and(|(e, _)| e.contains(v))
    }

    /// Coordinates of a vector of the span, grouped by key.
    fn coordinates(&self, parts: &BTreeMap<Key, SparseVec>) -> Option<SparseVec> {
        let mut out = Vec::new();
        for (key, v) in parts {
            let (ech, idx) = self.blocks.get(key)?;
            for (local, c) in ech.coordinates(v)? {
                out.push((idx[local] as u32, c));
            }
        }
        Some(SparseVec::from_pairs(out))
    }
}

/// Finite-dimensional `g[t]`-module with a homogeneous basis.
#[derive(Debug)]
pub struct CurrentModule {
    pub rs: Arc<RootSystem>,
    weights: Vec<Weight>,
    qdeg: Option<Vec<i64>>,
    cyclic: Option<SparseVec>,
    t_bound: u32,
    factors: usize,
    source: Source,
    cache: Mutex<HashMap<Generator, Arc<SparseMatrix>>>,
}

impl CurrentModule {
    fn build(
        rs: Arc<RootSystem>,
        weights: Vec<Weight>,
        qdeg: Option<Vec<i64>>,
        cyclic: Option<SparseVec>,
        t_bound: u32,
        factors: usize,
        source: Source,
    ) -> Self {
        CurrentModule { rs, weights, qdeg, cyclic, t_bound, factors, source, cache: Mutex::new(HashMap::new()) }
    }

    /// Module given by explicit matrices for the generators with `s < t_bound`.
    pub fn from_table(
        rs: Arc<RootSystem>,
        weights: Vec<Weight>,
        qdeg: Vec<i64>,
        cyclic: Option<SparseVec>,
        t_bound: u32,
        mats: HashMap<Generator, SparseMatrix>,
    ) -> Self {
        Self::build(rs, weights, Some(qdeg), cyclic, t_bound, 1, Source::Table(mats))
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn qdeg(&self) -> Option<&[i64]> {
        self.qdeg.as_deref()
    }

    pub fn is_graded(&self) -> bool {
        self.qdeg.is_some()
    }

    pub fn cyclic_vector(&self) -> Option<&SparseVec> {
        self.cyclic.as_ref()
    }

    pub fn t_bound(&self) -> u32 {
        self.t_bound
    }

    /// Number of tensor factors the module was built from.
    pub fn factor_count(&self) -> usize {
        self.factors
    }

    pub fn key(&self, i: usize) -> Key {
        (self.weights[i].clone(), self.qdeg.as_ref().map(|q| q[i]))
    }

    /// Splits a vector into homogeneous components.
    pub fn split(&self, v: &SparseVec) -> BTreeMap<Key, SparseVec> {
        let mut parts: BTreeMap<Key, Vec<(u32, Rational)>> = BTreeMap::new();
        for (i, c) in v.iter() {
            parts.entry(self.key(*i as usize)).or_default().push((*i, c.clone()));
        }
        parts.into_iter().map(|(k, p)| (k, SparseVec::from_pairs(p))).collect()
    }

    /// Matrix of a generator, memoized.
    pub fn matrix(&self, g: Generator) -> Arc<SparseMatrix> {
        if let Some(m) = self.cache.lock().unwrap().get(&g) {
            return m.clone();
        }
        let m = Arc::new(self.compute_matrix(g));
        self.cache.lock().unwrap().insert(g, m.clone());
        m
    }

    pub fn apply(&self, g: Generator, v: &SparseVec) -> SparseVec {
        self.matrix(g).apply(v)
    }

    fn compute_matrix(&self, g: Generator) -> SparseMatrix {
        let dim = self.dim();
        match &self.source {
            Source::Table(mats) => mats.get(&g).cloned().unwrap_or_else(|| SparseMatrix::zero(dim, dim)),
            Source::Shifted { base, c } => {
                // x t^s -> x (t + c)^s
                let mut out = SparseMatrix::zero(dim, dim);
                let mut binom = Rational::ONE;
                for k in 0..=g.s {
                    if base.acts_by_zero(k) {
                        break;
                    }
                    let coeff = &binom * &c.pow(g.s - k);
                    out.axpy(&coeff, &base.matrix(Generator { s: k, ..g }));
                    binom = &(&binom * &Rational::from_int(i64::from(g.s - k))) / &Rational::from_int(i64::from(k + 1));
                }
                out
            }
            Source::Tensor { factors } => {
                let mats: Vec<_> = factors.iter().map(|f| f.matrix(g)).collect();
                let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
                let cols = (0..dim)
                    .map(|idx| {
                        let digits = decode(idx, &dims);
                        let mut pairs = Vec::new();
                        for (j, m) in mats.iter().enumerate() {
                            for (r, c) in m.column(digits[j]).iter() {
                                let mut d = digits.clone();
                                d[j] = *r as usize;
                                pairs.push((encode(&d, &dims) as u32, c.clone()));
                            }
                        }
                        SparseVec::from_pairs(pairs)
                    })
                    .collect();
                SparseMatrix::from_columns(dim, cols)
            }
            Source::Sub { parent, basis } => {
                let m = parent.matrix(g);
                let cols = basis
                    .rows
                    .iter()
                    .map(|row| {
                        let image = m.apply(row);
                        basis
                            .coordinates(&parent.split(&image))
                            .expect("subspace is stable under the generators")
                    })
                    .collect();
                SparseMatrix::from_columns(dim, cols)
            }
        }
    }

    /// Whether every generator with power `s` is known to act by zero.
    fn acts_by_zero(&self, s: u32) -> bool {
        match &self.source {
            Source::Table(_) => s >= self.t_bound,
            Source::Shifted { .. } => false,
            Source::Tensor { factors } => factors.iter().all(|f| f.acts_by_zero(s)),
            Source::Sub { parent, .. } => parent.acts_by_zero(s),
        }
    }

    /// Graded character; the module must be graded.
    pub fn graded_character(&self) -> Result<GradedCharacter> {
        let q = self.qdeg.as_ref().ok_or_else(|| {
            Error::Domain("module is not graded; use the fusion filtration instead".into())
        })?;
        let mut c = GradedCharacter::new(0);
        for (w, d) in self.weights.iter().zip(q) {
            c.add(*d, w.clone(), 1);
        }
        Ok(c)
    }

    /// Ungraded character.
    pub fn character(&self) -> BTreeMap<Weight, i64> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Replaces the lazy description of a graded module by explicit
    /// matrices. Powers of `t` beyond the spread of degrees act by zero.
    pub fn materialize(&self) -> Result<CurrentModule> {
        let q = self.qdeg.as_ref().ok_or_else(|| Error::Domain("only graded modules can be materialized".into()))?;
        let spread = q.iter().max().zip(q.iter().min()).map_or(0, |(a, b)| a - b);
        let bound = (spread + 1) as u32;
        let mats = (0..bound)
            .flat_map(|s| Generator::all(self.rs.rank(), s))
            .map(|g| (g, (*self.matrix(g)).clone()))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        Ok(Self::build(
            self.rs.clone(),
            self.weights.clone(),
            self.qdeg.clone(),
            self.cyclic.clone(),
            bound,
            self.factors,
            Source::Table(mats),
        ))
    }

    /// JSON dump of all generators with `s < t_bound`.
    pub fn dump(&self) -> serde_json::Value {
        let actions: Vec<_> = (0..self.t_bound)
            .flat_map(|s| Generator::all(self.rs.rank(), s))
            .filter_map(|g| {
                let m = self.matrix(g);
                if m.is_zero() {
                    return None;
                }
                let entries: Vec<_> = m
                    .triples()
                    .map(|(r, c, v)| serde_json::json!([r, c, v.to_string()]))
                    .collect();
                Some(serde_json::json!({"gen": g.kind, "node": g.node, "s": g.s, "entries": entries}))
            })
            .collect();
        serde_json::json!({
            "dim": self.dim(),
            "weights": self.weights,
            "qdeg": self.qdeg,
            "actions": actions,
        })
    }
}

fn decode(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for j in (0..dims.len()).rev() {
        out[j] = idx % dims[j];
        idx /= dims[j];
    }
    out
}

fn encode(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

/// `M(c)`: `x t^s` acts as `x (t + c)^s`. The result is ungraded unless
/// `c = 0`.
pub fn evaluation_shift(m: &Arc<CurrentModule>, c: &Rational) -> CurrentModule {
    let qdeg = if c.is_zero() { m.qdeg.clone() } else { None };
    CurrentModule::build(
        m.rs.clone(),
        m.weights.clone(),
        qdeg,
        m.cyclic.clone(),
        m.t_bound,
        m.factors,
        Source::Shifted { base: m.clone(), c: c.clone() },
    )
}

/// Tensor product with the coproduct action; degrees add when all factors
/// are graded.
pub fn tensor(factors: &[Arc<CurrentModule>]) -> Result<CurrentModule> {
    let first = factors.first().ok_or_else(|| Error::Domain("empty tensor product".into()))?;
    let rs = first.rs.clone();
    if factors.iter().any(|f| f.rs.dynkin != rs.dynkin) {
        return Err(Error::Domain("tensor factors over different root systems".into()));
    }
    let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let dim: usize = dims.iter().product();
    let graded = factors.iter().all(|f| f.is_graded());
    let mut weights = Vec::with_capacity(dim);
    let mut qdeg = graded.then(|| Vec::with_capacity(dim));
    for idx in 0..dim {
        let d = decode(idx, &dims);
        let w = d.iter().enumerate().fold(Weight::zero(rs.rank()), |acc, (j, &i)| &acc + &factors[j].weights[i]);
        weights.push(w);
        if let Some(q) = qdeg.as_mut() {
            q.push(d.iter().enumerate().map(|(j, &i)| factors[j].qdeg.as_ref().unwrap()[i]).sum());
        }
    }
    let cyclic = factors
        .iter()
        .map(|f| f.cyclic.clone())
        .collect::<Option<Vec<_>>>()
        .map(|vs| tensor_vectors(&vs, &dims));
    Ok(CurrentModule::build(
        rs,
        weights,
        qdeg,
        cyclic,
        factors.iter().map(|f| f.t_bound).max().unwrap_or(1),
        factors.iter().map(|f| f.factors).sum(),
        Source::Tensor { factors: factors.to_vec() },
    ))
}

/// `v_1 ⊗ ... ⊗ v_k` in the basis of the tensor product.
pub fn tensor_vectors(vs: &[SparseVec], dims: &[usize]) -> SparseVec {
    let mut acc: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), Rational::ONE)];
    for v in vs {
        acc = acc
            .iter()
            .flat_map(|(d, c)| {
                v.iter().map(move |(i, x)| {
                    let mut d = d.clone();
                    d.push(*i as usize);
                    (d, c * x)
                })
            })
            .collect();
    }
    SparseVec::from_pairs(acc.into_iter().map(|(d, c)| (encode(&d, dims) as u32, c)))
}

/// Default generator-degree schedule `t_bound + factors + 2`.
pub fn default_schedule(m: &CurrentModule) -> u32 {
    m.t_bound + m.factors as u32 + 2
}

/// `U(g[t]) v`, computed by applying `e_i, f_i` and `e_i t, f_i t` (which
/// generate `g[t]`) until the span is stable, then certified with
/// `t^(schedule + 1)`. Returns the submodule (with `v` as cyclic vector) and
/// whether it is everything.
pub fn cyclic_closure(m: &Arc<CurrentModule>, v: &SparseVec, schedule: Option<u32>) -> Result<(CurrentModule, bool)> {
    if v.is_zero() {
        return Err(Error::Domain("cyclic closure of the zero vector".into()));
    }
    let top = schedule.unwrap_or_else(|| default_schedule(m));
    let rank = m.rs.rank();
    let gens: Vec<Generator> = (0..=top.min(1))
        .flat_map(|s| [GenKind::E, GenKind::F].into_iter().flat_map(move |k| (1..=rank).map(move |i| Generator::new(k, i, s))))
        .collect();
    let mut full: HashMap<Key, usize> = HashMap::new();
    for i in 0..m.dim() {
        *full.entry(m.key(i)).or_insert(0) += 1;
    }
    let is_full = |b: &SubBasis, key: &Key| b.blocks.get(key).map_or(0, |x| x.1.len()) == full[key];
    let mut basis = SubBasis::default();
    let mut queue = VecDeque::new();
    for (key, part) in m.split(v) {
        if let Some(k) = basis.insert(key, &part) {
            queue.push_back(k);
        }
    }
    while let Some(k) = queue.pop_front() {
        if basis.len() == m.dim() {
            break;
        }
        let row = basis.rows[k].clone();
        for g in &gens {
            for (key, part) in m.split(&m.apply(*g, &row)) {
                if is_full(&basis, &key) {
                    continue;
                }
                if let Some(new) = basis.insert(key, &part) {
                    queue.push_back(new);
                }
            }
        }
    }
    if basis.len() < m.dim() {
        let cert: Vec<Generator> = Generator::all(m.rs.rank(), top + 1).collect();
        for row in basis.rows.clone() {
            for g in &cert {
                for (key, part) in m.split(&m.apply(*g, &row)) {
                    if !is_full(&basis, &key) && !basis.contains(&key, &part) {
                        return Err(Error::NonClosure { dim: basis.len() });
                    }
                }
            }
        }
    }
    Ok(submodule(m, basis, Some(v)))
}

/// Submodule spanned by a stable homogeneous basis.
pub fn submodule(m: &Arc<CurrentModule>, basis: SubBasis, cyclic: Option<&SparseVec>) -> (CurrentModule, bool) {
    let is_all = basis.len() == m.dim();
    let weights = basis.keys.iter().map(|k| k.0.clone()).collect();
    let qdeg = m.qdeg.as_ref().map(|_| basis.keys.iter().map(|k| k.1.unwrap()).collect());
    let cyclic = cyclic.and_then(|v| basis.coordinates(&m.split(v)));
    let sub = CurrentModule::build(
        m.rs.clone(),
        weights,
        qdeg,
        cyclic,
        m.t_bound,
        m.factors,
        Source::Sub { parent: m.clone(), basis },
    );
    (sub, is_all)
}
