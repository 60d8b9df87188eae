//! Feigin–Loktev fusion products: the degree filtration of a tensor product
//! of evaluation-twisted cyclic modules, its associated graded module,
//! explicit Demazure modules and the cyclic-submodule oracle for
//! generalized Demazure modules.

mod checks;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::charring::{affine_demazure_character, DeltaCap, FiniteCharacter, GradedCharacter};
use crate::currentmod::{
    cyclic_closure, default_schedule, evaluation_shift, irreducible_evaluation_module, tensor, CurrentModule,
    GenKind, Generator,
};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootdata::{Coweight, DynkinType, RootSystem, Weight};
use crate::sparse::{Echelon, SparseMatrix, SparseVec};

pub use checks::{
    check_associativity, check_parameter_independence, generalized_demazure_oracle, random_points,
    AssociativityReport, IndependenceReport,
};

/// Dimensions and layer characters of `F_{<=0} ⊆ F_{<=1} ⊆ ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionFiltration {
    pub stages: Vec<usize>,
    #[serde(serialize_with = "layers_as_pairs")]
    pub layer_characters: Vec<FiniteCharacter>,
    pub top_degree: usize,
}

fn layers_as_pairs<S: serde::Serializer>(layers: &[FiniteCharacter], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(layers.len()))?;
    for l in layers {
        seq.serialize_element(&l.iter().collect::<Vec<_>>())?;
    }
    seq.end()
}

/// Basis of the filtered space; rows are inserted in order of their layer,
/// so `F_{<=n}` is spanned by a prefix.
#[derive(Debug, Default)]
struct LayeredBasis {
    rows: Vec<SparseVec>,
    layer: Vec<usize>,
    weight: Vec<Weight>,
    blocks: HashMap<Weight, (Echelon, Vec<usize>)>,
    /// weight space dimensions of the ambient module
    full: HashMap<Weight, usize>,
}

impl LayeredBasis {
    fn new(ambient: &CurrentModule) -> Self {
        let mut full = HashMap::new();
        for w in ambient.weights() {
            *full.entry(w.clone()).or_insert(0) += 1;
        }
        LayeredBasis { full, ..Default::default() }
    }

    fn is_full(&self, wt: &Weight) -> bool {
        self.blocks.get(wt).map_or(0, |b| b.1.len()) == self.full.get(wt).copied().unwrap_or(0)
    }

    /// Whether the rows of layer at most `layer` span the whole weight space.
    fn prefix_full(&self, wt: &Weight, layer: usize) -> bool {
        let Some((_, idx)) = self.blocks.get(wt) else { return false };
        let below = idx.partition_point(|&g| self.layer[g] <= layer);
        below == self.full.get(wt).copied().unwrap_or(0)
    }

    fn insert(&mut self, wt: Weight, v: &SparseVec, layer: usize) -> Option<usize> {
        if self.is_full(&wt) {
            return None;
        }
        let (ech, idx) = self.blocks.entry(wt.clone()).or_default();
        let local = ech.insert(v)?;
        let global = self.rows.len();
        idx.push(global);
        self.rows.push(ech.row(local).clone());
        self.layer.push(layer);
        self.weight.push(wt);
        Some(global)
    }

    /// Coordinates in the rows, or `None` when outside the span.
    fn coordinates(&self, m: &CurrentModule, v: &SparseVec) -> Option<Vec<(usize, Rational)>> {
        let mut out = Vec::new();
        for ((wt, _), part) in m.split(v) {
            let (ech, idx) = self.blocks.get(&wt)?;
            out.extend(ech.coordinates(&part)?.into_iter().map(|(l, c)| (idx[l], c)));
        }
        Some(out)
    }
}

/// Result of a fusion computation.
#[derive(Debug)]
pub struct Fusion {
    pub character: GradedCharacter,
    pub filtration: FusionFiltration,
    ambient: Arc<CurrentModule>,
    basis: LayeredBasis,
    cyclic: SparseVec,
}

fn check_input(ms: &[Arc<CurrentModule>], cs: &[Rational]) -> Result<()> {
    if ms.is_empty() || ms.len() != cs.len() {
        return Err(Error::Domain("fusion needs one evaluation point per module".into()));
    }
    for (i, a) in cs.iter().enumerate() {
        if cs[..i].contains(a) {
            return Err(Error::Domain(format!("repeated evaluation point {a}")));
        }
    }
    for m in ms {
        if !m.is_graded() || m.cyclic_vector().is_none() {
            return Err(Error::Domain("fusion factors must be graded cyclic modules".into()));
        }
    }
    Ok(())
}

/// `M_1 * ... * M_k` at the points `cs`.
pub fn fusion_product(ms: &[Arc<CurrentModule>], cs: &[Rational]) -> Result<Fusion> {
    check_input(ms, cs)?;
    let shifted: Vec<Arc<CurrentModule>> = ms.iter().zip(cs).map(|(m, c)| Arc::new(evaluation_shift(m, c))).collect();
    let t = Arc::new(tensor(&shifted)?);
    let cyclic = t.cyclic_vector().cloned().expect("checked above");
    let rank = t.rs.rank();
    let cap = default_schedule(&t);
    let dim = t.dim();
    let raise = |s: u32| [GenKind::E, GenKind::F].into_iter().flat_map(move |k| (1..=rank).map(move |i| Generator::new(k, i, s)));

    // g[t] is generated by g and the simple root vectors times t, so layer n
    // is the g-closure of (e_i t, f_i t) applied to layer n - 1
    let mut basis = LayeredBasis::new(&t);
    let mut stages = Vec::new();
    let mut n = 0usize;
    loop {
        let mut queue: Vec<usize> = Vec::new();
        let offer = |basis: &mut LayeredBasis, queue: &mut Vec<usize>, v: &SparseVec| {
            for ((wt, _), part) in t.split(v) {
                if let Some(k) = basis.insert(wt, &part, n) {
                    queue.push(k);
                }
            }
        };
        if n == 0 {
            offer(&mut basis, &mut queue, &cyclic);
        } else {
            let start = stages.len().checked_sub(2).map_or(0, |k| stages[k]);
            for r in start..stages[n - 1] {
                for g in raise(1) {
                    let img = t.apply(g, &basis.rows[r]);
                    offer(&mut basis, &mut queue, &img);
                }
            }
        }
        // close the new layer under degree-zero generators: U(g) = U(n-) U(h) U(n+)
        // and the rows are weight vectors, so raise first, then lower
        let fresh = basis.rows.len() - queue.len();
        while let Some(r) = queue.pop() {
            for i in 1..=rank {
                let img = t.apply(Generator::new(GenKind::E, i, 0), &basis.rows[r]);
                offer(&mut basis, &mut queue, &img);
            }
        }
        queue.extend(fresh..basis.rows.len());
        while let Some(r) = queue.pop() {
            for i in 1..=rank {
                let img = t.apply(Generator::new(GenKind::F, i, 0), &basis.rows[r]);
                offer(&mut basis, &mut queue, &img);
            }
        }
        let grew = stages.last().map_or(true, |&d| basis.rows.len() > d);
        stages.push(basis.rows.len());
        if basis.rows.len() == dim {
            break;
        }
        if !grew {
            return Err(Error::NotCyclic { achieved: basis.rows.len(), expected: dim });
        }
        n += 1;
    }

    // a higher power of t must not create anything in too low a layer
    let extra = cap + 1;
    for r in 0..basis.rows.len() {
        let bound = basis.layer[r] + extra as usize;
        if bound >= n {
            continue;
        }
        for g in raise(extra) {
            let img = t.apply(g, &basis.rows[r]);
            for ((wt, _), part) in t.split(&img) {
                if basis.prefix_full(&wt, bound) {
                    continue;
                }
                let (ech, idx) = &basis.blocks[&wt];
                let coords = ech.coordinates(&part).expect("the filtration exhausts the space");
                if coords.iter().any(|(k, _)| basis.layer[idx[*k]] > bound) {
                    return Err(Error::NonClosure { dim: stages[basis.layer[r].min(stages.len() - 1)] });
                }
            }
        }
    }

    let top = n;
    let mut layer_characters = vec![FiniteCharacter::new(); top + 1];
    let mut character = GradedCharacter::new(0);
    for (wt, l) in basis.weight.iter().zip(&basis.layer) {
        *layer_characters[*l].entry(wt.clone()).or_insert(0) += 1;
        character.add(*l as i64, wt.clone(), 1);
    }
    Ok(Fusion {
        character,
        filtration: FusionFiltration { stages, layer_characters, top_degree: top },
        ambient: t,
        basis,
        cyclic,
    })
}

impl Fusion {
    /// The associated graded module with its induced `g[t]`-action.
    pub fn graded_module(&self) -> Result<CurrentModule> {
        let t = &self.ambient;
        let rank = t.rs.rank();
        let top = self.filtration.top_degree as u32;
        let dim = self.basis.rows.len();
        let mut mats: HashMap<Generator, SparseMatrix> = HashMap::new();
        for s in 0..=top.min(1) {
            for kind in [GenKind::E, GenKind::F] {
                for i in 1..=rank {
                    let g = Generator::new(kind, i, s);
                    let mut cols = Vec::with_capacity(dim);
                    for (r, row) in self.basis.rows.iter().enumerate() {
                        let target = self.basis.layer[r] + s as usize;
                        let coords = self
                            .basis
                            .coordinates(t, &t.apply(g, row))
                            .ok_or_else(|| Error::Internal("generator leaves the tensor product".into()))?;
                        if coords.iter().any(|(k, _)| self.basis.layer[*k] > target) {
                            return Err(Error::Internal(format!("{g:?} does not respect the filtration")));
                        }
                        cols.push(SparseVec::from_pairs(
                            coords.into_iter().filter(|(k, _)| self.basis.layer[*k] == target).map(|(k, c)| (k as u32, c)),
                        ));
                    }
                    mats.insert(g, SparseMatrix::from_columns(dim, cols));
                }
            }
        }
        for i in 1..=rank {
            let alpha = t.rs.simple_coroot(i);
            let cols = self
                .basis
                .weight
                .iter()
                .enumerate()
                .map(|(r, wt)| SparseVec::from_pairs([(r as u32, t.rs.pair(wt, &alpha))]))
                .collect();
            mats.insert(Generator::new(GenKind::H, i, 0), SparseMatrix::from_columns(dim, cols));
            if top >= 1 {
                let h1 = mats[&Generator::new(GenKind::E, i, 0)].commutator(&mats[&Generator::new(GenKind::F, i, 1)]);
                mats.insert(Generator::new(GenKind::H, i, 1), h1);
            }
        }
        // higher powers of t from brackets with the degree-one generators
        let half = Rational::new(1, 2);
        for s in 2..=top {
            for i in 1..=rank {
                let get = |k: GenKind, s: u32| &mats[&Generator::new(k, i, s)];
                let h1 = get(GenKind::H, 1);
                let e = h1.commutator(get(GenKind::E, s - 1)).scale(&half);
                let f = h1.commutator(get(GenKind::F, s - 1)).scale(&-&half);
                let h = get(GenKind::E, 1).commutator(get(GenKind::F, s - 1));
                mats.insert(Generator::new(GenKind::E, i, s), e);
                mats.insert(Generator::new(GenKind::F, i, s), f);
                mats.insert(Generator::new(GenKind::H, i, s), h);
            }
        }
        mats.retain(|_, m| !m.is_zero());
        let cyc = self
            .basis
            .coordinates(t, &self.cyclic)
            .map(|c| SparseVec::from_pairs(c.into_iter().map(|(k, x)| (k as u32, x))))
            .ok_or_else(|| Error::Internal("cyclic vector outside the span".into()))?;
        Ok(CurrentModule::from_table(
            t.rs.clone(),
            self.basis.weight.clone(),
            self.basis.layer.iter().map(|&l| l as i64).collect(),
            Some(cyc),
            top + 1,
            mats,
        ))
    }
}

/// Evaluation points `0, 1, ..., k-1`.
pub fn default_points(k: usize) -> Vec<Rational> {
    (0..k as i64).map(Rational::from_int).collect()
}

/// Fundamental units of a dominant coweight, `[1, 1, 2, ...]` for
/// `2 w1 + w2`.
pub fn fundamental_units(lambda: &Coweight) -> Vec<usize> {
    lambda.0.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(i + 1).take(a.max(0) as usize)).collect()
}

/// `D(level, level * lambda)` in type A, built as the fusion of the
/// evaluation modules `V(level * w_i)` over the fundamental units of
/// `lambda`, and checked against the Demazure character.
pub fn demazure_module_explicit(rs: &Arc<RootSystem>, level: i64, lambda: &Coweight) -> Result<Arc<CurrentModule>> {
    type Cache = Mutex<HashMap<(DynkinType, i64, Coweight), Arc<CurrentModule>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let n = rs.rank();
    if level < 0 || !lambda.is_dominant() || lambda.0.len() != n {
        return Err(Error::Domain(format!("D({level}, {level}*({lambda})) needs level >= 0 and a dominant coweight")));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (rs.dynkin, level, lambda.clone());
    if let Some(m) = cache.lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let units = if level == 0 { Vec::new() } else { fundamental_units(lambda) };
    let module = match units.len() {
        0 => irreducible_evaluation_module(rs, &Weight::zero(n))?,
        1 => irreducible_evaluation_module(rs, &Weight::fundamental(n, units[0]).scale(level))?,
        k => {
            let factors = units
                .iter()
                .map(|&i| irreducible_evaluation_module(rs, &Weight::fundamental(n, i).scale(level)))
                .collect::<Result<Vec<_>>>()?;
            Arc::new(fusion_product(&factors, &default_points(k))?.graded_module()?)
        }
    };
    let mu = if level == 0 { Weight::zero(n) } else { rs.coweight_embed(lambda).scale(level) };
    let expected = affine_demazure_character(rs, level, &mu, DeltaCap::Auto)?;
    if !module.graded_character()?.same_terms(&expected) {
        return Err(Error::Internal(format!(
            "explicit D({level}, {mu}) disagrees with its Demazure character"
        )));
    }
    cache.lock().unwrap().insert(key, module.clone());
    Ok(module)
}

/// `U(g[t])` applied to the tensor of cyclic vectors inside the graded
/// tensor product (no evaluation twist).
pub fn cyclic_tensor_character(ms: &[Arc<CurrentModule>]) -> Result<GradedCharacter> {
    let t = Arc::new(tensor(ms)?);
    let v = t.cyclic_vector().cloned().ok_or_else(|| Error::Domain("factors need cyclic vectors".into()))?;
    let (sub, _) = cyclic_closure(&t, &v, None)?;
    sub.graded_character()
}

#[cfg(test)]
mod tests;
