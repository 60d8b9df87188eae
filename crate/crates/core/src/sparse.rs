//! Sparse exact vectors, column-stored matrices and an incremental echelon
//! basis.

use crate::rational::Rational;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(u32, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: u32) -> Self {
        SparseVec { entries: vec![(index, Rational::ONE)] }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut raw: Vec<(u32, Rational)> = pairs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        raw.sort_unstable_by_key(|(i, _)| *i);
        let mut entries: Vec<(u32, Rational)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &v,
                _ => {
                    if entries.last().is_some_and(|(_, acc)| acc.is_zero()) {
                        entries.pop();
                    }
                    entries.push((i, v));
                }
            }
        }
        if entries.last().is_some_and(|(_, acc)| acc.is_zero()) {
            entries.pop();
        }
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u32, Rational)> {
        self.entries.iter()
    }

    pub fn get(&self, index: u32) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn first(&self) -> Option<&(u32, Rational)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Rational, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (xs, ys) = (&self.entries, &other.entries);
        while a < xs.len() || b < ys.len() {
            if b == ys.len() || (a < xs.len() && xs[a].0 < ys[b].0) {
                out.push(xs[a].clone());
                a += 1;
            } else if a == xs.len() || ys[b].0 < xs[a].0 {
                out.push((ys[b].0, c * &ys[b].1));
                b += 1;
            } else {
                let v = xs[a].1.add_mul(c, &ys[b].1);
                if !v.is_zero() {
                    out.push((xs[a].0, v));
                }
                a += 1;
                b += 1;
            }
        }
        self.entries = out;
    }
}

/// Matrix stored by columns; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        SparseMatrix { rows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        if let [(j, c)] = v.entries.as_slice() {
            return self.cols[*j as usize].scale(c);
        }
        SparseVec::from_pairs(
            v.iter().flat_map(|(j, c)| self.cols[*j as usize].iter().map(move |(i, x)| (*i, c * x))),
        )
    }

    /// `self * other`
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|col| col.scale(c)).collect() }
    }

    /// `[self, other]`
    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = self.compose(other);
        out.axpy(&-Rational::ONE, &other.compose(self));
        out
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Rational, other: &SparseMatrix) {
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            a.axpy(c, b);
        }
    }

    /// `(row, col, value)` triples in column-major order.
    pub fn triples(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j as u32, v)))
    }
}

/// Incrementally built basis of a subspace.
///
/// Rows are kept in insertion order. Each row has its pivot (first nonzero
/// index) normalized to one and vanishes at the pivots of all earlier rows. The rows inserted first therefore
/// span a subspace of their own, which is what a filtration needs;
/// coordinates are read off by eliminating in insertion order.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: Vec<u32>,
    /// row owning each pivot column, `usize::MAX` if none
    pivot_row: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, k: usize) -> &SparseVec {
        &self.rows[k]
    }

    /// Eliminates `v` against all rows; returns the residual and the
    /// coefficients `c` with `v = residual + sum c_k row_k`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Rational)>) {
        let mut r = v.clone();
        let mut coords = Vec::new();
        // rows may only touch pivots of later rows, so a single pass in
        // insertion order suffices
        let mut k = 0;
        while k < self.rows.len() && !r.is_zero() {
            let next = r
                .iter()
                .filter_map(|(i, _)| self.pivot_row.get(*i as usize).copied())
                .filter(|&row| row >= k && row != usize::MAX)
                .min();
            let Some(row) = next else { break };
            let c = r.get(self.pivots[row]).cloned().unwrap_or(Rational::ZERO);
            if !c.is_zero() {
                r.axpy(&(-&c), &self.rows[row]);
                coords.push((row, c));
            }
            k = row + 1;
        }
        (r, coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Adds `v` if it is not already in the span; returns the new row index.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let (r, _) = self.reduce(v);
        let (p, lead) = r.first().cloned()?;
        let row = r.scale(&lead.recip());
        self.pivots.push(p);
        if self.pivot_row.len() <= p as usize {
            self.pivot_row.resize(p as usize + 1, usize::MAX);
        }
        self.pivot_row[p as usize] = self.rows.len();
        self.rows.push(row);
        Some(self.rows.len() - 1)
    }

    /// Coordinates of a vector known to lie in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<(usize, Rational)>> {
        let (r, c) = self.reduce(v);
        r.is_zero().then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(u32, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, x)| (i, Rational::from_int(x))))
    }

    #[test]
    fn axpy_cancels() {
        let mut a = v(&[(0, 1), (2, 3)]);
        a.axpy(&Rational::from_int(-1), &v(&[(0, 1), (1, 4)]));
        assert_eq!(a, v(&[(1, -4), (2, 3)]));
    }

    #[test]
    fn echelon_rank_and_coordinates() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(1, 2), (2, 2)])).is_some());
        assert!(e.insert(&v(&[(0, 1), (1, 1)])).is_some());
        assert!(e.insert(&v(&[(0, 1), (1, 3), (2, 2)])).is_none());
        let target = v(&[(0, 3), (1, 7), (2, 4)]);
        let coords = e.coordinates(&target).unwrap();
        let mut rebuilt = SparseVec::new();
        for (k, c) in &coords {
            rebuilt.axpy(c, e.row(*k));
        }
        assert_eq!(rebuilt, target);
        assert!(e.coordinates(&v(&[(3, 1)])).is_none());
    }

    #[test]
    fn earlier_rows_span_prefix() {
        let mut e = Echelon::new();
        e.insert(&v(&[(3, 1), (5, 1)]));
        e.insert(&v(&[(3, 1)]));
        // the first row must still be the first inserted vector up to scale
        assert_eq!(e.row(0), &v(&[(3, 1), (5, 1)]));
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn duplicates_cancel_in_from_pairs() {
        let x = SparseVec::from_pairs([(3, r(1, 2)), (1, r(1, 1)), (3, r(-1, 2)), (5, r(2, 1)), (1, r(0, 1))]);
        assert_eq!(x, v(&[(1, 1), (5, 2)]));
    }

    #[test]
    fn fractional_coordinates_rebuild_the_target() {
        let mut e = Echelon::new();
        let rows = [
            SparseVec::from_pairs([(0, r(1, 2)), (1, r(1, 3)), (3, r(5, 7))]),
            SparseVec::from_pairs([(0, r(3, 4)), (2, r(-1, 6))]),
            SparseVec::from_pairs([(1, r(2, 5)), (2, r(1, 1)), (3, r(-3, 2))]),
        ];
        for x in &rows {
            assert!(e.insert(x).is_some());
        }
        let mut target = SparseVec::new();
        for (x, c) in rows.iter().zip([r(7, 3), r(-2, 5), r(11, 4)]) {
            target.axpy(&c, x);
        }
        assert!(e.insert(&target).is_none());
        let coords = e.coordinates(&target).unwrap();
        let mut rebuilt = SparseVec::new();
        for (k, c) in &coords {
            rebuilt.axpy(c, e.row(*k));
        }
        assert_eq!(rebuilt, target);
        let (res, cs) = e.reduce(&SparseVec::from_pairs([(3, r(1, 3)), (4, r(1, 1))]));
        let mut back = res.clone();
        for (k, c) in &cs {
            back.axpy(c, e.row(*k));
        }
        assert_eq!(back, SparseVec::from_pairs([(3, r(1, 3)), (4, r(1, 1))]));
        assert!(!res.is_zero());
    }
}
