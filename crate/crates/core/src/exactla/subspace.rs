use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::{axpy, SparseMatrix, SparseVec};
use crate::Q;

/// Row space in canonical reduced row-echelon form. Two subspaces are equal
/// iff their stored matrices are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(super) fn from_rref_rows(ambient: usize, rows: Vec<SparseVec>) -> Self {
        let pivots = rows.iter().map(|r| r[0].0).collect();
        Subspace { ambient, rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, rows: (0..ambient).map(|i| vec![(i, Q::one())]).collect(), pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.ambient, self.rows.clone()).expect("rows fit ambient")
    }

    /// Coordinates of `v` in the canonical basis, `None` when `v ∉ self`.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self
            .pivots
            .iter()
            .map(|p| match v.binary_search_by_key(p, |(c, _)| *c) {
                Ok(i) => v[i].1.clone(),
                Err(_) => Q::zero(),
            })
            .collect();
        let mut rest = v.clone();
        for (row, c) in self.rows.iter().zip(&coords) {
            if !c.is_zero() {
                rest = axpy(&rest, &-c, row);
            }
        }
        rest.is_empty().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }
}

/// Incrementally grown echelon basis, used by the closure sweeps. Rows are
/// kept with unit pivots; the canonical form is produced on demand.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder { ambient, rows: BTreeMap::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; returns the residue (empty iff
    /// `v` lies in the span).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut rest = v.clone();
        let mut from = 0usize;
        loop {
            let next = rest.iter().find(|(c, _)| *c >= from && self.rows.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            match next {
                Some((c, x)) => {
                    rest = axpy(&rest, &-x, &self.rows[&c]);
                    from = c + 1;
                }
                None => return rest,
            }
        }
    }

    /// Adds `v` to the span; returns the new (unit-pivot) row if the
    /// dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let rest = self.reduce(v);
        let (lead, x) = rest.first()?.clone();
        let inv = x.recip();
        let row: SparseVec = rest.into_iter().map(|(c, y)| (c, y * &inv)).collect();
        self.rows.insert(lead, row.clone());
        Some(row)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn to_subspace(&self) -> Subspace {
        super::rref(
            &SparseMatrix::from_rows(self.ambient, self.rows.values().cloned().collect()).expect("rows fit ambient"),
        )
        .0
    }
}
