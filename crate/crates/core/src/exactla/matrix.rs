use num_traits::Zero;

use crate::{Error, Result, Q};

/// Sparse vector: `(column, value)` pairs with strictly increasing columns
/// and no stored zeros.
pub type SparseVec = Vec<(usize, Q)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, ncols: n, rows: (0..n).map(|i| vec![(i, crate::q(1))]).collect() }
    }

    /// Builds a matrix from rows, normalizing each one (sorting, merging
    /// duplicate columns, dropping zeros).
    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if let Some((c, _)) = r.iter().find(|(c, _)| *c >= ncols) {
                return Err(Error::DimensionMismatch { expected: ncols, found: c + 1 });
            }
            out.push(normalize(r));
        }
        Ok(SparseMatrix { nrows: out.len(), ncols, rows: out })
    }

    pub fn from_dense(d: &[Vec<Q>]) -> Self {
        let ncols = d.first().map_or(0, |r| r.len());
        let rows = d
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect())
            .collect();
        SparseMatrix { nrows: d.len(), ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn push_row(&mut self, r: SparseVec) {
        debug_assert!(r.iter().all(|(c, _)| *c < self.ncols));
        self.rows.push(normalize(r));
        self.nrows += 1;
    }

    /// Appends the rows of `other` below `self`.
    pub fn vstack(&mut self, other: SparseMatrix) -> Result<()> {
        if other.ncols != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: other.ncols });
        }
        self.nrows += other.nrows;
        self.rows.extend(other.rows);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => self.rows[i][p].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for (c, x) in r {
                d[i][*c] = x.clone();
            }
        }
        d
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let s = dot(r, v);
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (c, x) in r {
                cols[*c].push((i, x.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows: cols }
    }
}

pub(crate) fn dot(a: &SparseVec, b: &SparseVec) -> Q {
    let (mut i, mut j) = (0, 0);
    let mut s = Q::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

/// `a + factor·b` for sparse vectors.
pub(crate) fn axpy(a: &SparseVec, factor: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let x = &a[i].1 + factor * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(mut r: SparseVec) -> SparseVec {
    r.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec = Vec::with_capacity(r.len());
    for (c, x) in r {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx += x,
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}
