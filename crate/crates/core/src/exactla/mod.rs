//! Exact sparse linear algebra over ℚ.
//!
//! Everything here is exact; there is no floating point anywhere in this
//! module. Elimination runs fraction-free on primitive integer rows and only
//! divides by the pivots in a final normalization pass, so a [`Subspace`] is
//! always stored in canonical reduced row-echelon form.

mod elim;
mod matrix;
mod subspace;

pub use matrix::{SparseMatrix, SparseVec};
pub use subspace::{EchelonBuilder, Subspace};

use crate::{Error, Result};

/// Canonical reduced row-echelon form of the row space of `m`, and its rank.
pub fn rref(m: &SparseMatrix) -> (Subspace, usize) {
    let rows = elim::rref_rows(m.ncols(), m.rows().iter().cloned());
    let s = Subspace::from_rref_rows(m.ncols(), rows);
    let rank = s.dim();
    (s, rank)
}

/// Right null space `{v : m·v = 0}` in canonical form.
pub fn kernel(m: &SparseMatrix) -> Subspace {
    let (r, _) = rref(m);
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &p in r.pivots() {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v: SparseVec = Vec::new();
        for (row, &p) in r.basis().iter().zip(r.pivots()) {
            if let Ok(i) = row.binary_search_by_key(&f, |(c, _)| *c) {
                v.push((p, -row[i].1.clone()));
            }
        }
        v.push((f, crate::q(1)));
        v.sort_by_key(|(c, _)| *c);
        out.push(v);
    }
    let rows = elim::rref_rows(n, out.into_iter());
    Subspace::from_rref_rows(n, rows)
}

/// Coordinates of `v` with respect to the canonical basis of `b`, or `None`
/// if `v` is not in `b`.
pub fn membership(b: &Subspace, v: &SparseVec, ambient: usize) -> Result<Option<Vec<crate::Q>>> {
    if ambient != b.ambient() {
        return Err(Error::DimensionMismatch { expected: b.ambient(), found: ambient });
    }
    Ok(b.coordinates(v))
}

/// Canonical intersection of two subspaces of the same ambient space.
pub fn intersect(b1: &Subspace, b2: &Subspace) -> Result<Subspace> {
    check_ambient(b1, b2)?;
    let n = b1.ambient();
    // Zassenhaus: rows (u | u) and (w | 0); rows with vanishing left half
    // span the intersection in their right half.
    let mut rows: Vec<SparseVec> = Vec::with_capacity(b1.dim() + b2.dim());
    for u in b1.basis() {
        let mut r = u.clone();
        r.extend(u.iter().map(|(c, x)| (c + n, x.clone())));
        rows.push(r);
    }
    rows.extend(b2.basis().iter().cloned());
    let reduced = elim::rref_rows(2 * n, rows.into_iter());
    let inter: Vec<SparseVec> = reduced
        .into_iter()
        .filter(|r| r.first().is_some_and(|(c, _)| *c >= n))
        .map(|r| r.into_iter().map(|(c, x)| (c - n, x)).collect())
        .collect();
    let rows = elim::rref_rows(n, inter.into_iter());
    Ok(Subspace::from_rref_rows(n, rows))
}

/// Canonical sum of two subspaces of the same ambient space.
pub fn sum(b1: &Subspace, b2: &Subspace) -> Result<Subspace> {
    check_ambient(b1, b2)?;
    let rows = elim::rref_rows(b1.ambient(), b1.basis().iter().chain(b2.basis()).cloned());
    Ok(Subspace::from_rref_rows(b1.ambient(), rows))
}

/// Radical of a square Gram matrix `g`, i.e. `{v : g·v = 0}`.
pub fn radical(g: &SparseMatrix) -> Result<Subspace> {
    if g.nrows() != g.ncols() {
        return Err(Error::DimensionMismatch { expected: g.nrows(), found: g.ncols() });
    }
    Ok(kernel(g))
}

fn check_ambient(b1: &Subspace, b2: &Subspace) -> Result<()> {
    if b1.ambient() != b2.ambient() {
        return Err(Error::DimensionMismatch { expected: b1.ambient(), found: b2.ambient() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, Q};

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let d: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        SparseMatrix::from_dense(&d)
    }

    #[test]
    fn identity_has_full_rank() {
        let (s, rank) = rref(&SparseMatrix::identity(3));
        assert_eq!(rank, 3);
        assert_eq!(s, Subspace::full(3));
    }

    #[test]
    fn dependent_rows_collapse() {
        let (s, rank) = rref(&dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(rank, 1);
        assert_eq!(s.basis()[0], vec![(0, q(1)), (1, q(2))]);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let k = kernel(&dense(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        // canonical form of span{(1,-1)}
        assert_eq!(k.basis()[0], vec![(0, q(1)), (1, q(-1))]);
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = kernel(&SparseMatrix::zeros(4, 4));
        assert_eq!(k, Subspace::full(4));
    }

    #[test]
    fn membership_rejects_outside_vector() {
        let (s, _) = rref(&dense(&[&[1, 0, 0], &[0, 1, 0]]));
        assert!(membership(&s, &vec![(2, q(1))], 3).unwrap().is_none());
        let c = membership(&s, &vec![(0, q(3)), (1, q(-2))], 3).unwrap().unwrap();
        assert_eq!(c, vec![q(3), q(-2)]);
        assert!(membership(&s, &vec![], 4).is_err());
    }

    #[test]
    fn intersect_and_sum_of_coordinate_planes() {
        let (a, _) = rref(&dense(&[&[1, 0, 0], &[0, 1, 0]]));
        let (b, _) = rref(&dense(&[&[0, 0, 1]]));
        assert_eq!(intersect(&a, &b).unwrap().dim(), 0);
        assert_eq!(sum(&a, &b).unwrap(), Subspace::full(3));
        assert_eq!(intersect(&a, &a).unwrap(), a);
    }

    #[test]
    fn radical_of_block_diagonal() {
        // diag(G1, G2) with G1 degenerate and G2 zero
        let g = dense(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        let r = radical(&g).unwrap();
        let r1 = radical(&dense(&[&[1, 1], &[1, 1]])).unwrap();
        let expected: Vec<SparseVec> = r1.basis().iter().cloned().chain([vec![(2, q(1))], vec![(3, q(1))]]).collect();
        let (e, _) = rref(&SparseMatrix::from_rows(4, expected).unwrap());
        assert_eq!(r, e);
        assert!(radical(&SparseMatrix::zeros(2, 3)).is_err());
    }
}
