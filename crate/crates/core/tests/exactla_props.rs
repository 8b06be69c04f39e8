use num_bigint::BigInt;
use num_traits::{One, Zero};
use paraferm::exactla::{intersect, kernel, membership, radical, rref, sum, SparseMatrix, SparseVec};
use paraferm::Q;
use proptest::prelude::*;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Textbook Gaussian elimination on a dense copy.
fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn sparse(rows: &[Vec<i64>], ncols: usize) -> SparseMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, q(x))).collect::<SparseVec>())
        .collect();
    SparseMatrix::from_rows(ncols, rows).unwrap()
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        // mostly zeros, with small entries
        let entry = prop_oneof![4 => Just(0i64), 3 => -3i64..=3];
        (prop::collection::vec(prop::collection::vec(entry, c), r), Just(c))
    })
}

fn dot(a: &SparseVec, b: &SparseVec) -> Q {
    let mut s = Q::zero();
    for (i, x) in a {
        for (j, y) in b {
            if i == j {
                s += x * y;
            }
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_matches_dense_oracle((rows, c) in matrix(7, 7)) {
        let m = sparse(&rows, c);
        let (space, rank) = rref(&m);
        prop_assert_eq!(rank, dense_rank(&rows));
        prop_assert_eq!(space.dim(), rank);
        let ker = kernel(&m);
        prop_assert_eq!(ker.dim() + rank, c);
        for v in ker.basis() {
            prop_assert!(m.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn intersection_dimension_identity((a, c) in matrix(5, 6), seed in prop::collection::vec(-2i64..=2, 30)) {
        let u = rref(&sparse(&a, c)).0;
        let b: Vec<Vec<i64>> = seed.chunks(c).take(4).filter(|r| r.len() == c).map(|r| r.to_vec()).collect();
        prop_assume!(!b.is_empty());
        let v = rref(&sparse(&b, c)).0;
        let cap = intersect(&u, &v).unwrap();
        let cup = sum(&u, &v).unwrap();
        prop_assert_eq!(cap.dim() + cup.dim(), u.dim() + v.dim());
        prop_assert!(cap.is_subspace_of(&u) && cap.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&cup) && v.is_subspace_of(&cup));
        let stacked: Vec<Vec<i64>> = a.iter().chain(&b).cloned().collect();
        prop_assert_eq!(cup.dim(), dense_rank(&stacked));
    }

    #[test]
    fn membership_recovers_combinations((rows, c) in matrix(5, 6), coeffs in prop::collection::vec(-3i64..=3, 5)) {
        let (space, _) = rref(&sparse(&rows, c));
        let mut v: Vec<Q> = vec![Q::zero(); c];
        for (r, k) in rows.iter().zip(&coeffs) {
            for (x, y) in v.iter_mut().zip(r) {
                *x += q(k * y);
            }
        }
        let sv: SparseVec = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        let coords = membership(&space, &sv, c).unwrap().expect("a combination of rows is a member");
        let mut back: Vec<Q> = vec![Q::zero(); c];
        for (b, k) in space.basis().iter().zip(&coords) {
            for (i, x) in b {
                back[*i] += x * k;
            }
        }
        prop_assert_eq!(back, v);
        // a vector outside raises the rank
        for j in 0..c {
            let e: SparseVec = vec![(j, Q::one())];
            let mut aug = rows.clone();
            aug.push((0..c).map(|i| i64::from(i == j)).collect());
            let inside = membership(&space, &e, c).unwrap().is_some();
            prop_assert_eq!(inside, dense_rank(&aug) == dense_rank(&rows));
        }
    }

    #[test]
    fn radical_of_symmetric_form((rows, c) in matrix(4, 5)) {
        // G = AᵀA has radical ker A
        let a = sparse(&rows, c);
        let at = a.transpose();
        let g_rows: Vec<SparseVec> = (0..c)
            .map(|i| (0..c).map(|j| (j, dot(at.row(i), at.row(j)))).filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let g = SparseMatrix::from_rows(c, g_rows).unwrap();
        let rad = radical(&g).unwrap();
        prop_assert_eq!(rad.dim(), kernel(&a).dim());
        prop_assert!(rad.is_subspace_of(&kernel(&a)));
    }
}

#[test]
fn dimension_mismatch_is_reported() {
    let u = rref(&sparse(&[vec![1, 0, 0]], 3)).0;
    let v = rref(&sparse(&[vec![1, 0]], 2)).0;
    assert!(intersect(&u, &v).is_err());
    assert!(membership(&u, &vec![(0, Q::one())], 2).is_err());
}
