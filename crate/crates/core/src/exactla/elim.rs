//! Fraction-free elimination on primitive integer rows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseVec;
use crate::Q;

type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators and divides out the content; the leading entry of
/// the result is positive.
fn primitive_from_rational(r: &SparseVec) -> IntRow {
    let mut l = BigInt::one();
    for (_, x) in r {
        l = l.lcm(x.denom());
    }
    let row: IntRow = r.iter().map(|(c, x)| (*c, x.numer() * (&l / x.denom()))).collect();
    make_primitive(row)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, x) in &row {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    row
}

/// `pa·a − pb·b`, dropping zeros.
fn combine(a: &IntRow, pa: &BigInt, b: &IntRow, pb: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|(c, _)| *c).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|(c, _)| *c).unwrap_or(usize::MAX);
        if ca < cb {
            out.push((ca, pa * &a[i].1));
            i += 1;
        } else if cb < ca {
            out.push((cb, -(pb * &b[j].1)));
            j += 1;
        } else {
            let x = pa * &a[i].1 - pb * &b[j].1;
            if !x.is_zero() {
                out.push((ca, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(r: &IntRow, col: usize) -> Option<&BigInt> {
    r.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &r[i].1)
}

/// Reduces `row` against the echelon rows by leading entries, fraction-free.
fn reduce_leading(mut row: IntRow, pivots: &BTreeMap<usize, IntRow>) -> IntRow {
    while let Some((lead, x)) = row.first() {
        match pivots.get(lead) {
            Some(p) => {
                let x = x.clone();
                let pl = p[0].1.clone();
                row = make_primitive(combine(&row, &pl, p, &x));
            }
            None => break,
        }
    }
    row
}

/// Canonical RREF rows of the span of `rows`, ordered by pivot column.
pub(super) fn rref_rows(_ncols: usize, rows: impl Iterator<Item = SparseVec>) -> Vec<SparseVec> {
    // forward pass: echelon form keyed by leading column
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for r in rows {
        if r.is_empty() {
            continue;
        }
        let row = reduce_leading(primitive_from_rational(&r), &pivots);
        if let Some((lead, _)) = row.first() {
            pivots.insert(*lead, row);
        }
    }

    // back substitution, highest pivot first
    let cols: Vec<usize> = pivots.keys().copied().collect();
    for (idx, &c) in cols.iter().enumerate().rev() {
        let mut row = pivots.remove(&c).unwrap();
        for &pc in &cols[idx + 1..] {
            if let Some(x) = entry(&row, pc).cloned() {
                let p = &pivots[&pc];
                let pl = p[0].1.clone();
                row = make_primitive(combine(&row, &pl, p, &x));
            }
        }
        pivots.insert(c, row);
    }

    // final division by the pivots
    pivots
        .into_values()
        .map(|row| {
            let lead = row[0].1.clone();
            row.into_iter().map(|(c, x)| (c, Q::new(x, lead.clone()))).collect()
        })
        .collect()
}
