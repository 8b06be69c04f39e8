//! JSON dump of an algebra for cross-tool validation. Keys follow basis
//! index order.

use serde::{Deserialize, Serialize};

use super::{LieSuperalgebra, Parity};
use crate::vacuum::rational_string;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub index: usize,
    pub label: String,
    pub parity: Parity,
    pub root: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub a: usize,
    pub b: usize,
    /// `(index, "p/q")` pairs of the result.
    pub result: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormEntry {
    pub a: usize,
    pub b: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub algebra: String,
    pub basis: Vec<BasisEntry>,
    pub brackets: Vec<BracketEntry>,
    pub form: Vec<FormEntry>,
}

pub(super) fn dump(alg: &LieSuperalgebra) -> AlgebraDump {
    let dim = alg.dim();
    let basis = (0..dim)
        .map(|i| BasisEntry {
            index: i,
            label: alg.label(i).to_string(),
            parity: alg.parity(i),
            root: alg.weight(i).0.clone(),
        })
        .collect();
    let mut brackets = Vec::new();
    let mut form = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            let r = alg.bracket_basis(a, b);
            if !r.is_empty() {
                brackets.push(BracketEntry { a, b, result: r.iter().map(|(i, x)| (*i, rational_string(x))).collect() });
            }
            let v = alg.form_basis(a, b);
            if !num_traits::Zero::is_zero(v) {
                form.push(FormEntry { a, b, value: rational_string(v) });
            }
        }
    }
    AlgebraDump { algebra: alg.kind().to_string(), basis, brackets, form }
}

#[cfg(test)]
mod tests {
    use super::super::build_osp;

    #[test]
    fn dump_round_trips_and_is_ordered() {
        let a = build_osp(1).unwrap();
        let d = a.dump();
        assert_eq!(d.basis.len(), 5);
        assert!(d.brackets.windows(2).all(|w| (w[0].a, w[0].b) < (w[1].a, w[1].b)));
        let s = serde_json::to_string(&d).unwrap();
        let back: super::AlgebraDump = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
