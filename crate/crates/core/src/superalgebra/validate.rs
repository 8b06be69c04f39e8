use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{LieSuperalgebra, RootClass};
use crate::exactla::SparseVec;
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Acc {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Acc {
    fn new(name: &'static str) -> Self {
        Acc { name, checked: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> ValidationCheck {
        ValidationCheck {
            name: self.name.to_string(),
            passed: self.witness.is_none(),
            checked: self.checked,
            witness: self.witness,
        }
    }
}

fn add_into(acc: &mut BTreeMap<usize, Q>, v: &SparseVec, s: &Q) {
    for (i, x) in v {
        *acc.entry(*i).or_insert_with(Q::zero) += s * x;
    }
}

fn clean(mut m: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
    m.retain(|_, x| !x.is_zero());
    m
}

/// `[v, b_c]` for a coordinate vector `v`.
fn bracket_vec_basis(alg: &LieSuperalgebra, v: &SparseVec, c: usize) -> BTreeMap<usize, Q> {
    let mut acc = BTreeMap::new();
    for (i, x) in v {
        add_into(&mut acc, alg.bracket_basis(*i, c), x);
    }
    acc
}

fn bracket_basis_vec(alg: &LieSuperalgebra, a: usize, v: &SparseVec) -> BTreeMap<usize, Q> {
    let mut acc = BTreeMap::new();
    for (i, x) in v {
        add_into(&mut acc, alg.bracket_basis(a, *i), x);
    }
    acc
}

pub(super) fn validate_algebra(alg: &LieSuperalgebra) -> ValidationReport {
    let dim = alg.dim();
    let lbl = |i: usize| alg.label(i).to_string();
    let mut checks = Vec::new();

    let mut anti = Acc::new("super-antisymmetry");
    for a in 0..dim {
        for b in 0..dim {
            let sign = -Q::from_integer(alg.parity(a).koszul(alg.parity(b)).into());
            let lhs: SparseVec = alg.bracket_basis(a, b).clone();
            let rhs: SparseVec = alg.bracket_basis(b, a).iter().map(|(i, x)| (*i, x * &sign)).collect();
            anti.record(lhs == rhs, || format!("({}, {})", lbl(a), lbl(b)));
        }
    }
    checks.push(anti.finish());

    // [[a,b],c] = [a,[b,c]] − (−1)^{|a||b|}[b,[a,c]]
    let mut jacobi = Acc::new("super-jacobi");
    for a in 0..dim {
        for b in 0..dim {
            let ab = alg.bracket_basis(a, b);
            let sign = -Q::from_integer(alg.parity(a).koszul(alg.parity(b)).into());
            for c in 0..dim {
                let lhs = clean(bracket_vec_basis(alg, ab, c));
                let mut rhs = bracket_basis_vec(alg, a, alg.bracket_basis(b, c));
                for (i, x) in bracket_basis_vec(alg, b, alg.bracket_basis(a, c)) {
                    *rhs.entry(i).or_insert_with(Q::zero) += &sign * x;
                }
                let rhs = clean(rhs);
                jacobi.record(lhs == rhs, || format!("({}, {}, {})", lbl(a), lbl(b), lbl(c)));
            }
        }
    }
    checks.push(jacobi.finish());

    let mut even = Acc::new("form-even-supersymmetric");
    for a in 0..dim {
        for b in 0..dim {
            let x = alg.form_basis(a, b);
            let ok = if alg.parity(a) != alg.parity(b) {
                x.is_zero()
            } else {
                let s = Q::from_integer(alg.parity(a).koszul(alg.parity(b)).into());
                *x == alg.form_basis(b, a) * s
            };
            even.record(ok, || format!("({}, {})", lbl(a), lbl(b)));
        }
    }
    checks.push(even.finish());

    let mut inv = Acc::new("form-invariance");
    let pair = |v: &SparseVec, c: usize| -> Q {
        v.iter().map(|(i, x)| x * alg.form_basis(*i, c)).fold(Q::zero(), |s, t| s + t)
    };
    let pair_l = |a: usize, v: &SparseVec| -> Q {
        v.iter().map(|(i, x)| x * alg.form_basis(a, *i)).fold(Q::zero(), |s, t| s + t)
    };
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let ok = pair(alg.bracket_basis(a, b), c) == pair_l(a, alg.bracket_basis(b, c));
                inv.record(ok, || format!("({}, {}, {})", lbl(a), lbl(b), lbl(c)));
            }
        }
    }
    checks.push(inv.finish());

    let mut nondeg = Acc::new("form-nondegenerate");
    {
        let g = crate::exactla::SparseMatrix::from_dense(
            &(0..dim).map(|a| (0..dim).map(|b| alg.form_basis(a, b).clone()).collect()).collect::<Vec<_>>(),
        );
        let (_, rank) = crate::exactla::rref(&g);
        nondeg.record(rank == dim, || format!("rank {rank} < {dim}"));
    }
    checks.push(nondeg.finish());

    // the stored Cartan Gram inverse must invert ⟨h_i,h_j⟩
    let mut cartan = Acc::new("cartan-gram");
    let n = alg.rank();
    let ginv = alg.cartan_gram_inverse();
    for (i, &hi) in alg.cartan().iter().enumerate() {
        for j in 0..n {
            let mut s = Q::zero();
            for (&hl, row) in alg.cartan().iter().zip(ginv) {
                s += alg.form_basis(hi, hl) * &row[j];
            }
            let ok = s == if i == j { crate::q(1) } else { Q::zero() };
            cartan.record(ok, || format!("(h{}, h{})", i + 1, j + 1));
        }
    }
    checks.push(cartan.finish());

    let mut grading = Acc::new("root-grading");
    for a in 0..dim {
        for b in 0..dim {
            let target = alg.weight(a).add(alg.weight(b));
            let ok = alg.bracket_basis(a, b).iter().all(|(i, _)| alg.weight(*i) == &target);
            grading.record(ok, || format!("({}, {})", lbl(a), lbl(b)));
        }
    }
    checks.push(grading.finish());

    let mut coroot = Acc::new("coroot-pairing");
    for r in &alg.root_datum().roots {
        let t = alg.coroot_element(&r.root);
        for &h in alg.cartan() {
            let he = alg.basis_element(h);
            let ok = alg.form(&t, &he).ok() == Some(alg.root_value(&r.root, &he));
            coroot.record(ok, || format!("t{} vs {}", r.root, lbl(h)));
        }
    }
    checks.push(coroot.finish());

    let mut counts = Acc::new("root-counts");
    if let super::AlgebraKind::Osp(n) = alg.kind() {
        let rd = alg.root_datum();
        let expect = [
            (RootClass::EvenLong, 2 * n),
            (RootClass::EvenShort, 2 * n * (n.saturating_sub(1))),
            (RootClass::Odd, 2 * n),
        ];
        for (class, k) in expect {
            counts.record(rd.count(class) == k, || format!("{class:?}: {} ≠ {k}", rd.count(class)));
        }
        counts.record(alg.dim() == n + rd.roots.len(), || "basis size".into());
    }
    checks.push(counts.finish());

    let mut rels = Acc::new("rank-one-relations");
    for c in alg.chevalley() {
        for (name, lhs, rhs) in alg.rank_one_relations(c) {
            rels.record(lhs == rhs, || format!("{name} for {}", c.root));
        }
    }
    checks.push(rels.finish());

    // η([a,b]) = [η(b), η(a)], ⟨a,b⟩ = ⟨η(b), η(a)⟩, η² = 1
    let mut eta = Acc::new("anti-involution");
    for a in 0..dim {
        let ea = alg.eta(&alg.basis_element(a)).expect("same algebra");
        let eea = alg.eta(&ea).expect("same algebra");
        eta.record(eea == alg.basis_element(a), || format!("eta^2 on {}", lbl(a)));
        for b in 0..dim {
            let eb = alg.eta(&alg.basis_element(b)).expect("same algebra");
            let lhs = alg.eta(&alg.element(alg.bracket_basis(a, b))).expect("same algebra");
            let rhs = alg.bracket(&eb, &ea).expect("same algebra");
            eta.record(lhs == rhs, || format!("bracket ({}, {})", lbl(a), lbl(b)));
            let ok = *alg.form_basis(a, b) == alg.form(&eb, &ea).expect("same algebra");
            eta.record(ok, || format!("form ({}, {})", lbl(a), lbl(b)));
        }
    }
    checks.push(eta.finish());

    ValidationReport { checks }
}
