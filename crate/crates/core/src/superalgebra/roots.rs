use num_traits::Zero;

use super::{AlgebraElement, LatticeVec, LieSuperalgebra, Parity};
use crate::{Error, Result, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootClass {
    EvenLong,
    EvenShort,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInfo {
    pub root: LatticeVec,
    pub class: RootClass,
    pub positive: bool,
    pub basis_index: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootDatum {
    pub roots: Vec<RootInfo>,
    pub highest_root: LatticeVec,
}

impl RootDatum {
    pub fn count(&self, class: RootClass) -> usize {
        self.roots.iter().filter(|r| r.class == class).count()
    }

    pub fn positive(&self, class: RootClass) -> impl Iterator<Item = &RootInfo> {
        self.roots.iter().filter(move |r| r.class == class && r.positive)
    }

    pub fn find(&self, root: &LatticeVec) -> Option<&RootInfo> {
        self.roots.iter().find(|r| &r.root == root)
    }
}

/// Normalized generators of the rank-one subalgebra attached to an even
/// positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyData {
    pub root: LatticeVec,
    pub class: RootClass,
    pub e_pos: usize,
    pub e_neg: usize,
    /// `t_α` for long roots, `2t_α` for short ones.
    pub h: AlgebraElement,
    /// `(x_{α/2}, x_{−α/2})` when α is long and has an odd half.
    pub odd: Option<(usize, usize)>,
}

impl ChevalleyData {
    pub fn is_long(&self) -> bool {
        self.class == RootClass::EvenLong
    }

    /// `k_α = 2k/⟨α,α⟩`.
    pub fn level_multiplier(&self) -> i64 {
        if self.is_long() {
            1
        } else {
            2
        }
    }
}

pub(super) fn classify(alg: &LieSuperalgebra) -> Result<RootDatum> {
    let dim = alg.dim();
    let mut roots = Vec::new();
    for b in 0..dim {
        if alg.cartan.contains(&b) {
            continue;
        }
        let root = alg.weights[b].clone();
        // the stored root must be the simultaneous eigenvalue of ad(h)
        for (i, &h) in alg.cartan.iter().enumerate() {
            let expected: Vec<(usize, Q)> =
                if root.0[i] == 0 { Vec::new() } else { vec![(b, Q::from_integer(root.0[i].into()))] };
            if alg.brackets[h][b] != expected {
                return Err(Error::InternalConsistency(format!(
                    "ad(h{}) does not act semisimply on {}",
                    i + 1,
                    alg.labels[b]
                )));
            }
        }
        let len2 = alg.pairing(&root, &root);
        let class = match (alg.parity[b], len2) {
            (Parity::Odd, l) if l == crate::q_frac(1, 2) => RootClass::Odd,
            (Parity::Even, l) if l == crate::q(2) => RootClass::EvenLong,
            (Parity::Even, l) if l == crate::q(1) => RootClass::EvenShort,
            (p, l) => {
                return Err(Error::InternalConsistency(format!("root {root} of parity {p:?} has squared length {l}")))
            }
        };
        let positive = root.is_positive();
        roots.push(RootInfo { root, class, positive, basis_index: b });
    }
    let highest_root = roots
        .iter()
        .filter(|r| r.positive && r.class != RootClass::Odd)
        .max_by_key(|r| (r.root.height(), r.root.0.clone()))
        .map(|r| r.root.clone())
        .ok_or_else(|| Error::InternalConsistency("no positive even root".into()))?;
    Ok(RootDatum { roots, highest_root })
}

pub(super) fn chevalley_all(alg: &LieSuperalgebra) -> Result<Vec<ChevalleyData>> {
    let rd = &alg.roots;
    let mut out = Vec::new();
    for r in rd.roots.iter().filter(|r| r.positive && r.class != RootClass::Odd) {
        let neg = rd
            .find(&r.root.neg())
            .ok_or_else(|| Error::InternalConsistency(format!("missing negative of {}", r.root)))?;
        let scale = if r.class == RootClass::EvenLong { 1 } else { 2 };
        let h = alg.coroot_element(&r.root.scale(scale));
        let odd = if r.class == RootClass::EvenLong && r.root.0.iter().all(|x| x % 2 == 0) {
            let half = LatticeVec(r.root.0.iter().map(|x| x / 2).collect());
            match (rd.find(&half), rd.find(&half.neg())) {
                (Some(p), Some(m)) if p.class == RootClass::Odd => Some((p.basis_index, m.basis_index)),
                _ => None,
            }
        } else {
            None
        };
        out.push(ChevalleyData {
            root: r.root.clone(),
            class: r.class,
            e_pos: r.basis_index,
            e_neg: neg.basis_index,
            h,
            odd,
        });
    }
    Ok(out)
}

impl LieSuperalgebra {
    /// Chevalley data for an even positive root.
    pub fn root_generators(&self, alpha: &LatticeVec) -> Result<&ChevalleyData> {
        self.chevalley
            .iter()
            .find(|c| &c.root == alpha)
            .ok_or_else(|| Error::InvalidArgument(format!("{alpha} is not an even positive root")))
    }

    pub fn classify_roots(&self) -> &RootDatum {
        &self.roots
    }

    pub fn highest_root(&self) -> &ChevalleyData {
        self.root_generators(&self.roots.highest_root).expect("highest root is even positive")
    }

    /// Every relation of the rank-one subalgebra of `c`, as
    /// `(description, lhs, rhs)` triples.
    pub fn rank_one_relations(&self, c: &ChevalleyData) -> Vec<(String, AlgebraElement, AlgebraElement)> {
        let e = self.basis_element(c.e_pos);
        let f = self.basis_element(c.e_neg);
        let h = c.h.clone();
        let br = |a: &AlgebraElement, b: &AlgebraElement| self.bracket(a, b).expect("same algebra");
        let q = crate::q;
        let mut rel = vec![
            ("[e,f] = h".to_string(), br(&e, &f), h.clone()),
            ("[h,e] = 2e".to_string(), br(&h, &e), e.scaled(&q(2))),
            ("[h,f] = -2f".to_string(), br(&h, &f), f.scaled(&q(-2))),
        ];
        let len = Q::from_integer(2.into()) / self.pairing(&c.root, &c.root);
        let form = |a: &AlgebraElement, b: &AlgebraElement| {
            let mut e = self.zero_element();
            let v = self.form(a, b).expect("same algebra");
            if !v.is_zero() {
                e = self.basis_element(self.cartan[0]).scaled(&v);
            }
            e
        };
        let h0 = self.basis_element(self.cartan[0]);
        rel.push(("<e,f> = 2/<a,a>".into(), form(&e, &f), h0.scaled(&len)));
        rel.push(("<h,h> = 4/<a,a>".into(), form(&h, &h), h0.scaled(&(len * q(2)))));
        if let Some((xp, xm)) = c.odd {
            let xp = self.basis_element(xp);
            let xm = self.basis_element(xm);
            rel.extend([
                ("[h,x+] = x+".to_string(), br(&h, &xp), xp.clone()),
                ("[h,x-] = -x-".to_string(), br(&h, &xm), xm.scaled(&q(-1))),
                ("[e,x+] = 0".to_string(), br(&e, &xp), self.zero_element()),
                ("[f,x+] = -x-".to_string(), br(&f, &xp), xm.scaled(&q(-1))),
                ("[e,x-] = -x+".to_string(), br(&e, &xm), xp.scaled(&q(-1))),
                ("[f,x-] = 0".to_string(), br(&f, &xm), self.zero_element()),
                ("{x+,x+} = 2e".to_string(), br(&xp, &xp), e.scaled(&q(2))),
                ("{x+,x-} = h".to_string(), br(&xp, &xm), h.clone()),
                ("{x-,x-} = -2f".to_string(), br(&xm, &xm), f.scaled(&q(-2))),
                ("<x+,x-> = 2".to_string(), form(&xp, &xm), h0.scaled(&q(2))),
                ("<x-,x+> = -2".to_string(), form(&xm, &xp), h0.scaled(&q(-2))),
            ]);
        }
        rel
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_osp, build_sl2};
    use super::*;

    #[test]
    fn highest_roots() {
        let a = build_osp(1).unwrap();
        assert_eq!(a.root_datum().highest_root, LatticeVec(vec![2]));
        assert_eq!(a.highest_root().class, RootClass::EvenLong);
        let b = build_osp(2).unwrap();
        assert_eq!(b.root_datum().highest_root, LatticeVec(vec![2, 0]));
        let s = build_sl2();
        assert_eq!(s.root_datum().roots.iter().filter(|r| r.positive).count(), 1);
        assert_eq!(s.highest_root().class, RootClass::EvenLong);
    }

    #[test]
    fn odd_roots_of_osp4() {
        let b = build_osp(2).unwrap();
        let mut odd: Vec<_> =
            b.root_datum().roots.iter().filter(|r| r.class == RootClass::Odd).map(|r| r.root.0.clone()).collect();
        odd.sort();
        assert_eq!(odd, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn coroot_pairing() {
        let b = build_osp(2).unwrap();
        for r in &b.root_datum().roots {
            let t = b.coroot_element(&r.root);
            for &h in b.cartan() {
                let he = b.basis_element(h);
                assert_eq!(b.form(&t, &he).unwrap(), b.root_value(&r.root, &he));
            }
        }
    }

    #[test]
    fn non_root_is_rejected() {
        let b = build_osp(2).unwrap();
        assert!(b.root_generators(&LatticeVec(vec![1, 0])).is_err());
        assert!(b.root_generators(&LatticeVec(vec![-2, 0])).is_err());
        assert!(b.root_generators(&LatticeVec(vec![1, 1])).is_ok());
    }

    #[test]
    fn relations_hold_for_every_root() {
        for alg in [build_osp(1).unwrap(), build_osp(2).unwrap(), build_sl2()] {
            for c in alg.chevalley() {
                for (name, lhs, rhs) in alg.rank_one_relations(c) {
                    assert_eq!(lhs, rhs, "{} fails for {}", name, c.root);
                }
            }
        }
    }
}
