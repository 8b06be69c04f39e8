//! Finite-dimensional Lie superalgebras `osp(1|2n)` and `sl2`, realized as
//! supermatrices preserving an even supersymmetric form.
//!
//! All structure constants are read off from matrix products; root vectors
//! are then rescaled so that every rank-one subalgebra obeys the standard
//! `sl2` / `osp(1|2)` relations, and the invariant form is the supertrace
//! form scaled so that the highest root has squared length 2.

mod dump;
mod matrix;
mod roots;
mod validate;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};

use crate::exactla::{self, SparseMatrix, SparseVec};
use crate::{Error, Result, Q};

pub use dump::AlgebraDump;
pub use matrix::SuperMatrix;
pub use roots::{ChevalleyData, RootClass, RootDatum, RootInfo};
pub use validate::{ValidationCheck, ValidationReport};

use matrix::Realization;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Koszul sign `(−1)^{|a||b|}`.
    pub fn koszul(self, other: Parity) -> i32 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Integer vector in the ε-basis of `𝔥*`; used for roots and charges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct LatticeVec(pub Vec<i32>);

impl LatticeVec {
    pub fn zero(n: usize) -> Self {
        LatticeVec(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &LatticeVec) -> LatticeVec {
        LatticeVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatticeVec) -> LatticeVec {
        LatticeVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: i32) -> LatticeVec {
        LatticeVec(self.0.iter().map(|a| a * s).collect())
    }

    /// Coefficients in the simple roots `ε₁−ε₂, …, εₙ₋₁−εₙ, εₙ`.
    pub fn simple_coordinates(&self) -> Vec<i32> {
        self.0
            .iter()
            .scan(0, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    pub fn height(&self) -> i32 {
        self.simple_coordinates().iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        let c = self.simple_coordinates();
        !self.is_zero() && c.iter().all(|&x| x >= 0)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum AlgebraKind {
    Osp(usize),
    Sl2,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Osp(n) => write!(f, "osp(1|{})", 2 * n),
            AlgebraKind::Sl2 => write!(f, "sl2"),
        }
    }
}

/// Sparse element of a specific algebra instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: u64,
    coeffs: BTreeMap<usize, Q>,
}

impl AlgebraElement {
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(i, x)| (*i, x))
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, s: &Q) -> Self {
        let mut out = self.clone();
        if s.is_zero() {
            out.coeffs.clear();
        } else {
            for x in out.coeffs.values_mut() {
                *x *= s;
            }
        }
        out
    }

    pub fn add(&self, other: &AlgebraElement) -> Self {
        let mut out = self.clone();
        for (i, x) in &other.coeffs {
            let e = out.coeffs.entry(*i).or_insert_with(Q::zero);
            *e += x;
            if e.is_zero() {
                out.coeffs.remove(i);
            }
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> Self {
        self.add(&other.scaled(&-Q::one()))
    }
}

#[derive(Clone, Debug)]
pub struct LieSuperalgebra {
    id: u64,
    kind: AlgebraKind,
    rank: usize,
    labels: Vec<String>,
    parity: Vec<Parity>,
    /// `brackets[a][b]` = coordinates of `[b_a, b_b]`.
    brackets: Vec<Vec<SparseVec>>,
    form: Vec<Vec<Q>>,
    cartan: Vec<usize>,
    cartan_gram_inv: Vec<Vec<Q>>,
    /// ε-coordinates of the root of each basis element (zero on the Cartan).
    weights: Vec<LatticeVec>,
    /// Coordinates of the image of each basis element under the Cartan
    /// anti-involution.
    eta: Vec<SparseVec>,
    matrices: Vec<SuperMatrix>,
    roots: RootDatum,
    chevalley: Vec<ChevalleyData>,
}

/// `osp(1|2n)` for `n ≥ 1`.
pub fn build_osp(n: i64) -> Result<LieSuperalgebra> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("osp(1|2n) needs n ≥ 1, got n = {n}")));
    }
    LieSuperalgebra::from_realization(AlgebraKind::Osp(n as usize), Realization::osp(n as usize))
}

pub fn build_sl2() -> LieSuperalgebra {
    LieSuperalgebra::from_realization(AlgebraKind::Sl2, Realization::sl2()).expect("sl2 realization is consistent")
}

struct RawRootSpace {
    root: LatticeVec,
    parity: Parity,
    matrix: SuperMatrix,
}

fn raw_root_spaces(real: &Realization) -> Result<Vec<RawRootSpace>> {
    let d = real.dim();
    let mut groups: BTreeMap<_, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..d {
        for b in 0..d {
            let w: Vec<i32> = real.weight[a].iter().zip(&real.weight[b]).map(|(x, y)| x - y).collect();
            if w.iter().all(|&x| x == 0) {
                continue;
            }
            groups.entry((w, real.parity[a] + real.parity[b])).or_default().push((a, b));
        }
    }
    let mut out = Vec::new();
    for ((w, parity), units) in groups {
        let eqs = real.preservation_constraints(&units, parity);
        let sol = if eqs.is_empty() {
            exactla::Subspace::full(units.len())
        } else {
            exactla::kernel(&SparseMatrix::from_dense(&eqs))
        };
        match sol.dim() {
            0 => continue,
            1 => {
                let mut m = SuperMatrix::zeros(d);
                for (j, x) in &sol.basis()[0] {
                    let (a, b) = units[*j];
                    m.entries[a][b] = x.clone();
                }
                out.push(RawRootSpace { root: LatticeVec(w), parity, matrix: m });
            }
            k => return Err(Error::InternalConsistency(format!("root space {:?} has dimension {k}", LatticeVec(w)))),
        }
    }
    Ok(out)
}

fn invert(m: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<SparseVec> = Vec::new();
    for (i, row) in m.iter().enumerate() {
        let mut r: SparseVec =
            row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect();
        r.push((n + i, Q::one()));
        aug.push(r);
    }
    let (s, rank) = exactla::rref(&SparseMatrix::from_rows(2 * n, aug)?);
    if rank != n || s.pivots().iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::InternalConsistency("singular Cartan Gram matrix".into()));
    }
    let mut inv = vec![vec![Q::zero(); n]; n];
    for (i, row) in s.basis().iter().enumerate() {
        for (c, x) in row {
            if *c >= n {
                inv[i][c - n] = x.clone();
            }
        }
    }
    Ok(inv)
}

fn quad(inv: &[Vec<Q>], a: &[i32], b: &[i32]) -> Q {
    let mut s = Q::zero();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if *x != 0 && *y != 0 {
                s += &inv[i][j] * Q::from_integer((x * y).into());
            }
        }
    }
    s
}

/// Finds, for each basis matrix, an entry where it is the only nonzero basis
/// matrix; coordinates are then read off by division.
struct Decomposer {
    probes: Vec<(usize, usize, Q)>,
    basis: Vec<SuperMatrix>,
}

impl Decomposer {
    fn new(basis: &[SuperMatrix]) -> Result<Self> {
        let d = basis[0].size();
        let mut probes = Vec::new();
        for (j, m) in basis.iter().enumerate() {
            let probe = (0..d)
                .flat_map(|a| (0..d).map(move |b| (a, b)))
                .find(|&(a, b)| {
                    !m.get(a, b).is_zero() && basis.iter().enumerate().all(|(l, o)| l == j || o.get(a, b).is_zero())
                })
                .ok_or_else(|| Error::InternalConsistency(format!("no probe entry for basis {j}")))?;
            probes.push((probe.0, probe.1, m.get(probe.0, probe.1).clone()));
        }
        Ok(Decomposer { probes, basis: basis.to_vec() })
    }

    fn coords(&self, m: &SuperMatrix) -> Result<SparseVec> {
        let mut out = Vec::new();
        let mut rebuilt = SuperMatrix::zeros(m.size());
        for (j, (a, b, p)) in self.probes.iter().enumerate() {
            let c = m.get(*a, *b) / p;
            if !c.is_zero() {
                rebuilt.add_scaled(&c, &self.basis[j]);
                out.push((j, c));
            }
        }
        if &rebuilt != m {
            return Err(Error::InternalConsistency("matrix is not in the span of the basis".into()));
        }
        Ok(out)
    }
}

impl LieSuperalgebra {
    fn from_realization(kind: AlgebraKind, real: Realization) -> Result<Self> {
        let n = real.rank;
        let cartan_mats = real.cartan();
        for h in &cartan_mats {
            if !real.preserves_form(h, Parity::Even) {
                return Err(Error::InternalConsistency("Cartan element leaves the algebra".into()));
            }
        }
        let raw = raw_root_spaces(&real)?;

        // Unscaled supertrace form on the Cartan and the resulting root pairing.
        let g0: Vec<Vec<Q>> = cartan_mats
            .iter()
            .map(|a| cartan_mats.iter().map(|b| a.mul(b).supertrace(&real.parity)).collect())
            .collect();
        let g0_inv = invert(&g0)?;
        let theta = raw
            .iter()
            .filter(|r| r.parity == Parity::Even && r.root.is_positive())
            .max_by_key(|r| (r.root.height(), r.root.0.clone()))
            .map(|r| r.root.clone())
            .ok_or_else(|| Error::InternalConsistency("no positive even root".into()))?;
        let form_scale = quad(&g0_inv, &theta.0, &theta.0) / crate::q(2);
        let gram: Vec<Vec<Q>> = g0.iter().map(|r| r.iter().map(|x| x * &form_scale).collect()).collect();
        let gram_inv = invert(&gram)?;
        let sq = |r: &LatticeVec| quad(&gram_inv, &r.0, &r.0);

        let find = |root: &LatticeVec| raw.iter().find(|r| &r.root == root);
        // t_λ in the H basis
        let coroot = |root: &LatticeVec, scale: i64| -> SuperMatrix {
            let mut m = SuperMatrix::zeros(real.dim());
            for (i, h) in cartan_mats.iter().enumerate() {
                let mut c = Q::zero();
                for (j, x) in root.0.iter().enumerate() {
                    c += &gram_inv[i][j] * Q::from_integer((*x as i64 * scale).into());
                }
                m.add_scaled(&c, h);
            }
            m
        };
        let proportion = |m: &SuperMatrix, to: &SuperMatrix| -> Result<Q> {
            let d = m.size();
            for a in 0..d {
                for b in 0..d {
                    if !to.get(a, b).is_zero() {
                        let c = m.get(a, b) / to.get(a, b);
                        if &to.scaled(&c) != m {
                            break;
                        }
                        return Ok(c);
                    }
                }
            }
            Err(Error::InternalConsistency("bracket is not proportional to the coroot".into()))
        };

        let mut even_pos: Vec<LatticeVec> =
            raw.iter().filter(|r| r.parity == Parity::Even && r.root.is_positive()).map(|r| r.root.clone()).collect();
        even_pos.sort_by(|a, b| (b.height(), &b.0).cmp(&(a.height(), &a.0)));
        let mut odd_pos: Vec<LatticeVec> =
            raw.iter().filter(|r| r.parity == Parity::Odd && r.root.is_positive()).map(|r| r.root.clone()).collect();
        odd_pos.sort_by(|a, b| (b.height(), &b.0).cmp(&(a.height(), &a.0)));

        let mut labels: Vec<String> = (1..=n).map(|i| format!("h{i}")).collect();
        let mut parity = vec![Parity::Even; n];
        let mut weights = vec![LatticeVec::zero(n); n];
        let mut mats: Vec<SuperMatrix> = cartan_mats.clone();
        let mut odd_mats: Vec<(LatticeVec, SuperMatrix, SuperMatrix)> = Vec::new();

        for alpha in &even_pos {
            let len2 = sq(alpha);
            let long = len2 == crate::q(2);
            let h_alpha = coroot(alpha, if long { 1 } else { 2 });
            let half = LatticeVec(alpha.0.iter().map(|x| x / 2).collect());
            let has_half = long && alpha.0.iter().all(|x| x % 2 == 0) && find(&half).is_some_and(|r| r.parity.is_odd());
            let (e_pos, e_neg) = if has_half {
                let xp = find(&half).unwrap().matrix.clone();
                let xm_raw = find(&half.neg())
                    .ok_or_else(|| Error::InternalConsistency(format!("missing root {}", half.neg())))?
                    .matrix
                    .clone();
                let c = proportion(&xp.super_bracket(Parity::Odd, &xm_raw, Parity::Odd), &h_alpha)?;
                let xm = xm_raw.scaled(&c.recip());
                let half_q = crate::q_frac(1, 2);
                let e = xp.super_bracket(Parity::Odd, &xp, Parity::Odd).scaled(&half_q);
                let f = xm.super_bracket(Parity::Odd, &xm, Parity::Odd).scaled(&-half_q);
                odd_mats.push((half.clone(), xp, xm));
                (e, f)
            } else {
                let e = find(alpha).unwrap().matrix.clone();
                let f_raw = find(&alpha.neg())
                    .ok_or_else(|| Error::InternalConsistency(format!("missing root {}", alpha.neg())))?
                    .matrix
                    .clone();
                let c = proportion(&e.super_bracket(Parity::Even, &f_raw, Parity::Even), &h_alpha)?;
                (e, f_raw.scaled(&c.recip()))
            };
            labels.push(format!("e{alpha}"));
            labels.push(format!("e{}", alpha.neg()));
            parity.extend([Parity::Even, Parity::Even]);
            weights.push(alpha.clone());
            weights.push(alpha.neg());
            mats.push(e_pos);
            mats.push(e_neg);
        }
        for gamma in &odd_pos {
            let (_, xp, xm) = odd_mats
                .iter()
                .find(|(g, _, _)| g == gamma)
                .ok_or_else(|| Error::InternalConsistency(format!("odd root {gamma} is not half of a long root")))?;
            labels.push(format!("x{gamma}"));
            labels.push(format!("x{}", gamma.neg()));
            parity.extend([Parity::Odd, Parity::Odd]);
            weights.push(gamma.clone());
            weights.push(gamma.neg());
            mats.push(xp.clone());
            mats.push(xm.clone());
        }
        if mats.len() != n + raw.len() {
            return Err(Error::InternalConsistency("basis does not exhaust the root spaces".into()));
        }
        for (m, p) in mats.iter().zip(&parity) {
            if !real.preserves_form(m, *p) || m.parity(&real.parity) != Some(*p) {
                return Err(Error::InternalConsistency("basis matrix leaves the algebra".into()));
            }
        }

        let dec = Decomposer::new(&mats)?;
        let dim = mats.len();
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        let mut form = vec![vec![Q::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                brackets[a][b] = dec.coords(&mats[a].super_bracket(parity[a], &mats[b], parity[b]))?;
                form[a][b] = mats[a].mul(&mats[b]).supertrace(&real.parity) * &form_scale;
            }
        }
        let eta = mats
            .iter()
            .map(|m| dec.coords(&m.conjugate_transpose_by_signs(&real.eta_signs)))
            .collect::<Result<Vec<_>>>()?;

        let mut alg = LieSuperalgebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            kind,
            rank: n,
            labels,
            parity,
            brackets,
            form,
            cartan: (0..n).collect(),
            cartan_gram_inv: gram_inv,
            weights,
            eta,
            matrices: mats,
            roots: RootDatum::default(),
            chevalley: Vec::new(),
        };
        alg.roots = roots::classify(&alg)?;
        alg.chevalley = roots::chevalley_all(&alg)?;
        Ok(alg)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|p| !p.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    /// Superdimension `dim g₀ − dim g₁`.
    pub fn sdim(&self) -> i64 {
        self.even_dim() as i64 - self.odd_dim() as i64
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    /// Inverse of the Gram matrix of the stored Cartan basis.
    pub fn cartan_gram_inverse(&self) -> &[Vec<Q>] {
        &self.cartan_gram_inv
    }

    /// Root (charge) of a basis element; zero for Cartan elements.
    pub fn weight(&self, i: usize) -> &LatticeVec {
        &self.weights[i]
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.brackets[a][b]
    }

    pub fn form_basis(&self, a: usize, b: usize) -> &Q {
        &self.form[a][b]
    }

    pub fn eta_basis(&self, a: usize) -> &SparseVec {
        &self.eta[a]
    }

    pub fn matrix(&self, a: usize) -> &SuperMatrix {
        &self.matrices[a]
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.roots
    }

    pub fn chevalley(&self) -> &[ChevalleyData] {
        &self.chevalley
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, Q::one());
        AlgebraElement { algebra: self.id, coeffs }
    }

    pub fn element(&self, terms: &[(usize, Q)]) -> AlgebraElement {
        let mut e = AlgebraElement { algebra: self.id, coeffs: BTreeMap::new() };
        for (i, x) in terms {
            e = e.add(&AlgebraElement { algebra: self.id, coeffs: [(*i, x.clone())].into() });
        }
        e
    }

    pub fn zero_element(&self) -> AlgebraElement {
        AlgebraElement { algebra: self.id, coeffs: BTreeMap::new() }
    }

    pub fn owns(&self, a: &AlgebraElement) -> bool {
        a.algebra == self.id
    }

    fn check_owned(&self, a: &AlgebraElement) -> Result<()> {
        if self.owns(a) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("element belongs to a different algebra instance".into()))
        }
    }

    /// Parity of a homogeneous element (`None` for zero or mixed elements).
    pub fn element_parity(&self, a: &AlgebraElement) -> Option<Parity> {
        let mut ps = a.coeffs.keys().map(|&i| self.parity[i]);
        let first = ps.next()?;
        ps.all(|p| p == first).then_some(first)
    }

    pub fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, x) in &a.coeffs {
            for (j, y) in &b.coeffs {
                for (l, z) in &self.brackets[*i][*j] {
                    *acc.entry(*l).or_insert_with(Q::zero) += x * y * z;
                }
            }
        }
        acc.retain(|_, x| !x.is_zero());
        Ok(AlgebraElement { algebra: self.id, coeffs: acc })
    }

    pub fn form(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<Q> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        let mut s = Q::zero();
        for (i, x) in &a.coeffs {
            for (j, y) in &b.coeffs {
                s += x * y * &self.form[*i][*j];
            }
        }
        Ok(s)
    }

    /// Image under the Cartan anti-involution.
    pub fn eta(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_owned(a)?;
        let mut acc = self.zero_element();
        for (i, x) in &a.coeffs {
            acc = acc.add(&self.element(&self.eta[*i]).scaled(x));
        }
        Ok(acc)
    }

    /// `α(h)` for a Cartan element `h` and root `α` in ε-coordinates.
    pub fn root_value(&self, root: &LatticeVec, h: &AlgebraElement) -> Q {
        self.cartan
            .iter()
            .enumerate()
            .map(|(i, &c)| h.coeff(c) * Q::from_integer(root.0[i].into()))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// `t_λ` with `⟨t_λ, h⟩ = λ(h)`.
    pub fn coroot_element(&self, root: &LatticeVec) -> AlgebraElement {
        let terms: Vec<(usize, Q)> = self
            .cartan
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut x = Q::zero();
                for (j, r) in root.0.iter().enumerate() {
                    x += &self.cartan_gram_inv[i][j] * Q::from_integer((*r).into());
                }
                (c, x)
            })
            .collect();
        self.element(&terms)
    }

    /// `⟨λ, μ⟩` on the ε-lattice.
    pub fn pairing(&self, a: &LatticeVec, b: &LatticeVec) -> Q {
        quad(&self.cartan_gram_inv, &a.0, &b.0)
    }

    /// Copy of the algebra with `[b_a, b_b]` shifted by `delta·b_target`
    /// (and `[b_b, b_a]` adjusted to keep super-antisymmetry). Intended for
    /// fault-injection tests of the validator.
    pub fn with_perturbed_bracket(&self, a: usize, b: usize, target: usize, delta: &Q) -> Self {
        let mut out = self.clone();
        let shift = |v: &SparseVec, d: Q| -> SparseVec {
            let mut m: BTreeMap<usize, Q> = v.iter().cloned().collect();
            *m.entry(target).or_insert_with(Q::zero) += d;
            m.into_iter().filter(|(_, x)| !x.is_zero()).collect()
        };
        out.brackets[a][b] = shift(&self.brackets[a][b], delta.clone());
        if a != b {
            let sign = -Q::from_integer(self.parity[a].koszul(self.parity[b]).into());
            out.brackets[b][a] = shift(&self.brackets[b][a], sign * delta);
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate_algebra(self)
    }

    pub fn dump(&self) -> AlgebraDump {
        dump::dump(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn osp_dimensions() {
        let a = build_osp(1).unwrap();
        assert_eq!((a.dim(), a.even_dim(), a.odd_dim()), (5, 3, 2));
        let b = build_osp(2).unwrap();
        assert_eq!(b.dim(), 14);
        let r = b.root_datum();
        assert_eq!(r.count(RootClass::EvenLong), 4);
        assert_eq!(r.count(RootClass::EvenShort), 4);
        assert_eq!(r.count(RootClass::Odd), 4);
        assert_eq!(build_osp(1).unwrap().root_datum().count(RootClass::EvenShort), 0);
    }

    #[test]
    fn osp_rejects_nonpositive_rank() {
        assert!(matches!(build_osp(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_osp(-3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sl2_relations() {
        let s = build_sl2();
        let c = &s.chevalley()[0];
        let (e, f, h) = (s.basis_element(c.e_pos), s.basis_element(c.e_neg), c.h.clone());
        assert_eq!(s.bracket(&e, &f).unwrap(), h);
        assert_eq!(s.form(&h, &h).unwrap(), q(2));
        assert_eq!(s.form(&e, &e).unwrap(), q(0));
        assert_eq!(s.form(&e, &f).unwrap(), q(1));
        assert_eq!(s.bracket(&h, &e).unwrap(), e.scaled(&q(2)));
    }

    #[test]
    fn osp1_odd_relations() {
        let a = build_osp(1).unwrap();
        let c = &a.chevalley()[0];
        let (xp, xm) = c.odd.unwrap();
        let (xp, xm) = (a.basis_element(xp), a.basis_element(xm));
        let e = a.basis_element(c.e_pos);
        let f = a.basis_element(c.e_neg);
        assert_eq!(a.bracket(&xp, &xm).unwrap(), c.h);
        assert_eq!(a.bracket(&xm, &xm).unwrap(), f.scaled(&q(-2)));
        assert_eq!(a.bracket(&xp, &xp).unwrap(), e.scaled(&q(2)));
        assert_eq!(a.bracket(&c.h, &xp).unwrap(), xp);
        assert_eq!(a.form(&xp, &xm).unwrap(), q(2));
        assert_eq!(a.form(&xm, &xp).unwrap(), q(-2));
        assert_eq!(a.form(&e, &f).unwrap(), q(1));
    }

    #[test]
    fn short_root_form_normalization() {
        let a = build_osp(2).unwrap();
        for c in a.chevalley().iter().filter(|c| c.class == RootClass::EvenShort) {
            let e = a.basis_element(c.e_pos);
            let f = a.basis_element(c.e_neg);
            assert_eq!(a.form(&e, &f).unwrap(), q(2));
            assert_eq!(a.form(&c.h, &c.h).unwrap(), q(4));
        }
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let a = build_osp(1).unwrap();
        let b = build_osp(1).unwrap();
        let x = a.basis_element(0);
        let y = b.basis_element(0);
        assert!(matches!(a.bracket(&x, &y), Err(Error::InvalidArgument(_))));
        assert!(matches!(a.form(&y, &x), Err(Error::InvalidArgument(_))));
    }
}
