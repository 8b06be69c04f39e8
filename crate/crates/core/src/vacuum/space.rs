use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use super::{Mode, PbwMonomial, State};
use crate::exactla::SparseVec;
use crate::superalgebra::{AlgebraElement, LatticeVec, LieSuperalgebra};
use crate::{q, Error, Result, Q};

/// Canonical monomials of one `(weight, charge)` block in enumeration order.
#[derive(Clone, Debug)]
pub struct Block {
    pub weight: u32,
    pub charge: LatticeVec,
    monomials: Vec<PbwMonomial>,
    index: HashMap<PbwMonomial, usize>,
}

impl Block {
    fn new(weight: u32, charge: LatticeVec, mut monomials: Vec<PbwMonomial>) -> Self {
        monomials.sort_by_key(|m| m.key());
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Block { weight, charge, monomials, index }
    }

    pub fn monomials(&self) -> &[PbwMonomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, m: &PbwMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Append-only memo table shared between threads.
pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash, V> Memo<K, V> {
    fn new() -> Self {
        Memo { map: RwLock::new(HashMap::new()) }
    }

    pub(crate) fn get(&self, k: &K) -> Option<Arc<V>> {
        self.map.read().expect("memo lock").get(k).cloned()
    }

    pub(crate) fn insert(&self, k: K, v: V) -> Arc<V> {
        let mut w = self.map.write().expect("memo lock");
        w.entry(k).or_insert_with(|| Arc::new(v)).clone()
    }

    pub(crate) fn len(&self) -> usize {
        self.map.read().expect("memo lock").len()
    }
}

type ModeKey = (u32, i32, PbwMonomial);
type CompositeKey = (PbwMonomial, i32, PbwMonomial);

/// Truncated vacuum module `V(k,0)` with weights up to the working cutoff.
pub struct VacuumSpace {
    algebra: Arc<LieSuperalgebra>,
    level: i64,
    cutoff: u32,
    /// Basis blocks per weight, keyed by charge.
    blocks: Memo<u32, BTreeMap<LatticeVec, Arc<Block>>>,
    modes: Memo<ModeKey, State>,
    pub(crate) composites: Memo<CompositeKey, State>,
    pub(crate) grams: Memo<(u32, LatticeVec), Vec<Vec<Q>>>,
}

impl std::fmt::Debug for VacuumSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VacuumSpace")
            .field("algebra", &self.algebra.kind())
            .field("level", &self.level)
            .field("cutoff", &self.cutoff)
            .finish()
    }
}

/// Sets up `V(k,0)` truncated at conformal weight `cutoff`.
pub fn init_space(algebra: impl Into<Arc<LieSuperalgebra>>, level: i64, cutoff: u32) -> Result<VacuumSpace> {
    VacuumSpace::new(algebra, level, cutoff)
}

impl VacuumSpace {
    pub fn new(algebra: impl Into<Arc<LieSuperalgebra>>, level: i64, cutoff: u32) -> Result<Self> {
        if level <= 0 {
            return Err(Error::InvalidArgument(format!("level must be a positive integer, got {level}")));
        }
        if cutoff == 0 {
            return Err(Error::InvalidArgument("working cutoff must be at least 1".into()));
        }
        Ok(VacuumSpace {
            algebra: algebra.into(),
            level,
            cutoff,
            blocks: Memo::new(),
            modes: Memo::new(),
            composites: Memo::new(),
            grams: Memo::new(),
        })
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> Arc<LieSuperalgebra> {
        self.algebra.clone()
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Number of memoized mode actions (diagnostics).
    pub fn cache_sizes(&self) -> (usize, usize, usize) {
        (self.modes.len(), self.composites.len(), self.grams.len())
    }

    fn check_weight(&self, w: u32) -> Result<()> {
        if w > self.cutoff {
            Err(Error::CutoffExceeded { requested: w, cutoff: self.cutoff })
        } else {
            Ok(())
        }
    }

    /// All blocks of weight `w`, keyed by charge.
    pub fn blocks_at(&self, w: u32) -> Result<Arc<BTreeMap<LatticeVec, Arc<Block>>>> {
        self.check_weight(w)?;
        if let Some(b) = self.blocks.get(&w) {
            return Ok(b);
        }
        let alg = &*self.algebra;
        // all creation modes of depth ≤ w in canonical order
        let mut slots: Vec<Mode> = (1..=w).flat_map(|d| (0..alg.dim()).map(move |i| Mode::new(i, d))).collect();
        slots.sort();
        let mut grouped: BTreeMap<LatticeVec, Vec<PbwMonomial>> = BTreeMap::new();
        let mut cur = Vec::new();
        enumerate_rec(alg, &slots, 0, w, &mut cur, &mut grouped);
        let map = grouped.into_iter().map(|(c, ms)| (c.clone(), Arc::new(Block::new(w, c, ms)))).collect();
        Ok(self.blocks.insert(w, map))
    }

    pub fn block(&self, w: u32, charge: &LatticeVec) -> Result<Arc<Block>> {
        let all = self.blocks_at(w)?;
        Ok(all.get(charge).cloned().unwrap_or_else(|| Arc::new(Block::new(w, charge.clone(), Vec::new()))))
    }

    /// Canonical monomials of weight `w` and charge `λ`, sorted by key.
    pub fn enumerate_basis(&self, w: u32, charge: &LatticeVec) -> Result<Vec<PbwMonomial>> {
        Ok(self.block(w, charge)?.monomials().to_vec())
    }

    pub fn block_dim(&self, w: u32, charge: &LatticeVec) -> Result<usize> {
        Ok(self.block(w, charge)?.dim())
    }

    /// Total dimension of the weight-`w` subspace.
    pub fn weight_dim(&self, w: u32) -> Result<usize> {
        Ok(self.blocks_at(w)?.values().map(|b| b.dim()).sum())
    }

    /// Coordinates of a homogeneous state in the block basis.
    pub fn coordinates(&self, s: &State, w: u32, charge: &LatticeVec) -> Result<SparseVec> {
        let block = self.block(w, charge)?;
        let mut out = Vec::with_capacity(s.len());
        for (m, x) in s.terms() {
            let i = block
                .position(m)
                .ok_or_else(|| Error::InternalConsistency(format!("monomial {m} not in block ({w}, {charge})")))?;
            out.push((i, x.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn from_coordinates(&self, coords: &SparseVec, w: u32, charge: &LatticeVec) -> Result<State> {
        let block = self.block(w, charge)?;
        let mut s = State::zero();
        for (i, x) in coords {
            let m = block.monomials().get(*i).ok_or(Error::DimensionMismatch { expected: block.dim(), found: *i })?;
            s.add_term(m.clone(), x.clone());
        }
        Ok(s)
    }

    /// `b(n)` applied to a single canonical monomial, memoized.
    pub fn apply_basis_mode(&self, b: usize, n: i32, mono: &PbwMonomial) -> Arc<State> {
        let key = (b as u32, n, mono.clone());
        if let Some(s) = self.modes.get(&key) {
            return s;
        }
        let s = self.compute_basis_mode(b, n, mono);
        self.modes.insert(key, s)
    }

    fn compute_basis_mode(&self, b: usize, n: i32, mono: &PbwMonomial) -> State {
        let wt = mono.weight() as i64;
        let target = wt - n as i64;
        if target < 0 {
            return State::zero();
        }
        if target > self.cutoff as i64 {
            return State::truncated_zero();
        }
        let alg = &*self.algebra;
        let k = q(self.level);
        if n >= 0 {
            let Some((first, rest)) = mono.split_first() else {
                return State::zero();
            };
            let c = first.index as usize;
            let m = first.depth as i32;
            let mut out = State::zero();
            // (−1)^{|b||c|} c(−m)[b(n) rest]
            let inner = self.apply_basis_mode(b, n, &rest);
            if !inner.is_zero() || inner.is_truncated() {
                let sign = q(alg.parity(b).koszul(alg.parity(c)) as i64);
                out.add_scaled(&self.apply_basis_mode_state(c, -m, &inner), &sign);
            }
            // [b,c](n−m) rest
            for (i, x) in alg.bracket_basis(b, c) {
                out.add_scaled(&self.apply_basis_mode(*i, n - m, &rest), x);
            }
            if n == m {
                let f = alg.form_basis(b, c);
                if !f.is_zero() {
                    let mut r = State::monomial(rest);
                    r = r.scaled(&(f * &k * q(n as i64)));
                    out.add_scaled(&r, &Q::one());
                }
            }
            return out;
        }
        let new = Mode::new(b, (-n) as u32);
        let Some((first, rest)) = mono.split_first() else {
            return State::monomial(mono.prepend(new));
        };
        if new < first || (new == first && !alg.parity(b).is_odd()) {
            return State::monomial(mono.prepend(new));
        }
        let c = first.index as usize;
        let m1 = first.depth as i32;
        let half = crate::q_frac(1, 2);
        let mut out = State::zero();
        if new == first {
            // b(n)b(n) = ½[b,b](2n) for odd b and n < 0
            for (i, x) in alg.bracket_basis(b, b) {
                out.add_scaled(&self.apply_basis_mode(*i, 2 * n, &rest), &(x * &half));
            }
            return out;
        }
        let inner = self.apply_basis_mode(b, n, &rest);
        let sign = q(alg.parity(b).koszul(alg.parity(c)) as i64);
        out.add_scaled(&self.apply_basis_mode_state(c, -m1, &inner), &sign);
        for (i, x) in alg.bracket_basis(b, c) {
            out.add_scaled(&self.apply_basis_mode(*i, n - m1, &rest), x);
        }
        out
    }

    /// `b(n)` applied to a state.
    pub fn apply_basis_mode_state(&self, b: usize, n: i32, v: &State) -> State {
        let mut out = State::zero();
        if v.is_truncated() {
            out.mark_truncated();
        }
        for (m, x) in v.terms() {
            out.add_scaled(&self.apply_basis_mode(b, n, m), x);
        }
        out
    }

    /// `a(n)v` for an arbitrary algebra element `a`.
    pub fn apply_mode(&self, a: &AlgebraElement, n: i32, v: &State) -> Result<State> {
        if !self.algebra.owns(a) {
            return Err(Error::InvalidArgument("element belongs to a different algebra".into()));
        }
        let mut out = State::zero();
        if v.is_truncated() {
            out.mark_truncated();
        }
        for (b, x) in a.terms() {
            out.add_scaled(&self.apply_basis_mode_state(b, n, v), x);
        }
        Ok(out)
    }

    /// Normal-orders `b₁(n₁)⋯b_r(n_r)𝟙`; the word is listed left to right and
    /// applied right to left.
    pub fn straighten(&self, word: &[(usize, i32)]) -> State {
        let mut s = State::vacuum();
        for &(b, n) in word.iter().rev() {
            s = self.apply_basis_mode_state(b, n, &s);
        }
        s
    }

    /// Like [`VacuumSpace::straighten`] for general algebra elements.
    pub fn straighten_elements(&self, word: &[(AlgebraElement, i32)]) -> Result<State> {
        let mut s = State::vacuum();
        for (a, n) in word.iter().rev() {
            s = self.apply_mode(a, *n, &s)?;
        }
        Ok(s)
    }

    /// `b(−m)` for the basis element `b`, as a monomial state.
    pub fn generator(&self, b: usize, m: u32) -> State {
        self.straighten(&[(b, -(m as i32))])
    }
}

fn enumerate_rec(
    alg: &LieSuperalgebra,
    slots: &[Mode],
    from: usize,
    remaining: u32,
    cur: &mut Vec<Mode>,
    out: &mut BTreeMap<LatticeVec, Vec<PbwMonomial>>,
) {
    if remaining == 0 {
        let m = PbwMonomial(cur.clone());
        out.entry(m.charge(alg)).or_default().push(m);
        return;
    }
    for i in from..slots.len() {
        let s = slots[i];
        if s.depth > remaining {
            continue;
        }
        cur.push(s);
        let next = if alg.parity(s.index as usize).is_odd() { i + 1 } else { i };
        enumerate_rec(alg, slots, next, remaining - s.depth, cur, out);
        cur.pop();
    }
}
