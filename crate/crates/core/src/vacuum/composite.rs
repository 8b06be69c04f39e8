use std::sync::Arc;

use num_bigint::BigInt;

use super::{PbwMonomial, State, VacuumSpace};
use crate::superalgebra::Parity;
use crate::{Error, Result, Q};

fn binomial(n: i64, k: i64) -> Q {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for j in 0..k {
        num *= n - j;
        den *= j + 1;
    }
    Q::new(num, den)
}

impl VacuumSpace {
    /// `u_m v` for canonical monomials, memoized.
    fn composite_mono(&self, u: &PbwMonomial, m: i32, v: &PbwMonomial) -> Arc<State> {
        let key = (u.clone(), m, v.clone());
        if let Some(s) = self.composites.get(&key) {
            return s;
        }
        let s = self.compute_composite(u, m, v);
        self.composites.insert(key, s)
    }

    fn compute_composite(&self, u: &PbwMonomial, m: i32, v: &PbwMonomial) -> State {
        let target = u.weight() as i64 + v.weight() as i64 - m as i64 - 1;
        if target < 0 {
            return State::zero();
        }
        if target > self.cutoff() as i64 {
            return State::truncated_zero();
        }
        let Some((first, rest)) = u.split_first() else {
            return if m == -1 { State::monomial(v.clone()) } else { State::zero() };
        };
        let alg = self.algebra();
        let a = first.index as usize;
        let s = first.depth as i64;
        let wr = rest.weight() as i64;
        let wv = v.weight() as i64;
        let mut out = State::zero();
        // Σ_i C(s+i−1,i) a(−s−i)(rest_{m+i} v)
        let mut i = 0i64;
        while wr + wv - (m as i64 + i) > 0 {
            let inner = self.composite_mono(&rest, m + i as i32, v);
            if !inner.is_zero() || inner.is_truncated() {
                let t = self.apply_basis_mode_state(a, (-s - i) as i32, &inner);
                out.add_scaled(&t, &binomial(s + i - 1, i));
            }
            i += 1;
        }
        // −(−1)^{s+|a||rest|} Σ_i C(s+i−1,i) rest_{m−s−i}(a(i) v)
        let koszul = alg.parity(a).koszul(rest.parity(alg)) as i64;
        let sign = if s % 2 == 0 { -koszul } else { koszul };
        for i in 0..=wv {
            let av = self.apply_basis_mode(a, i as i32, v);
            if av.is_zero() && !av.is_truncated() {
                continue;
            }
            let t = self.composite_state_mono(&rest, m - s as i32 - i as i32, &av);
            out.add_scaled(&t, &(binomial(s + i - 1, i) * Q::from_integer(sign.into())));
        }
        out
    }

    fn composite_state_mono(&self, u: &PbwMonomial, m: i32, v: &State) -> State {
        let mut out = State::zero();
        if v.is_truncated() {
            out.mark_truncated();
        }
        for (vm, x) in v.terms() {
            out.add_scaled(&self.composite_mono(u, m, vm), x);
        }
        out
    }

    /// `u_m v`, the `m`-th mode of the vertex operator of `u` applied to `v`.
    pub fn composite_mode(&self, u: &State, m: i32, v: &State) -> State {
        let mut out = State::zero();
        if u.is_truncated() || v.is_truncated() {
            out.mark_truncated();
        }
        for (um, x) in u.terms() {
            for (vm, y) in v.terms() {
                out.add_scaled(&self.composite_mono(um, m, vm), &(x * y));
            }
        }
        out
    }

    /// [`VacuumSpace::composite_mode`] that refuses to discard anything.
    pub fn composite_mode_strict(&self, u: &State, m: i32, v: &State) -> Result<State> {
        let wu = u.max_weight().unwrap_or(0) as i64;
        let wv = v.max_weight().unwrap_or(0) as i64;
        let target = wu + wv - m as i64 - 1;
        if target > self.cutoff() as i64 {
            return Err(Error::CutoffExceeded { requested: target as u32, cutoff: self.cutoff() });
        }
        let r = self.composite_mode(u, m, v);
        if r.is_truncated() {
            return Err(Error::CutoffExceeded { requested: target.max(0) as u32, cutoff: self.cutoff() });
        }
        Ok(r)
    }

    /// Parity of a homogeneous state (even for zero).
    pub fn state_parity(&self, s: &State) -> Parity {
        s.terms().next().map(|(m, _)| m.parity(self.algebra())).unwrap_or(Parity::Even)
    }
}
