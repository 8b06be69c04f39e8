use super::{State, VacuumSpace};
use crate::superalgebra::AlgebraKind;
use crate::{q, q_frac, Error, Result, Q};

impl VacuumSpace {
    /// The shift `k + h^∨` in the Sugawara prefactor (`k + n + ½` for
    /// `osp(1|2n)`, `k + 2` for `sl2`).
    pub fn sugawara_shift(&self) -> Q {
        match self.algebra().kind() {
            AlgebraKind::Osp(n) => q(self.level()) + q(n as i64) + q_frac(1, 2),
            AlgebraKind::Sl2 => q(self.level() + 2),
        }
    }

    /// Central charge `k·sdim(g)/(k + h^∨)` of the Sugawara vector.
    pub fn sugawara_central_charge(&self) -> Q {
        q(self.level()) * q(self.algebra().sdim()) / self.sugawara_shift()
    }

    fn require_weight_two(&self) -> Result<()> {
        if self.cutoff() < 2 {
            Err(Error::CutoffExceeded { requested: 2, cutoff: self.cutoff() })
        } else {
            Ok(())
        }
    }

    /// `Σ_{ij} G⁻¹_{ij} h_i(−1)h_j(−1)𝟙`, the Cartan part of the Casimir.
    fn cartan_casimir(&self) -> State {
        let alg = self.algebra();
        let ginv = alg.cartan_gram_inverse();
        let mut s = State::zero();
        for (i, &hi) in alg.cartan().iter().enumerate() {
            for (j, &hj) in alg.cartan().iter().enumerate() {
                s.add_scaled(&self.straighten(&[(hi, -1), (hj, -1)]), &ginv[i][j]);
            }
        }
        s
    }

    /// Sugawara conformal vector `ω_aff`.
    pub fn sugawara(&self) -> Result<State> {
        self.require_weight_two()?;
        let alg = self.algebra();
        let half = q_frac(1, 2);
        let mut s = self.cartan_casimir();
        for c in alg.chevalley() {
            let len = alg.pairing(&c.root, &c.root) * &half;
            s.add_scaled(&self.straighten(&[(c.e_pos, -1), (c.e_neg, -1)]), &len);
            s.add_scaled(&self.straighten(&[(c.e_neg, -1), (c.e_pos, -1)]), &len);
            if let Some((xp, xm)) = c.odd {
                s.add_scaled(&self.straighten(&[(xp, -1), (xm, -1)]), &-half.clone());
                s.add_scaled(&self.straighten(&[(xm, -1), (xp, -1)]), &half);
            }
        }
        Ok(s.scaled(&(Q::from_integer(1.into()) / (q(2) * self.sugawara_shift()))))
    }

    /// Heisenberg conformal vector `ω_h = (1/2k)·Σ G⁻¹_{ij} h_i(−1)h_j(−1)𝟙`.
    pub fn heisenberg_virasoro(&self) -> Result<State> {
        self.require_weight_two()?;
        Ok(self.cartan_casimir().scaled(&q_frac(1, 2 * self.level())))
    }

    /// `e_θ(−1)^{k+1}𝟙`.
    pub fn singular_vector(&self) -> Result<State> {
        let w = self.level() as u32 + 1;
        if w > self.cutoff() {
            return Err(Error::CutoffExceeded { requested: w, cutoff: self.cutoff() });
        }
        let e = self.algebra().highest_root().e_pos;
        Ok(self.straighten(&vec![(e, -1); w as usize]))
    }

    /// `L(n)v = (ω_aff)_{n+1} v`.
    pub fn virasoro_mode(&self, n: i32, v: &State) -> Result<State> {
        Ok(self.composite_mode(&self.sugawara()?, n + 1, v))
    }
}
