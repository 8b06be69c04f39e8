use rayon::prelude::*;

use crate::exactla::{self, SparseMatrix, SparseVec, Subspace};
use crate::superalgebra::LatticeVec;
use crate::vacuum::{State, VacuumSpace};
use crate::{Error, Result};

/// The whole block `(w, λ)` as a coordinate subspace.
pub fn charge_block(space: &VacuumSpace, w: u32, charge: &LatticeVec) -> Result<Subspace> {
    Ok(Subspace::full(space.block_dim(w, charge)?))
}

/// `N_w`: vectors of block `(w, 0)` killed by every `h_i(m)`, `1 ≤ m ≤ w`.
pub fn commutant_basis(space: &VacuumSpace, w: u32) -> Result<Subspace> {
    let alg = space.algebra();
    let zero = LatticeVec::zero(alg.rank());
    let block = space.block(w, &zero)?;
    let dim = block.dim();
    let mut stacked = SparseMatrix::zeros(0, dim);
    for &h in alg.cartan() {
        for m in 1..=w {
            let lower = space.block(w - m, &zero)?;
            // columns: images of the source basis vectors
            let cols: Vec<SparseVec> = block
                .monomials()
                .par_iter()
                .map(|v| {
                    let img = space.apply_basis_mode(h, m as i32, v);
                    let mut c: SparseVec =
                        img.terms().map(|(mono, x)| (lower.position(mono).expect("grading"), x.clone())).collect();
                    c.sort_by_key(|(i, _)| *i);
                    c
                })
                .collect();
            let t = SparseMatrix::from_rows(lower.dim(), cols)?.transpose();
            stacked.vstack(t)?;
        }
    }
    Ok(exactla::kernel(&stacked))
}

/// Weight and charge of a nonzero homogeneous state.
pub fn grade_of(space: &VacuumSpace, s: &State) -> Result<(u32, LatticeVec)> {
    let alg = space.algebra();
    let mut it = s.terms();
    let (m0, _) = it.next().ok_or_else(|| Error::InvalidArgument("zero state has no grade".into()))?;
    let w = m0.weight();
    let c = m0.charge(alg);
    for (m, _) in it {
        if m.weight() != w || m.charge(alg) != c {
            return Err(Error::InvalidArgument("state is not homogeneous".into()));
        }
    }
    Ok((w, c))
}

/// Whether `h(m)s = 0` for every Cartan basis element and `0 ≤ m ≤ max_m`.
/// Returns the first offending `(h, m)` otherwise.
pub fn heisenberg_annihilated(space: &VacuumSpace, s: &State, max_m: u32) -> Option<(usize, u32)> {
    for &h in space.algebra().cartan() {
        for m in 0..=max_m {
            if !space.apply_basis_mode_state(h, m as i32, s).is_zero() {
                return Some((h, m));
            }
        }
    }
    None
}
