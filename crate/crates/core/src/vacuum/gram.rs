use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use super::VacuumSpace;
use crate::exactla::{self, SparseMatrix, Subspace};
use crate::superalgebra::LatticeVec;
use crate::{Result, Q};

impl VacuumSpace {
    /// Gram matrix of the contravariant form on block `(w, λ)`, rows and
    /// columns in [`VacuumSpace::enumerate_basis`] order.
    ///
    /// The form is fixed by `⟨𝟙,𝟙⟩ = 1` and `⟨a(−n)u, v⟩ = ⟨u, η(a)(n)v⟩`.
    pub fn contravariant_gram(&self, w: u32, charge: &LatticeVec) -> Result<Arc<Vec<Vec<Q>>>> {
        let key = (w, charge.clone());
        if let Some(g) = self.grams.get(&key) {
            return Ok(g);
        }
        let block = self.block(w, charge)?;
        let dim = block.dim();
        if w == 0 {
            let g = if dim == 1 { vec![vec![Q::from_integer(1.into())]] } else { Vec::new() };
            return Ok(self.grams.insert(key, g));
        }
        let alg = self.algebra();
        // rows grouped by their leading factor c(−m)
        let mut groups: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
        for (r, m) in block.monomials().iter().enumerate() {
            let (first, _) = m.split_first().expect("positive weight");
            groups.entry((first.index, first.depth)).or_default().push(r);
        }
        let mut g = vec![vec![Q::zero(); dim]; dim];
        for ((c, depth), rows) in groups {
            let c = c as usize;
            let lower_charge = charge.sub(alg.weight(c));
            let lower_w = w - depth;
            let lower = self.block(lower_w, &lower_charge)?;
            let lower_gram = self.contravariant_gram(lower_w, &lower_charge)?;
            let eta_c = alg.eta(&alg.basis_element(c))?;
            // coordinates of η(c)(depth)v in the lower block, per column v
            let cols: Vec<Vec<(usize, Q)>> = block
                .monomials()
                .par_iter()
                .map(|v| {
                    let mut acc: Vec<(usize, Q)> = Vec::new();
                    for (b, x) in eta_c.terms() {
                        let img = self.apply_basis_mode(b, depth as i32, v);
                        for (m, y) in img.terms() {
                            let i = lower.position(m).expect("mode action respects grading");
                            acc.push((i, x * y));
                        }
                    }
                    acc
                })
                .collect();
            for r in rows {
                let (_, rest) = block.monomials()[r].split_first().expect("positive weight");
                let ur = lower.position(&rest).expect("rest lies in the lower block");
                let grow = &lower_gram[ur];
                for (v, col) in cols.iter().enumerate() {
                    let mut s = Q::zero();
                    for (i, x) in col {
                        if !grow[*i].is_zero() {
                            s += x * &grow[*i];
                        }
                    }
                    g[r][v] = s;
                }
            }
        }
        Ok(self.grams.insert(key, g))
    }

    /// Right radical of the contravariant form on block `(w, λ)`; this is the
    /// maximal-submodule component in that block.
    pub fn gram_radical(&self, w: u32, charge: &LatticeVec) -> Result<Subspace> {
        let g = self.contravariant_gram(w, charge)?;
        let dim = self.block_dim(w, charge)?;
        if dim == 0 {
            return Ok(Subspace::zero(0));
        }
        exactla::radical(&SparseMatrix::from_dense(&g))
    }
}
