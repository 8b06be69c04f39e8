use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::blocks::grade_of;
use crate::exactla::{EchelonBuilder, Subspace};
use crate::superalgebra::LatticeVec;
use crate::vacuum::{State, VacuumSpace};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimStatus {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub dim: usize,
    pub status: DimStatus,
}

/// Dimensions per conformal weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub entries: BTreeMap<u32, DimEntry>,
}

impl GradedDims {
    pub fn exact(dims: impl IntoIterator<Item = (u32, usize)>) -> Self {
        Self::with_status(dims, DimStatus::Exact)
    }

    pub fn lower_bound(dims: impl IntoIterator<Item = (u32, usize)>) -> Self {
        Self::with_status(dims, DimStatus::LowerBound)
    }

    fn with_status(dims: impl IntoIterator<Item = (u32, usize)>, status: DimStatus) -> Self {
        GradedDims { entries: dims.into_iter().map(|(w, dim)| (w, DimEntry { dim, status })).collect() }
    }

    pub fn dim(&self, w: u32) -> Option<usize> {
        self.entries.get(&w).map(|e| e.dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.entries.values().map(|e| e.dim).collect()
    }
}

/// Operators a closure is taken under.
#[derive(Clone, Copy, Debug)]
pub enum Action<'a> {
    /// Raw modes `a(n)` of every basis element of the algebra.
    RawModes,
    /// Modes `u_m` of the listed states.
    Composite(&'a [State]),
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// Summed over charges, weights up to the report cutoff.
    pub dims: GradedDims,
    /// Closed subspace per `(weight, charge)` block, all weights reached.
    pub blocks: BTreeMap<(u32, LatticeVec), Subspace>,
    /// Number of batches processed.
    pub sweeps: usize,
    /// The queue emptied: nothing more is produced inside the working cutoff.
    pub stabilized: bool,
    /// Every target block was reached, so work stopped early.
    pub met_target: bool,
}

impl ClosureResult {
    pub fn block(&self, w: u32, charge: &LatticeVec) -> Option<&Subspace> {
        self.blocks.get(&(w, charge.clone()))
    }
}

/// Target dimensions per block for early exit.
pub type BlockTargets = BTreeMap<(u32, LatticeVec), usize>;

/// Smallest graded subspace containing `starts` and stable under `action`,
/// computed inside weights `≤ max_weight`.
pub fn closure(
    space: &VacuumSpace,
    starts: &[State],
    action: Action<'_>,
    max_weight: u32,
    report: u32,
    target: Option<&BlockTargets>,
) -> Result<ClosureResult> {
    if max_weight > space.cutoff() {
        return Err(Error::CutoffExceeded { requested: max_weight, cutoff: space.cutoff() });
    }
    if report > max_weight {
        return Err(Error::CutoffExceeded { requested: report, cutoff: max_weight });
    }
    let alg = space.algebra();
    let ops: Vec<(State, u32, LatticeVec)> = match action {
        Action::RawModes => Vec::new(),
        Action::Composite(us) => us
            .iter()
            .filter(|u| !u.is_zero())
            .map(|u| {
                if u.is_truncated() {
                    return Err(Error::InvalidArgument("acting state carries the truncation flag".into()));
                }
                let (w, c) = grade_of(space, u)?;
                Ok((u.clone(), w, c))
            })
            .collect::<Result<_>>()?,
    };

    let mut builders: BTreeMap<(u32, LatticeVec), EchelonBuilder> = BTreeMap::new();
    let mut queue: BTreeMap<u32, VecDeque<(LatticeVec, State)>> = BTreeMap::new();

    let insert = |builders: &mut BTreeMap<(u32, LatticeVec), EchelonBuilder>,
                  queue: &mut BTreeMap<u32, VecDeque<(LatticeVec, State)>>,
                  w: u32,
                  c: LatticeVec,
                  s: &State|
     -> Result<()> {
        let coords = space.coordinates(s, w, &c)?;
        let dim = space.block_dim(w, &c)?;
        let b = builders.entry((w, c.clone())).or_insert_with(|| EchelonBuilder::new(dim));
        if let Some(row) = b.insert(&coords) {
            let st = space.from_coordinates(&row, w, &c)?;
            queue.entry(w).or_default().push_back((c, st));
        }
        Ok(())
    };

    for s in starts {
        if s.is_truncated() {
            return Err(Error::InvalidArgument("seed carries the truncation flag".into()));
        }
        if s.is_zero() {
            continue;
        }
        let (w, c) = grade_of(space, s)?;
        if w > max_weight {
            return Err(Error::CutoffExceeded { requested: w, cutoff: max_weight });
        }
        insert(&mut builders, &mut queue, w, c, s)?;
    }

    let reached = |builders: &BTreeMap<(u32, LatticeVec), EchelonBuilder>| -> bool {
        match target {
            Some(t) => t.iter().all(|(key, &d)| builders.get(key).map_or(0, |b| b.dim()) >= d),
            None => false,
        }
    };

    let mut sweeps = 0;
    let mut met_target = reached(&builders);
    while !met_target {
        let Some(mut entry) = queue.first_entry() else { break };
        let w = *entry.key();
        let batch: Vec<(LatticeVec, State)> = entry.get_mut().drain(..).collect();
        entry.remove();
        sweeps += 1;

        // enumerate (item, operator, mode) triples in a fixed order
        let mut tasks: Vec<(usize, usize, i32)> = Vec::new();
        for (i, _) in batch.iter().enumerate() {
            match action {
                Action::RawModes => {
                    for b in 0..alg.dim() {
                        for n in (w as i32 - max_weight as i32)..=(w as i32) {
                            tasks.push((i, b, n));
                        }
                    }
                }
                Action::Composite(_) => {
                    for (o, (_, d, _)) in ops.iter().enumerate() {
                        let top = (w + d) as i32 - 1;
                        for m in (top - max_weight as i32)..=top {
                            tasks.push((i, o, m));
                        }
                    }
                }
            }
        }
        let results: Vec<Option<(u32, LatticeVec, State)>> = tasks
            .par_iter()
            .map(|&(i, o, m)| {
                let (c, v) = &batch[i];
                let (r, rc) = match action {
                    Action::RawModes => (space.apply_basis_mode_state(o, m, v), c.add(alg.weight(o))),
                    Action::Composite(_) => {
                        let (u, _, uc) = &ops[o];
                        (space.composite_mode(u, m, v), c.add(uc))
                    }
                };
                debug_assert!(!r.is_truncated(), "mode range stays inside the cutoff");
                if r.is_zero() {
                    return None;
                }
                let rw = r.weight().expect("modes preserve homogeneity");
                Some((rw, rc, r))
            })
            .collect();
        for (rw, rc, r) in results.into_iter().flatten() {
            insert(&mut builders, &mut queue, rw, rc, &r)?;
        }
        met_target = reached(&builders);
    }
    let stabilized = queue.values().all(|q| q.is_empty());

    let mut dims: BTreeMap<u32, usize> = (0..=report).map(|w| (w, 0)).collect();
    for ((w, _), b) in &builders {
        if *w <= report {
            *dims.get_mut(w).expect("weight in range") += b.dim();
        }
    }
    let blocks = builders.into_iter().map(|(k, b)| (k, b.to_subspace())).collect();
    Ok(ClosureResult { dims: GradedDims::lower_bound(dims), blocks, sweeps, stabilized, met_target })
}
