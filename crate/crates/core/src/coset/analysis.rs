use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::blocks::commutant_basis;
use super::closure::{closure, Action, BlockTargets, ClosureResult, DimStatus, GradedDims};
use super::generators::{charge_zero_seeds, parafermion_generators, GeneratorSet};
use crate::exactla::{self, Subspace};
use crate::superalgebra::{LatticeVec, LieSuperalgebra};
use crate::vacuum::{State, VacuumSpace};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealMethod {
    Radical,
    Closure,
    BothAgree,
}

/// The maximal ideal `J` computed as a form radical and as the closure of
/// the singular vector under raw modes.
#[derive(Clone, Debug)]
pub struct IdealJ {
    pub radical: BTreeMap<(u32, LatticeVec), Subspace>,
    pub closure_dims: BTreeMap<(u32, LatticeVec), usize>,
    pub method: IdealMethod,
    /// Blocks where the two computations disagree: `(w, λ, radical, closure)`.
    pub mismatches: Vec<(u32, LatticeVec, usize, usize)>,
}

/// Graded dimension tables of the charge-zero pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealModel {
    pub charge_zero: GradedDims,
    pub commutant: GradedDims,
    pub j_charge_zero: GradedDims,
    pub i_tilde: GradedDims,
    pub quotient: GradedDims,
    pub method: IdealMethod,
}

/// Everything computed for one `(g, k)` at report cutoff `W`, with working
/// cutoff `W + headroom`.
pub struct CosetAnalysis {
    space: VacuumSpace,
    report: u32,
    headroom: u32,
    generators: OnceLock<std::result::Result<GeneratorSet, String>>,
    commutant: Mutex<BTreeMap<u32, Arc<Subspace>>>,
    ideal_j: OnceLock<std::result::Result<Arc<IdealJ>, String>>,
    i_tilde: Mutex<BTreeMap<u32, Arc<Subspace>>>,
}

fn cached<T: Clone>(cell: &OnceLock<std::result::Result<T, String>>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    cell.get_or_init(|| f().map_err(|e| e.to_string())).clone().map_err(Error::InternalConsistency)
}

impl CosetAnalysis {
    pub fn new(algebra: impl Into<Arc<LieSuperalgebra>>, level: i64, report: u32, headroom: u32) -> Result<Self> {
        if report < 2 {
            return Err(Error::InvalidArgument(format!("report cutoff must be at least 2, got {report}")));
        }
        let space = VacuumSpace::new(algebra, level, report + headroom)?;
        Ok(CosetAnalysis {
            space,
            report,
            headroom,
            generators: OnceLock::new(),
            commutant: Mutex::new(BTreeMap::new()),
            ideal_j: OnceLock::new(),
            i_tilde: Mutex::new(BTreeMap::new()),
        })
    }

    /// Default headroom `k + 1`.
    pub fn with_default_headroom(algebra: impl Into<Arc<LieSuperalgebra>>, level: i64, report: u32) -> Result<Self> {
        let h = u32::try_from(level.max(0) + 1).map_err(|_| Error::InvalidArgument("level too large".into()))?;
        Self::new(algebra, level, report, h)
    }

    pub fn space(&self) -> &VacuumSpace {
        &self.space
    }

    pub fn algebra(&self) -> &LieSuperalgebra {
        self.space.algebra()
    }

    pub fn level(&self) -> i64 {
        self.space.level()
    }

    pub fn report_cutoff(&self) -> u32 {
        self.report
    }

    pub fn headroom(&self) -> u32 {
        self.headroom
    }

    pub fn working_cutoff(&self) -> u32 {
        self.space.cutoff()
    }

    pub fn zero_charge(&self) -> LatticeVec {
        LatticeVec::zero(self.algebra().rank())
    }

    pub fn generators(&self) -> Result<GeneratorSet> {
        cached(&self.generators, || parafermion_generators(&self.space))
    }

    /// `N_w` inside block `(w, 0)`.
    pub fn commutant(&self, w: u32) -> Result<Arc<Subspace>> {
        if let Some(s) = self.commutant.lock().expect("lock").get(&w) {
            return Ok(s.clone());
        }
        let s = Arc::new(commutant_basis(&self.space, w)?);
        self.commutant.lock().expect("lock").insert(w, s.clone());
        Ok(s)
    }

    pub fn charge_zero_dims(&self) -> Result<GradedDims> {
        let z = self.zero_charge();
        let d = (0..=self.report).map(|w| Ok((w, self.space.block_dim(w, &z)?))).collect::<Result<Vec<_>>>()?;
        Ok(GradedDims::exact(d))
    }

    pub fn commutant_dims(&self) -> Result<GradedDims> {
        let d = (0..=self.report).map(|w| Ok((w, self.commutant(w)?.dim()))).collect::<Result<Vec<_>>>()?;
        Ok(GradedDims::exact(d))
    }

    /// `J` on every block of weight `≤ W`.
    ///
    /// Every element of `J` of weight `≤ W` is a PBW-ordered word (lowering
    /// modes first, then zero modes, then raising modes) applied to the
    /// singular vector, so the raw-mode closure never needs to pass above
    /// `W` and is run with `W` as its ceiling.
    pub fn ideal_j(&self) -> Result<Arc<IdealJ>> {
        cached(&self.ideal_j, || {
            let mut radical = BTreeMap::new();
            for w in 0..=self.report {
                for c in self.space.blocks_at(w)?.keys() {
                    radical.insert((w, c.clone()), self.space.gram_radical(w, c)?);
                }
            }
            let k1 = self.level() as u32 + 1;
            let mut closure_dims: BTreeMap<(u32, LatticeVec), usize> =
                radical.keys().map(|key| (key.clone(), 0)).collect();
            if k1 <= self.report {
                let sv = self.space.singular_vector()?;
                let cl = closure(&self.space, &[sv], Action::RawModes, self.report, self.report, None)?;
                for (key, s) in cl.blocks {
                    closure_dims.insert(key, s.dim());
                }
            }
            let mismatches: Vec<_> = radical
                .iter()
                .filter_map(|((w, c), r)| {
                    let cd = closure_dims.get(&(*w, c.clone())).copied().unwrap_or(0);
                    (cd != r.dim()).then(|| (*w, c.clone(), r.dim(), cd))
                })
                .collect();
            let method = if mismatches.is_empty() { IdealMethod::BothAgree } else { IdealMethod::Radical };
            Ok(Arc::new(IdealJ { radical, closure_dims, method, mismatches }))
        })
    }

    /// `Ĩ_w = J_w ∩ N_w` in block `(w, 0)`.
    pub fn i_tilde(&self, w: u32) -> Result<Arc<Subspace>> {
        if let Some(s) = self.i_tilde.lock().expect("lock").get(&w) {
            return Ok(s.clone());
        }
        let z = self.zero_charge();
        let j = self.ideal_j()?;
        let jw = match j.radical.get(&(w, z.clone())) {
            Some(s) => s.clone(),
            None => self.space.gram_radical(w, &z)?,
        };
        let n = self.commutant(w)?;
        let s = Arc::new(exactla::intersect(&jw, &n)?);
        self.i_tilde.lock().expect("lock").insert(w, s.clone());
        Ok(s)
    }

    pub fn ideal_model(&self) -> Result<IdealModel> {
        let z = self.zero_charge();
        let j = self.ideal_j()?;
        let mut jz = Vec::new();
        let mut it = Vec::new();
        let mut kq = Vec::new();
        for w in 0..=self.report {
            jz.push((w, j.radical.get(&(w, z.clone())).map_or(0, |s| s.dim())));
            let n = self.commutant(w)?.dim();
            let i = self.i_tilde(w)?.dim();
            it.push((w, i));
            kq.push((w, n - i));
        }
        Ok(IdealModel {
            charge_zero: self.charge_zero_dims()?,
            commutant: self.commutant_dims()?,
            j_charge_zero: GradedDims::exact(jz),
            i_tilde: GradedDims::exact(it),
            quotient: GradedDims::exact(kq),
            method: j.method,
        })
    }

    /// `dim K_w = dim N_w − dim Ĩ_w`.
    pub fn quotient_dims(&self) -> Result<GradedDims> {
        Ok(self.ideal_model()?.quotient)
    }

    fn charge_zero_targets(&self, dims: &GradedDims) -> BlockTargets {
        let z = self.zero_charge();
        dims.entries.iter().map(|(w, e)| ((*w, z.clone()), e.dim)).collect()
    }

    /// Closure of `𝟙` under modes of `acting`, targeting the given
    /// charge-zero dimensions.
    pub fn generate(&self, acting: &[State], target: Option<&GradedDims>) -> Result<ClosureResult> {
        let t = target.map(|d| self.charge_zero_targets(d));
        closure(
            &self.space,
            &[State::vacuum()],
            Action::Composite(acting),
            self.working_cutoff(),
            self.report,
            t.as_ref(),
        )
    }

    pub fn charge_zero_closure(&self) -> Result<ClosureResult> {
        let seeds: Vec<State> = charge_zero_seeds(&self.space).into_iter().map(|(_, s)| s).collect();
        self.generate(&seeds, Some(&self.charge_zero_dims()?))
    }

    pub fn generator_closure(&self) -> Result<ClosureResult> {
        self.generate(&self.generators()?.states(), Some(&self.commutant_dims()?))
    }

    /// `e_{−α}(0)^{p}e_α(−1)^{p}𝟙`.
    pub fn lowered_power(&self, root: &LatticeVec, p: u32) -> Result<State> {
        if p > self.working_cutoff() {
            return Err(Error::CutoffExceeded { requested: p, cutoff: self.working_cutoff() });
        }
        let c = self.algebra().root_generators(root)?;
        let mut s = self.space.straighten(&vec![(c.e_pos, -1); p as usize]);
        for _ in 0..p {
            s = self.space.apply_basis_mode_state(c.e_neg, 0, &s);
        }
        Ok(s)
    }

    /// `v₀ = e_{−θ}(0)^{k+1}e_θ(−1)^{k+1}𝟙`.
    pub fn v0(&self) -> Result<State> {
        let theta = self.algebra().root_datum().highest_root.clone();
        self.lowered_power(&theta, self.level() as u32 + 1)
    }

    /// Whether a charge-zero state of weight `≤ W` lies in `Ĩ`.
    pub fn in_i_tilde(&self, s: &State) -> Result<bool> {
        if s.is_zero() {
            return Ok(true);
        }
        let w = s.weight().ok_or_else(|| Error::InvalidArgument("state is not homogeneous".into()))?;
        if w > self.report {
            return Err(Error::CutoffExceeded { requested: w, cutoff: self.report });
        }
        let coords = self.space.coordinates(s, w, &self.zero_charge())?;
        Ok(self.i_tilde(w)?.contains(&coords))
    }

    /// Closure of `{v₀}` under modes of the commutant generators.
    pub fn v0_closure(&self) -> Result<ClosureResult> {
        let v0 = self.v0()?;
        let target =
            GradedDims::exact((0..=self.report).map(|w| Ok((w, self.i_tilde(w)?.dim()))).collect::<Result<Vec<_>>>()?);
        let t = self.charge_zero_targets(&target);
        let gens = self.generators()?.states();
        let starts = if v0.weight().is_some_and(|w| w <= self.working_cutoff()) { vec![v0] } else { vec![] };
        closure(&self.space, &starts, Action::Composite(&gens), self.working_cutoff(), self.report, Some(&t))
    }

    /// `dim((C + Ĩ)_w) − dim Ĩ_w` for a closure `C` inside charge zero.
    pub fn image_in_quotient(&self, c: &ClosureResult) -> Result<GradedDims> {
        let z = self.zero_charge();
        let mut out = Vec::new();
        for w in 0..=self.report {
            let i = self.i_tilde(w)?;
            let d = match c.block(w, &z) {
                Some(s) => exactla::sum(s, &i)?.dim() - i.dim(),
                None => 0,
            };
            out.push((w, d));
        }
        Ok(GradedDims {
            entries: out
                .into_iter()
                .map(|(w, d)| (w, super::closure::DimEntry { dim: d, status: DimStatus::LowerBound }))
                .collect(),
        })
    }
}
