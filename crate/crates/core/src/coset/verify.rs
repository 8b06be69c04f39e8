use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::analysis::{CosetAnalysis, IdealMethod};
use super::blocks::heisenberg_annihilated;
use super::closure::GradedDims;
use super::generators::GeneratorKind;
use crate::superalgebra::{build_osp, build_sl2, RootClass};
use crate::vacuum::{rational_string, State};
use crate::{q, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Relations,
    #[serde(rename = "thm_2_1")]
    Thm2_1,
    #[serde(rename = "thm_3_1")]
    Thm3_1,
    #[serde(rename = "remark_3_2")]
    Remark3_2,
    #[serde(rename = "thm_4_1")]
    Thm4_1,
    #[serde(rename = "lemma_4_2")]
    Lemma4_2,
    #[serde(rename = "prop_4_3")]
    Prop4_3,
    #[serde(rename = "prop_4_4")]
    Prop4_4,
}

impl CheckId {
    pub const ALL: [CheckId; 8] = [
        CheckId::Relations,
        CheckId::Thm2_1,
        CheckId::Thm3_1,
        CheckId::Remark3_2,
        CheckId::Thm4_1,
        CheckId::Lemma4_2,
        CheckId::Prop4_3,
        CheckId::Prop4_4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Relations => "relations",
            CheckId::Thm2_1 => "thm_2_1",
            CheckId::Thm3_1 => "thm_3_1",
            CheckId::Remark3_2 => "remark_3_2",
            CheckId::Thm4_1 => "thm_4_1",
            CheckId::Lemma4_2 => "lemma_4_2",
            CheckId::Prop4_3 => "prop_4_3",
            CheckId::Prop4_4 => "prop_4_4",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "verified-at-cutoff")]
    VerifiedAtCutoff,
    #[serde(rename = "inconclusive-raise-cutoff")]
    InconclusiveRaiseCutoff,
    #[serde(rename = "FAILED")]
    Failed,
}

impl Verdict {
    fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Failed, _) | (_, Failed) => Failed,
            (InconclusiveRaiseCutoff, _) | (_, InconclusiveRaiseCutoff) => InconclusiveRaiseCutoff,
            _ => VerifiedAtCutoff,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::VerifiedAtCutoff => "verified-at-cutoff",
            Verdict::InconclusiveRaiseCutoff => "inconclusive-raise-cutoff",
            Verdict::Failed => "FAILED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: u32,
    pub values: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: CheckId,
    pub verdict: Verdict,
    pub rows: Vec<WeightRow>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(id: CheckId) -> Self {
        CheckReport { id, verdict: Verdict::VerifiedAtCutoff, rows: Vec::new(), notes: Vec::new() }
    }

    fn column(&mut self, name: &str, dims: &GradedDims) {
        for (w, e) in &dims.entries {
            let row = match self.rows.iter_mut().find(|r| r.weight == *w) {
                Some(r) => r,
                None => {
                    self.rows.push(WeightRow { weight: *w, values: BTreeMap::new() });
                    self.rows.sort_by_key(|r| r.weight);
                    self.rows.iter_mut().find(|r| r.weight == *w).expect("just inserted")
                }
            };
            row.values.insert(name.to_string(), e.dim);
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.verdict = Verdict::Failed;
            self.notes.push(format!("violated: {what}"));
        }
    }

    fn combine(&mut self, v: Verdict) {
        self.verdict = self.verdict.and(v);
    }
}

/// Compares a closure lower bound with an exact target.
pub fn closure_verdict(lower: &GradedDims, target: &GradedDims) -> Verdict {
    let mut v = Verdict::VerifiedAtCutoff;
    for (w, e) in &target.entries {
        let got = lower.dim(*w).unwrap_or(0);
        if got > e.dim {
            return Verdict::Failed;
        }
        if got < e.dim {
            v = Verdict::InconclusiveRaiseCutoff;
        }
    }
    v
}

/// Runs one structure check.
pub fn verify(a: &CosetAnalysis, id: CheckId) -> Result<CheckReport> {
    let mut r = CheckReport::new(id);
    match id {
        CheckId::Relations => {
            let v = a.algebra().validate();
            for c in &v.checks {
                r.require(c.passed, format!("{} ({})", c.name, c.witness.clone().unwrap_or_default()));
                r.notes.push(format!("{}: {} instances", c.name, c.checked));
            }
        }
        CheckId::Thm2_1 => {
            let target = a.charge_zero_dims()?;
            let cl = a.charge_zero_closure()?;
            r.column("target", &target);
            r.column("closure", &cl.dims);
            r.combine(closure_verdict(&cl.dims, &target));
            r.notes.push(format!("sweeps {}, met target {}", cl.sweeps, cl.met_target));
        }
        CheckId::Thm3_1 => {
            let target = a.commutant_dims()?;
            let cl = a.generator_closure()?;
            r.column("target", &target);
            r.column("closure", &cl.dims);
            r.combine(closure_verdict(&cl.dims, &target));
            r.notes.push(format!("{} generators, sweeps {}", a.generators()?.len(), cl.sweeps));
        }
        CheckId::Thm4_1 => {
            let model = a.ideal_model()?;
            let cl = a.generator_closure()?;
            let image = a.image_in_quotient(&cl)?;
            r.column("target", &model.quotient);
            r.column("closure", &image);
            r.column("commutant", &model.commutant);
            r.column("i_tilde", &model.i_tilde);
            r.combine(closure_verdict(&image, &model.quotient));
        }
        CheckId::Remark3_2 => conformal_shape(a, &mut r)?,
        CheckId::Lemma4_2 => {
            let v0 = a.v0()?;
            let k1 = a.level() as u32 + 1;
            r.require(!v0.is_zero(), "v0 is nonzero");
            r.require(v0.weight() == Some(k1), "v0 has weight k+1");
            if k1 > a.report_cutoff() {
                r.combine(Verdict::InconclusiveRaiseCutoff);
                r.notes.push(format!("v0 has weight {k1} above the report cutoff"));
            } else {
                let coords = a.space().coordinates(&v0, k1, &a.zero_charge());
                r.require(coords.is_ok(), "v0 has charge 0");
                r.require(heisenberg_annihilated(a.space(), &v0, k1).is_none(), "v0 lies in the commutant");
                let inside = a.in_i_tilde(&v0)?;
                r.require(inside, "v0 lies in the ideal of the commutant");
            }
        }
        CheckId::Prop4_3 => {
            let model = a.ideal_model()?;
            let cl = a.v0_closure()?;
            r.column("target", &model.i_tilde);
            r.column("closure", &cl.dims);
            r.combine(closure_verdict(&cl.dims, &model.i_tilde));
        }
        CheckId::Prop4_4 => rank_one_subfamilies(a, &mut r)?,
    }
    if matches!(id, CheckId::Thm4_1 | CheckId::Prop4_3 | CheckId::Lemma4_2) {
        let j = a.ideal_j()?;
        if j.method != IdealMethod::BothAgree {
            r.combine(Verdict::Failed);
            r.notes.push(format!("radical and closure computations of J disagree on {} blocks", j.mismatches.len()));
        }
    }
    Ok(r)
}

fn conformal_shape(a: &CosetAnalysis, r: &mut CheckReport) -> Result<()> {
    let model = a.ideal_model()?;
    r.column("quotient", &model.quotient);
    r.require(model.quotient.dim(0) == Some(1), "dim K_0 = 1");
    r.require(model.quotient.dim(1) == Some(0), "dim K_1 = 0");
    let gens = a.generators()?;
    let s = a.space();
    for g in &gens.generators {
        match g.kind {
            GeneratorKind::Omega => {
                let sq = s.composite_mode(&g.state, 1, &g.state);
                r.require(sq == g.state.scaled(&q(2)), format!("{} satisfies L(0) = 2", g.name));
                let c = s.composite_mode(&g.state, 3, &g.state).ratio_to(&State::vacuum());
                if let Some(c) = c {
                    r.notes.push(format!("{}: central charge {}", g.name, rational_string(&(c * q(2)))));
                }
            }
            GeneratorKind::OmegaBar => {
                let sq = s.composite_mode(&g.state, 1, &g.state);
                let prop = sq.ratio_to(&g.state);
                r.require(prop.is_none(), format!("{}_1 {} is not a multiple of {}", g.name, g.name, g.name));
                let two = s.composite_mode(&g.state, 2, &g.state);
                r.notes.push(format!("{}: mode 2 square is zero: {}", g.name, two.is_zero()));
            }
            _ => {}
        }
    }
    Ok(())
}

fn rank_one_subfamilies(a: &CosetAnalysis, r: &mut CheckReport) -> Result<()> {
    let alg = a.algebra();
    let gens = a.generators()?;
    let k = a.level();
    for c in alg.chevalley() {
        let k_alpha = k * c.level_multiplier();
        let p = k_alpha as u32 + 1;
        let tag = format!("{}", c.root);
        if p > a.report_cutoff() {
            r.combine(Verdict::InconclusiveRaiseCutoff);
            r.notes.push(format!("{tag}: membership weight {p} above the report cutoff"));
        } else {
            let v = a.lowered_power(&c.root, p)?;
            r.require(!v.is_zero(), format!("{tag}: lowered power is nonzero"));
            r.require(a.in_i_tilde(&v)?, format!("{tag}: lowered power lies in the ideal"));
        }
        // rank-one oracle run
        let oracle = match (c.class, c.odd) {
            (RootClass::EvenLong, Some(_)) => {
                CosetAnalysis::new(build_osp(1)?, k_alpha, a.report_cutoff(), a.headroom())?
            }
            _ => CosetAnalysis::new(build_sl2(), k_alpha, a.report_cutoff(), a.headroom())?,
        };
        let oracle_n = oracle.commutant_dims()?;
        let oracle_k = oracle.quotient_dims()?;
        let sub: Vec<State> = gens.for_root(&c.root).into_iter().map(|g| g.state.clone()).collect();
        let cl = a.generate(&sub, Some(&oracle_n))?;
        let image = a.image_in_quotient(&cl)?;
        r.column(&format!("{tag}:closure"), &cl.dims);
        r.column(&format!("{tag}:oracle_n"), &oracle_n);
        r.column(&format!("{tag}:image"), &image);
        r.column(&format!("{tag}:oracle_k"), &oracle_k);
        r.combine(closure_verdict(&cl.dims, &oracle_n));
        let same = image.dims() == oracle_k.dims();
        if !same {
            r.combine(Verdict::InconclusiveRaiseCutoff);
            r.notes.push(format!("{tag}: quotient image differs from the rank-one quotient"));
        }
    }
    Ok(())
}
