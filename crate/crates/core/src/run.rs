//! Batch runs: configuration, report assembly and serialization.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coset::{verify, CheckId, CheckReport, CosetAnalysis, IdealModel, Verdict};
use crate::superalgebra::{build_osp, build_sl2, LieSuperalgebra};
use crate::{Error, Result, ENGINE_VERSION};

pub const SCHEMA: &str = "paraferm-report/1";

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "PARAFERM_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraChoice {
    Osp(usize),
    Sl2,
}

impl AlgebraChoice {
    pub fn build(self) -> Result<LieSuperalgebra> {
        match self {
            AlgebraChoice::Osp(n) => build_osp(n as i64),
            AlgebraChoice::Sl2 => Ok(build_sl2()),
        }
    }
}

impl fmt::Display for AlgebraChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraChoice::Osp(n) => write!(f, "osp(1|{})", 2 * n),
            AlgebraChoice::Sl2 => write!(f, "sl2"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Usage(format!("unknown format `{other}` (expected json or csv)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub algebra: AlgebraChoice,
    pub level: i64,
    /// Report cutoff `W`.
    pub cutoff: u32,
    /// Extra working weight; `None` means `k + 1`.
    pub headroom: Option<u32>,
    pub checks: Vec<CheckId>,
    pub format: Format,
    /// Rayon worker count; `None` uses the environment or the default pool.
    pub workers: Option<usize>,
}

impl RunConfig {
    pub fn new(algebra: AlgebraChoice, level: i64, cutoff: u32) -> Self {
        RunConfig {
            algebra,
            level,
            cutoff,
            headroom: None,
            checks: CheckId::ALL.to_vec(),
            format: Format::Json,
            workers: None,
        }
    }

    pub fn effective_headroom(&self) -> u32 {
        self.headroom.unwrap_or((self.level.max(0) + 1) as u32)
    }

    pub fn validate(&self) -> Result<()> {
        if self.level < 1 {
            return Err(Error::Usage(format!("level k must be a positive integer, got {}", self.level)));
        }
        if self.cutoff < 2 {
            return Err(Error::Usage(format!("cutoff W must be at least 2, got {}", self.cutoff)));
        }
        if let AlgebraChoice::Osp(n) = self.algebra {
            if n < 1 {
                return Err(Error::Usage("osp(1|2n) needs n ≥ 1".into()));
            }
        }
        if self.workers == Some(0) {
            return Err(Error::Usage("worker count must be positive".into()));
        }
        Ok(())
    }
}

/// Configuration echo; excludes anything that may not change the results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub algebra: String,
    pub rank: usize,
    pub level: i64,
    pub cutoff: u32,
    pub headroom: u32,
    pub working_cutoff: u32,
    pub checks: Vec<CheckId>,
}

/// Wall-clock data, kept apart from the deterministic part of the report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Runtime {
    pub workers: usize,
    pub total_ms: u64,
    pub check_ms: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub engine_version: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckReport>,
    /// Graded dimensions of `V(k,0)(0)`, `N`, `J(0)`, `Ĩ` and `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<IdealModel>,
    pub runtime: Runtime,
}

impl Report {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Failed)
    }

    pub fn check(&self, id: CheckId) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Copy with the runtime section cleared, for byte comparisons.
    pub fn without_runtime(&self) -> Report {
        Report { runtime: Runtime::default(), ..self.clone() }
    }
}

fn worker_count(cfg: &RunConfig) -> Result<Option<usize>> {
    if cfg.workers.is_some() {
        return Ok(cfg.workers);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Usage(format!("{WORKERS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

fn failed_report(id: CheckId, e: &Error) -> CheckReport {
    let verdict = match e {
        Error::CutoffExceeded { .. } => Verdict::InconclusiveRaiseCutoff,
        _ => Verdict::Failed,
    };
    CheckReport { id, verdict, rows: Vec::new(), notes: vec![format!("error: {e}")] }
}

/// Runs every configured check.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let workers = worker_count(cfg)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_in_pool(cfg, pool.current_num_threads()))
}

fn run_in_pool(cfg: &RunConfig, workers: usize) -> Result<Report> {
    let start = Instant::now();
    let alg = cfg.algebra.build()?;
    let rank = alg.rank();
    let headroom = cfg.effective_headroom();
    let analysis = CosetAnalysis::new(alg, cfg.level, cfg.cutoff, headroom)?;
    let mut checks = Vec::new();
    let mut check_ms = BTreeMap::new();
    for &id in &cfg.checks {
        let t = Instant::now();
        let r = verify(&analysis, id).unwrap_or_else(|e| failed_report(id, &e));
        check_ms.insert(id.to_string(), t.elapsed().as_millis() as u64);
        checks.push(r);
    }
    let tables = if cfg.checks.is_empty() { None } else { Some(analysis.ideal_model()?) };
    Ok(Report {
        schema: SCHEMA.to_string(),
        engine_version: ENGINE_VERSION.to_string(),
        config: ConfigEcho {
            algebra: cfg.algebra.to_string(),
            rank,
            level: cfg.level,
            cutoff: cfg.cutoff,
            headroom,
            working_cutoff: analysis.working_cutoff(),
            checks: cfg.checks.clone(),
        },
        checks,
        tables,
        runtime: Runtime { workers, total_ms: start.elapsed().as_millis() as u64, check_ms },
    })
}

/// Serializes a report. JSON is pretty-printed with a fixed key order; CSV
/// has one row per (check, weight).
pub fn emit_report(r: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(r)?;
            v.push(b'\n');
            Ok(v)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "verdict", "weight", "values"]).map_err(csv_error)?;
            for c in &r.checks {
                for row in &c.rows {
                    let values: Vec<String> = row.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    w.write_record([c.id.as_str(), c.verdict.as_str(), &row.weight.to_string(), &values.join(";")])
                        .map_err(csv_error)?;
                }
            }
            w.into_inner().map_err(|e| Error::Io(e.into_error()))
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        let mut c = RunConfig::new(AlgebraChoice::Osp(1), 0, 4);
        assert!(matches!(run(&c), Err(Error::Usage(_))));
        c.level = 1;
        c.cutoff = 1;
        assert!(matches!(run(&c), Err(Error::Usage(_))));
    }

    #[test]
    fn empty_check_list_echoes_config() {
        let mut c = RunConfig::new(AlgebraChoice::Osp(1), 1, 3);
        c.checks.clear();
        let r = run(&c).unwrap();
        assert!(r.checks.is_empty() && r.tables.is_none());
        let text = String::from_utf8(emit_report(&r, Format::Json).unwrap()).unwrap();
        assert!(text.contains("\"schema\": \"paraferm-report/1\""));
        assert!(!text.contains("tables"));
        let csv = emit_report(&r, Format::Csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 1);
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let mut c = RunConfig::new(AlgebraChoice::Osp(1), 1, 3);
        c.checks = vec![CheckId::Remark3_2, CheckId::Thm2_1];
        let r = run(&c).unwrap();
        let a = emit_report(&r, Format::Json).unwrap();
        let back: Report = serde_json::from_slice(&a).unwrap();
        assert_eq!(emit_report(&back, Format::Json).unwrap(), a);
        let csv = String::from_utf8(emit_report(&r, Format::Csv).unwrap()).unwrap();
        let rows: usize = r.checks.iter().map(|c| c.rows.len()).sum();
        assert_eq!(csv.lines().count(), rows + 1);
    }
}
