//! Directory-wide runs producing one CSV row per `(group, p)`.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{prime_divisors, Group};

use super::filters::{EquivalenceCase, ContractibilityCase};
use super::parse::GroupFile;
use super::report::{analyze_group, AnalyzeOptions, Deadline, HomotopyReport};

/// First line of every report; bump when columns change.
pub const CSV_VERSION_LINE: &str = "# pspace batch report, columns v1";

pub const CSV_COLUMNS: [&str; 31] = [
    "name",
    "order",
    "p",
    "p_part",
    "sp_size",
    "ap_size",
    "sp_core",
    "ap_core",
    "same_homotopy_type",
    "op_order",
    "sp_contractible",
    "ap_contractible",
    "steps",
    "sp_height",
    "ap_height",
    "pred0",
    "pred1",
    "pred2",
    "pred3",
    "equiv_case",
    "equiv_cases",
    "ap_retract",
    "contract_case",
    "contract_cases",
    "euler_sp",
    "euler_ap",
    "homology_sp",
    "homology_ap",
    "candidate",
    "status",
    "rejects",
];

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(120);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum PrimeSelection {
    #[default]
    All,
    List(Vec<usize>),
}

impl FromStr for PrimeSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "all" {
            return Ok(PrimeSelection::All);
        }
        let mut primes = Vec::new();
        for part in s.split(',') {
            let p: usize = part.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("expected `all` or a comma-separated prime list, got {s:?}"))
            })?;
            if !crate::group::is_prime(p as u64) {
                return Err(Error::NotPrime { p: p as u64 });
            }
            primes.push(p);
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSelection::List(primes))
    }
}

impl PrimeSelection {
    /// Primes to run for a group of the given order.
    pub fn for_order(&self, order: usize) -> Vec<usize> {
        let divisors = prime_divisors(order);
        match self {
            PrimeSelection::All => divisors,
            PrimeSelection::List(list) => divisors.into_iter().filter(|p| list.contains(p)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatchOptions {
    pub primes: PrimeSelection,
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
    pub timeout: Option<Duration>,
    pub analyze: AnalyzeOptions,
}

impl Default for BatchOptions {
    fn default() -> Self {
        Self {
            primes: PrimeSelection::All,
            jobs: 0,
            timeout: Some(DEFAULT_TIMEOUT),
            analyze: AnalyzeOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum RowOutcome {
    Report(Box<HomotopyReport>),
    Timeout,
    Rejected(String),
}

#[derive(Clone, Debug)]
pub struct BatchRow {
    pub name: String,
    pub order: Option<usize>,
    pub p: Option<usize>,
    pub outcome: RowOutcome,
}

impl BatchRow {
    pub fn report(&self) -> Option<&HomotopyReport> {
        match &self.outcome {
            RowOutcome::Report(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BatchSummary {
    pub rows: usize,
    pub reports: usize,
    pub candidates: usize,
    pub timeouts: usize,
    pub rejects: usize,
}

impl std::fmt::Display for BatchSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} rows: {} analyzed, {} candidates, {} timeouts, {} rejected",
            self.rows, self.reports, self.candidates, self.timeouts, self.rejects
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct BatchResult {
    pub rows: Vec<BatchRow>,
}

impl BatchResult {
    pub fn summary(&self) -> BatchSummary {
        let mut s = BatchSummary {
            rows: self.rows.len(),
            ..BatchSummary::default()
        };
        for row in &self.rows {
            match &row.outcome {
                RowOutcome::Report(r) => {
                    s.reports += 1;
                    s.candidates += usize::from(r.candidate);
                }
                RowOutcome::Timeout => s.timeouts += 1,
                RowOutcome::Rejected(_) => s.rejects += 1,
            }
        }
        s
    }

    pub fn candidates(&self) -> impl Iterator<Item = &HomotopyReport> {
        self.rows.iter().filter_map(BatchRow::report).filter(|r| r.candidate)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS)?;
        for row in &self.rows {
            w.write_record(csv_fields(row))?;
        }
        let body = w.into_inner().map_err(|e| Error::Construction(e.to_string()))?;
        let mut out = String::from(CSV_VERSION_LINE);
        out.push('\n');
        out.push_str(&String::from_utf8(body).expect("csv output is UTF-8"));
        Ok(out)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn equivalence_code(c: Option<EquivalenceCase>) -> String {
    c.map_or("none".into(), |c| (c as u8).to_string())
}

fn contractibility_code(c: Option<ContractibilityCase>) -> String {
    c.map_or("none".into(), |c| (c as u8).to_string())
}

fn csv_fields(row: &BatchRow) -> Vec<String> {
    let mut f = vec![String::new(); CSV_COLUMNS.len()];
    f[0] = row.name.clone();
    f[1] = opt(row.order);
    f[2] = opt(row.p);
    match &row.outcome {
        RowOutcome::Timeout => f[29] = "timeout".into(),
        RowOutcome::Rejected(msg) => {
            f[29] = "rejected".into();
            f[30] = msg.clone();
        }
        RowOutcome::Report(r) => {
            let cases_a: Vec<String> = r.equivalence.cases.iter().map(|&c| (c as u8).to_string()).collect();
            let cases_b: Vec<String> = r.contractibility.cases.iter().map(|&c| (c as u8).to_string()).collect();
            let values = [
                r.p_part.to_string(),
                r.sp_size.to_string(),
                r.ap_size.to_string(),
                r.sp_core.to_string(),
                r.ap_core.to_string(),
                r.same_homotopy_type.to_string(),
                r.op_order.to_string(),
                r.sp_contractible.to_string(),
                r.ap_contractible.to_string(),
                r.steps.to_string(),
                r.sp_height.to_string(),
                r.ap_height.to_string(),
                r.step_predicates[0].to_string(),
                r.step_predicates[1].to_string(),
                r.step_predicates[2].to_string(),
                r.step_predicates[3].to_string(),
                equivalence_code(r.equivalence.case()),
                cases_a.join("+"),
                r.equivalence.retract.to_string(),
                contractibility_code(r.contractibility.case()),
                cases_b.join("+"),
                r.euler_sp.to_string(),
                r.euler_ap.to_string(),
                r.homology_sp.as_ref().map(|h| h.encode()).unwrap_or_default(),
                r.homology_ap.as_ref().map(|h| h.encode()).unwrap_or_default(),
                r.candidate.to_string(),
                "ok".into(),
            ];
            for (k, v) in values.into_iter().enumerate() {
                f[3 + k] = v;
            }
        }
    }
    f
}

/// Group files (`*.grp`) in `dir`, sorted by file name.
pub fn group_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "grp") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

enum Loaded {
    Group(String, Group),
    Rejected(String, String),
}

fn load(path: &Path, max_order: usize) -> Loaded {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    match GroupFile::load(path).and_then(|f| f.group(max_order).map(|g| (f.name, g))) {
        Ok((name, g)) => Loaded::Group(name, g),
        Err(e) => Loaded::Rejected(stem, e.to_string()),
    }
}

/// Analyzes every group file in `dir` at each selected prime dividing its
/// order. Per-file failures become rejected rows; rows are sorted by
/// `(name, p)` whatever the completion order.
pub fn run_batch(dir: &Path, opts: &BatchOptions) -> Result<BatchResult> {
    let files = group_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Construction(e.to_string()))?;
    let mut rows = pool.install(|| {
        let loaded: Vec<Loaded> = files.par_iter().map(|f| load(f, opts.analyze.max_order)).collect();
        let mut rows = Vec::new();
        let mut jobs = Vec::new();
        for item in &loaded {
            match item {
                Loaded::Rejected(name, msg) => rows.push(BatchRow {
                    name: name.clone(),
                    order: None,
                    p: None,
                    outcome: RowOutcome::Rejected(msg.clone()),
                }),
                Loaded::Group(name, g) => {
                    for p in opts.primes.for_order(g.order()) {
                        jobs.push((name.as_str(), g, p));
                    }
                }
            }
        }
        let done: Vec<BatchRow> = jobs
            .par_iter()
            .map(|&(name, g, p)| {
                let mut a = opts.analyze;
                a.deadline = opts.timeout.map_or(Deadline::none(), Deadline::after);
                let outcome = match analyze_group(name, g, p, &a) {
                    Ok(r) => RowOutcome::Report(Box::new(r)),
                    Err(Error::Timeout) => RowOutcome::Timeout,
                    Err(e) => RowOutcome::Rejected(e.to_string()),
                };
                BatchRow {
                    name: name.to_string(),
                    order: Some(g.order()),
                    p: Some(p),
                    outcome,
                }
            })
            .collect();
        rows.extend(done);
        rows
    });
    rows.sort_by(|a, b| (&a.name, a.p).cmp(&(&b.name, b.p)));
    Ok(BatchResult { rows })
}
