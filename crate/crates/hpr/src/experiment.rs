//! Batches of generate / audit / solve / verify runs over a parameter grid.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use hpr_core::audit::{finish, sampled_range, AuditMode, Criterion, Partial};
use hpr_core::generators::{motif, random_kgraph, GenSpec};
use hpr_core::pipeline::{find_f_factor, find_loose_hamilton_cycle, find_perfect_matching, verify_certificate, PipelineConfig};
use hpr_core::Hypergraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Matching,
    Factor,
    Hamcycle,
    Audit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub task: Task,
    pub k: usize,
    pub grid: Vec<GridPoint>,
    /// Motif name for the factor task.
    pub motif: Option<String>,
    pub config: PipelineConfig,
    pub audit_alpha: f64,
    pub audit_eps: f64,
    pub audit_trials: u64,
}

impl ExperimentSpec {
    /// Every combination of the given values, n outermost.
    pub fn grid(ns: &[usize], ps: &[f64], seeds: &[u64]) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(ns.len() * ps.len() * seeds.len());
        for &n in ns {
            for &p in ps {
                for &seed in seeds {
                    out.push(GridPoint { n, p, seed });
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.grid.is_empty() {
            return Err("the grid is empty".into());
        }
        if self.task == Task::Factor && self.motif.is_none() {
            return Err("the factor task needs a motif".into());
        }
        if self.audit_trials == 0 {
            return Err("audit trials must be positive".into());
        }
        self.config.validate().map_err(|e| e.to_string())?;
        if let Some(name) = &self.motif {
            motif(name, self.k).map_err(|e| e.to_string())?;
        }
        Ok(())
    }

    /// Vertex count the task's object must divide, if any.
    fn divisor(&self) -> Option<usize> {
        match self.task {
            Task::Matching => Some(self.k),
            Task::Factor => self.motif.as_ref().and_then(|m| motif(m, self.k).ok()).map(|m| m.v()),
            Task::Hamcycle => Some(self.k - 1),
            Task::Audit => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub task: String,
    pub k: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub success: bool,
    /// `ok`, `skipped: divisibility`, or the failing phase.
    pub status: String,
    pub edges: usize,
    pub density: f64,
    pub audit_verdict: String,
    pub audit_tested: u64,
    pub audit_worst_error: f64,
    pub greedy_only: bool,
    pub certificate_pieces: usize,
    pub certificate_edges: usize,
    pub absorber_m: usize,
    pub gen_ms: f64,
    pub audit_ms: f64,
    pub solve_ms: f64,
    pub verify_ms: f64,
    pub detail: String,
}

fn millis(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// HPR_THREADS when set and positive, otherwise the available parallelism.
pub fn thread_cap() -> usize {
    std::env::var("HPR_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Sampled audit split into contiguous trial ranges over `threads` workers;
/// the merged result equals a single-threaded run.
pub fn sampled_audit_parallel(h: &Hypergraph, criterion: Criterion, trials: u64, seed: u64, threads: usize) -> hpr_core::audit::AuditReport {
    let threads = threads.clamp(1, trials.max(1) as usize);
    let chunk = trials.div_ceil(threads as u64);
    let partial = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|i| {
                let range = (i * chunk).min(trials)..((i + 1) * chunk).min(trials);
                s.spawn(move || sampled_range(h, &criterion, seed, range))
            })
            .collect();
        handles.into_iter().map(|t| t.join().expect("audit worker panicked")).fold(Partial::default(), Partial::merge)
    });
    finish(h, criterion, AuditMode::Sampled, trials, partial)
}

fn run_point(spec: &ExperimentSpec, point: GridPoint) -> Row {
    let mut row = Row {
        task: format!("{:?}", spec.task).to_lowercase(),
        k: spec.k,
        n: point.n,
        p: point.p,
        seed: point.seed,
        ..Row::default()
    };
    if let Some(d) = spec.divisor() {
        if !point.n.is_multiple_of(d) {
            row.status = "skipped: divisibility".into();
            return row;
        }
    }
    let t = Instant::now();
    let h = match random_kgraph(&GenSpec { k: spec.k, n: point.n, p: point.p, seed: point.seed }) {
        Ok(h) => h,
        Err(e) => {
            row.status = "generate".into();
            row.detail = e.to_string();
            return row;
        }
    };
    row.gen_ms = millis(t);
    row.edges = h.edge_count();
    row.density = h.degree_report().density;

    let t = Instant::now();
    let criterion = Criterion::PseudoRandom { p: row.density.max(f64::MIN_POSITIVE), alpha: spec.audit_alpha, eps: spec.audit_eps };
    let audit = sampled_audit_parallel(&h, criterion, spec.audit_trials, point.seed, 1);
    row.audit_ms = millis(t);
    row.audit_verdict = format!("{:?}", audit.verdict).to_lowercase();
    row.audit_tested = audit.tested;
    row.audit_worst_error = audit.worst_violation.as_ref().map_or(0.0, |w| w.error);
    if spec.task == Task::Audit {
        row.success = row.audit_verdict == "pass";
        row.status = if row.success { "ok".into() } else { "audit".into() };
        return row;
    }

    let config = PipelineConfig { seed: point.seed, ..spec.config.clone() };
    let t = Instant::now();
    let result = match spec.task {
        Task::Matching => find_perfect_matching(&h, &config),
        Task::Factor => {
            let name = spec.motif.as_deref().expect("validated");
            motif(name, spec.k).and_then(|f| find_f_factor(&h, &f.graph, &config))
        }
        Task::Hamcycle => find_loose_hamilton_cycle(&h, &config),
        Task::Audit => unreachable!(),
    };
    row.solve_ms = millis(t);
    match result {
        Ok(cert) => {
            let t = Instant::now();
            let check = verify_certificate(&h, &cert, None);
            row.verify_ms = millis(t);
            row.greedy_only = cert.report.greedy_only;
            row.certificate_pieces = cert.pieces.len();
            row.certificate_edges = cert.pieces.iter().map(|p| p.edges.len()).sum();
            row.absorber_m = cert.report.structure.as_ref().map_or(0, |s| s.m);
            row.success = check.is_ok();
            row.status = if row.success { "ok".into() } else { "verify".into() };
            row.detail = check.violations.join("; ");
        }
        Err(e) => {
            row.status = crate::error_tag(&e);
            row.detail = e.to_string();
        }
    }
    row
}

/// One row per grid point in grid order; points run on up to `threads`
/// workers, each seeded only by its own grid point.
pub fn run_experiment(spec: &ExperimentSpec, threads: usize) -> Result<Vec<Row>, String> {
    spec.validate()?;
    let rows: Mutex<Vec<Option<Row>>> = Mutex::new(vec![None; spec.grid.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, spec.grid.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= spec.grid.len() {
                    break;
                }
                let row = run_point(spec, spec.grid[i]);
                rows.lock().expect("row lock")[i] = Some(row);
            });
        }
    });
    Ok(rows.into_inner().expect("row lock").into_iter().map(|r| r.expect("every point ran")).collect())
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

/// Share of non-skipped rows that succeeded.
pub fn success_rate(rows: &[Row]) -> f64 {
    let tried: Vec<&Row> = rows.iter().filter(|r| !r.status.starts_with("skipped")).collect();
    if tried.is_empty() {
        return 0.0;
    }
    tried.iter().filter(|r| r.success).count() as f64 / tried.len() as f64
}
