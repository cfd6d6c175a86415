use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hpr_core::absorbers::{
    build_factor_absorber, build_path_absorber, factor_absorber_degeneracy_bound, verify_factor_absorber, verify_path_absorber,
};
use hpr_core::audit::{audit, estimate_second_eigenvalue, AuditMode, Criterion, Verdict, DEFAULT_EXHAUSTIVE_BUDGET};
use hpr_core::degeneracy::{edge_degeneracy, min_max_edge_degree};
use hpr_core::generators::{loose_path_rooted_at_ends, motif, plant_hole, random_kgraph, GenSpec};
use hpr_core::pipeline::{find_f_factor, find_loose_hamilton_cycle, find_perfect_matching, CertificateKind, PipelineConfig, Strictness};
use hpr_core::templates::{build_template, verify_flexibility, FlexMode, DEFAULT_DEGREE_CAP};
use hpr_core::{Hypergraph, RootedMotif, Vertex, VertexSet};
use serde_json::json;

use crate::experiment::{run_experiment, success_rate, thread_cap, to_csv, ExperimentSpec, Task};
use crate::hg;
use crate::report::{read_json, write_json, AbsorberSidecar, CertificateFile};

#[derive(Parser, Debug)]
#[command(name = "hpr", version, about = "Absorbing structures, spanning certificates and audits for random k-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write a JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MotifArgs {
    /// single_edge, loose_path, loose_cycle, loose_triangle, star, matching or a suffixed name like loose_path_3.
    #[arg(long)]
    motif: Option<String>,
    /// Motif read from a .hg file instead.
    #[arg(long, conflicts_with = "motif")]
    motif_file: Option<PathBuf>,
    /// Edge count for unsuffixed family names.
    #[arg(long)]
    edges: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random k-graph H(k, n, p).
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// Remove every edge inside the first HOLE vertices.
        #[arg(long)]
        hole: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Pseudo-randomness or jumbledness audit.
    Audit {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CriterionArg::Pseudo)]
        criterion: CriterionArg,
        /// Density; the measured one when omitted.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Sampled)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BUDGET)]
        budget: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Second-eigenvalue estimate.
    Spectral {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 200)]
        iterations: u32,
        #[arg(long, default_value_t = 20)]
        restarts: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Edge degeneracy of a (rooted) motif.
    Degen {
        #[command(flatten)]
        motif: MotifArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Root the two ends of a loose path.
        #[arg(long)]
        root_ends: bool,
        /// Comma-separated root vertices.
        #[arg(long, value_delimiter = ',')]
        roots: Vec<Vertex>,
        #[command(flatten)]
        common: Common,
    },
    /// Factor or path absorber as .hg plus a JSON sidecar.
    Absorber {
        #[arg(long, value_enum)]
        kind: AbsorberKind,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        motif: MotifArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Flexible (r, m)-template and its flexibility check.
    Template {
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: usize,
        #[arg(long, default_value_t = 20)]
        retries: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        flex: ModeArg,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Perfect matching, F-factor or loose Hamilton cycle with a certificate.
    Solve {
        #[arg(value_enum)]
        task: SolveTask,
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        motif: MotifArgs,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Standalone certificate check.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        certificate: PathBuf,
        /// Check factor pieces against this motif instead of the stored one.
        #[arg(long)]
        motif_file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Grid of runs summarized as CSV.
    Experiment {
        #[arg(long, value_enum)]
        task: Task,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long)]
        motif: Option<String>,
        #[arg(long, default_value_t = 200)]
        audit_trials: u64,
        #[arg(long, default_value_t = 0.05)]
        audit_alpha: f64,
        #[arg(long, default_value_t = 0.25)]
        audit_eps: f64,
        /// Directory for experiment.csv and spec.json; CSV goes to stdout otherwise.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        pipeline: PipelineArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct PipelineArgs {
    /// Enforce the full constant checks instead of the pragmatic defaults.
    #[arg(long)]
    strict: bool,
    /// Skip the greedy attempt and always build the absorbing structure.
    #[arg(long)]
    no_greedy: bool,
    /// Flexible-set parameter m; sized from n when omitted.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    footprint: Option<f64>,
    #[arg(long)]
    budget: Option<u64>,
}

impl PipelineArgs {
    fn config(&self, seed: u64) -> PipelineConfig {
        let d = PipelineConfig::default();
        PipelineConfig {
            seed,
            mode: if self.strict { Strictness::Strict } else { Strictness::Pragmatic },
            greedy_first: !self.no_greedy,
            m: self.m,
            gamma: self.gamma.unwrap_or(d.gamma),
            beta: self.beta.unwrap_or(d.beta),
            footprint: self.footprint.unwrap_or(d.footprint),
            search_budget: self.budget.unwrap_or(d.search_budget),
            ..d
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CriterionArg {
    Pseudo,
    Jumbled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AbsorberKind {
    Factor,
    Path,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolveTask {
    Matching,
    Factor,
    Hamcycle,
}

/// Bad arguments or unreadable input; exit code 2.
struct Failure(String);

impl From<hg::HgError> for Failure {
    fn from(e: hg::HgError) -> Self {
        Failure(e.to_string())
    }
}

impl From<hpr_core::Error> for Failure {
    fn from(e: hpr_core::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

/// Parses `argv` (program name first) and runs the subcommand. Returns the
/// exit code: 0 success or pass, 1 failed check or solve, 2 usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn save_json<T: serde::Serialize>(path: &Option<PathBuf>, value: &T) -> Result<(), Failure> {
    if let Some(p) = path {
        write_json(value, p)?;
    }
    Ok(())
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(msg.into())
}

/// Named motif, with `--edges` completing family names.
fn resolve_motif(args: &MotifArgs, k: usize, default: &str) -> Result<RootedMotif, Failure> {
    if let Some(path) = &args.motif_file {
        return Ok(RootedMotif::unrooted(hg::load(path)?));
    }
    let name = args.motif.as_deref().unwrap_or(default);
    let families = ["loose_path", "loose_cycle", "star", "matching"];
    let full = match (families.contains(&name), args.edges) {
        (true, Some(t)) => format!("{name}_{t}"),
        (true, None) => return Err(usage(format!("motif {name} needs --edges"))),
        (false, Some(_)) => return Err(usage(format!("--edges does not apply to {name}"))),
        (false, None) => name.to_string(),
    };
    Ok(motif(&full, k)?)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Gen { k, n, p, hole, output, common } => {
            let mut h = random_kgraph(&GenSpec { k, n, p, seed: common.seed })?;
            if let Some(s) = hole {
                if s > n {
                    return Err(usage(format!("hole of {s} vertices exceeds n = {n}")));
                }
                let set = VertexSet::from_slice(n, &(0..s as Vertex).collect::<Vec<_>>())?;
                h = plant_hole(&h, &set);
            }
            if let Some(path) = &output {
                hg::save(&h, path)?;
            } else {
                write!(out, "{}", hg::format(&h))?;
            }
            let report = h.degree_report();
            if output.is_some() {
                writeln!(out, "k={} n={} edges={} density={:.6}", k, n, h.edge_count(), report.density)?;
                writeln!(out, "digest={}", h.digest())?;
            }
            save_json(
                &common.json,
                &json!({ "k": k, "n": n, "p": p, "seed": common.seed, "hole": hole, "edges": h.edge_count(),
                         "degrees": report, "digest": h.digest() }),
            )?;
            Ok(true)
        }
        Command::Audit { input, criterion, p, alpha, eps, beta, mode, trials, budget, common } => {
            let h = hg::load(&input)?;
            let p = p.unwrap_or_else(|| h.degree_report().density);
            let criterion = match criterion {
                CriterionArg::Pseudo => Criterion::PseudoRandom { p, alpha, eps },
                CriterionArg::Jumbled => {
                    Criterion::Jumbled { p, beta: beta.ok_or_else(|| usage("the jumbled criterion needs --beta"))? }
                }
            };
            let report = match mode {
                ModeArg::Exhaustive => audit(&h, criterion, AuditMode::Exhaustive, trials, common.seed, budget)?,
                ModeArg::Sampled => {
                    if trials == 0 {
                        return Err(usage("sampled audits need at least one trial"));
                    }
                    crate::experiment::sampled_audit_parallel(&h, criterion, trials, common.seed, thread_cap())
                }
            };
            writeln!(out, "verdict={}", format!("{:?}", report.verdict).to_lowercase())?;
            writeln!(out, "tested={}", report.tested)?;
            if let Some(w) = &report.worst_violation {
                writeln!(out, "worst_error={:.6} tolerance={:.6}", w.error, w.tolerance)?;
                writeln!(out, "witness={} edges={} expected={:.3}", w.descriptor, w.edges, w.expected)?;
                for (i, s) in w.sets.iter().enumerate() {
                    writeln!(out, "A{}={}", i + 1, join(s))?;
                }
            }
            writeln!(out, "note={}", report.note)?;
            save_json(&common.json, &report)?;
            Ok(report.verdict != Verdict::Fail)
        }
        Command::Spectral { input, iterations, restarts, common } => {
            let h = hg::load(&input)?;
            let report = estimate_second_eigenvalue(&h, iterations, restarts, common.seed);
            writeln!(out, "lambda1>={:.9}", report.lambda1)?;
            writeln!(out, "lambda2>={:.9}", report.lambda2)?;
            writeln!(out, "converged={} sweeps={}", report.converged, report.iterations)?;
            if let Some(x) = report.exact {
                writeln!(out, "exact lambda1={:.9} lambda2={:.9}", x.lambda1, x.lambda2)?;
            }
            save_json(&common.json, &report)?;
            Ok(true)
        }
        Command::Degen { motif: margs, k, root_ends, roots, common } => {
            let mut m = if root_ends {
                match (margs.motif.as_deref(), margs.edges) {
                    (Some("loose_path"), Some(t)) => loose_path_rooted_at_ends(k, t)?,
                    _ => return Err(usage("--root-ends needs --motif loose_path --edges T")),
                }
            } else {
                resolve_motif(&margs, k, "single_edge")?
            };
            if !roots.is_empty() {
                if root_ends {
                    return Err(usage("--roots and --root-ends are exclusive"));
                }
                m = m.with_roots(roots)?;
            }
            let (degen, witness) = edge_degeneracy(&m);
            let (lo, hi) = min_max_edge_degree(&m.graph)?;
            writeln!(out, "degen={degen}")?;
            writeln!(out, "min_edge_degree={lo}")?;
            writeln!(out, "max_edge_degree={hi}")?;
            writeln!(out, "roots={}", join(&m.roots))?;
            writeln!(out, "exposure={}", join(&witness.order))?;
            writeln!(out, "weights={}", join(&witness.weights))?;
            save_json(
                &common.json,
                &json!({ "degen": degen, "min_edge_degree": lo, "max_edge_degree": hi, "roots": m.roots, "exposure": witness }),
            )?;
            Ok(true)
        }
        Command::Absorber { kind, k, motif: margs, output, common } => {
            let (graph, sidecar) = match kind {
                AbsorberKind::Factor => {
                    let f = resolve_motif(&margs, k, "single_edge")?.graph;
                    let a = build_factor_absorber(&f)?;
                    let check = verify_factor_absorber(&a);
                    let sidecar = AbsorberSidecar {
                        kind: "factor".into(),
                        k,
                        vertices: a.motif.v(),
                        edges: a.motif.e(),
                        roots: a.motif.roots.clone(),
                        ends: None,
                        degeneracy: edge_degeneracy(&a.motif).0,
                        degeneracy_bound: factor_absorber_degeneracy_bound(&f)?,
                        verified: check.is_ok(),
                        violations: check.violations,
                        complete_factor: a.complete_factor.iter().map(|p| p.map.clone()).collect(),
                        internal_factor: a.internal_factor.iter().map(|p| p.map.clone()).collect(),
                        complete_path: Vec::new(),
                        internal_path: Vec::new(),
                    };
                    (a.motif.graph, sidecar)
                }
                AbsorberKind::Path => {
                    if margs.motif.is_some() || margs.motif_file.is_some() {
                        return Err(usage("path absorbers take no motif"));
                    }
                    let a = build_path_absorber(k)?;
                    let check = verify_path_absorber(&a);
                    let sidecar = AbsorberSidecar {
                        kind: "path".into(),
                        k,
                        vertices: a.motif.v(),
                        edges: a.motif.e(),
                        roots: a.motif.roots.clone(),
                        ends: a.motif.ends,
                        degeneracy: edge_degeneracy(&a.motif).0,
                        degeneracy_bound: k - 1,
                        verified: check.is_ok(),
                        violations: check.violations,
                        complete_factor: Vec::new(),
                        internal_factor: Vec::new(),
                        complete_path: a.complete_path.clone(),
                        internal_path: a.internal_path.clone(),
                    };
                    (a.motif.graph, sidecar)
                }
            };
            writeln!(out, "vertices={} edges={}", sidecar.vertices, sidecar.edges)?;
            writeln!(out, "roots={}", join(&sidecar.roots))?;
            writeln!(out, "degen={} bound={}", sidecar.degeneracy, sidecar.degeneracy_bound)?;
            writeln!(out, "verified={}", sidecar.verified)?;
            for v in &sidecar.violations {
                writeln!(out, "violation: {v}")?;
            }
            let json_path = common.json.clone().or_else(|| output.as_ref().map(|p| p.with_extension("json")));
            if let Some(path) = &output {
                hg::save(&graph, path)?;
            }
            save_json(&json_path, &sidecar)?;
            Ok(sidecar.verified && sidecar.degeneracy <= sidecar.degeneracy_bound)
        }
        Command::Template { r, m, degree_cap, retries, flex, trials, output, common } => {
            let t = build_template(r, m, common.seed, degree_cap, retries)?;
            let mode = match flex {
                ModeArg::Exhaustive => FlexMode::Exhaustive,
                ModeArg::Sampled => FlexMode::Sampled,
            };
            let report = verify_flexibility(&t, mode, trials, common.seed)?;
            writeln!(out, "r={} m={} vertices={} edges={} max_degree={}", t.r, t.m, t.n(), t.edges.len(), t.max_degree)?;
            writeln!(out, "flexible={}", join(&t.flexible))?;
            writeln!(out, "flexibility={} tested={}", if report.passed { "pass" } else { "fail" }, report.tested)?;
            if let Some(w) = &report.witness {
                writeln!(out, "witness={}", join(w))?;
            }
            if let Some(path) = &output {
                hg::save(&Hypergraph::new(r, t.n(), &t.edges)?, path)?;
            }
            save_json(&common.json, &json!({ "template": t, "flexibility": report }))?;
            Ok(report.passed)
        }
        Command::Solve { task, input, motif: margs, pipeline, common } => {
            let h = hg::load(&input)?;
            let config = pipeline.config(common.seed);
            let (kind, result) = match task {
                SolveTask::Matching => (CertificateKind::Matching, find_perfect_matching(&h, &config)),
                SolveTask::Factor => {
                    let f = resolve_motif(&margs, h.k(), "single_edge")?.graph;
                    (CertificateKind::Factor, find_f_factor(&h, &f, &config))
                }
                SolveTask::Hamcycle => (CertificateKind::HamCycle, find_loose_hamilton_cycle(&h, &config)),
            };
            let file = match result {
                Ok(cert) => CertificateFile::success(&h, &config, cert),
                Err(e) => CertificateFile::failure(&h, kind, &config, e.to_string()),
            };
            writeln!(out, "kind={}", serde_json::to_value(file.kind).expect("kind serializes").as_str().unwrap_or(""))?;
            writeln!(out, "verified={}", file.verified)?;
            if let Some(e) = &file.error {
                writeln!(out, "error={e}")?;
            }
            if let Some(cert) = &file.certificate {
                writeln!(out, "pieces={} greedy_only={}", cert.pieces.len(), cert.report.greedy_only)?;
                if let Some(s) = &cert.report.structure {
                    writeln!(out, "structure m={} |A|={} |U|={} |W|={}", s.m, s.size_a, s.size_u, s.size_w)?;
                }
                for p in &cert.report.phases {
                    writeln!(out, "phase: {p}")?;
                }
                for w in &cert.report.warnings {
                    writeln!(out, "warning: {w}")?;
                }
            }
            for v in &file.violations {
                writeln!(out, "violation: {v}")?;
            }
            save_json(&common.json, &file)?;
            Ok(file.verified)
        }
        Command::Verify { input, certificate, motif_file, common } => {
            let h = hg::load(&input)?;
            let file: CertificateFile = read_json(&certificate)?;
            let f = motif_file.as_deref().map(hg::load).transpose()?;
            let violations = file.recheck(&h, f.as_ref());
            writeln!(out, "verified={}", violations.is_empty())?;
            for v in &violations {
                writeln!(out, "violation: {v}")?;
            }
            save_json(&common.json, &json!({ "verified": violations.is_empty(), "violations": violations }))?;
            Ok(violations.is_empty())
        }
        Command::Experiment {
            task,
            k,
            n,
            p,
            seeds,
            motif,
            audit_trials,
            audit_alpha,
            audit_eps,
            output,
            pipeline,
            common,
        } => {
            let spec = ExperimentSpec {
                task,
                k,
                grid: ExperimentSpec::grid(&n, &p, &seeds),
                motif,
                config: pipeline.config(common.seed),
                audit_alpha,
                audit_eps,
                audit_trials,
            };
            let rows = run_experiment(&spec, thread_cap()).map_err(usage)?;
            let csv = to_csv(&rows);
            match &output {
                Some(dir) => {
                    std::fs::create_dir_all(dir)?;
                    std::fs::write(dir.join("experiment.csv"), &csv)?;
                    write_json(&spec, &dir.join("spec.json"))?;
                    for r in &rows {
                        writeln!(out, "n={} p={} seed={} status={}", r.n, r.p, r.seed, r.status)?;
                    }
                    writeln!(out, "rows={} success_rate={:.3}", rows.len(), success_rate(&rows))?;
                }
                None => write!(out, "{csv}")?,
            }
            save_json(&common.json, &json!({ "spec": spec, "rows": rows, "success_rate": success_rate(&rows) }))?;
            Ok(true)
        }
    }
}

