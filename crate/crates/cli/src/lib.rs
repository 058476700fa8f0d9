//! Pipeline orchestration and file output for the `laplace-bem` binary.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use laplace_bem::{
    convergence_study, empirical_orders, free_term, run_pipeline, BemError, Grid, Rule,
    RunOutput, Stats, TestProblem,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Solve,
    Convergence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub problem_id: u32,
    pub boundary_nodes: usize,
    pub interior_grid: usize,
    pub quad_order: usize,
    pub mode: Mode,
    pub n_list: Vec<usize>,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(1..=5).contains(&self.problem_id) {
            return Err(format!("--problem must be 1..=5, got {}", self.problem_id));
        }
        if self.boundary_nodes < 3 {
            return Err(format!("--boundary-nodes must be >= 3, got {}", self.boundary_nodes));
        }
        if self.interior_grid < 2 {
            return Err(format!("--interior-grid must be >= 2, got {}", self.interior_grid));
        }
        if !(1..=64).contains(&self.quad_order) {
            return Err(format!("--quad-order must be 1..=64, got {}", self.quad_order));
        }
        if self.mode == Mode::Convergence {
            if self.n_list.is_empty() {
                return Err("--n-list is required in convergence mode".into());
            }
            if let Some(n) = self.n_list.iter().find(|&&n| n < 3) {
                return Err(format!("--n-list entries must be >= 3, got {n}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub max_abs: f64,
    pub max_rel: f64,
    pub mean_abs: f64,
    pub mean_rel: f64,
    pub n_points: usize,
    pub n_rel_excluded: usize,
}

impl From<&Stats> for StatsRecord {
    fn from(s: &Stats) -> Self {
        Self {
            max_abs: s.max_abs,
            max_rel: s.max_rel,
            mean_abs: s.mean_abs,
            mean_rel: s.mean_rel,
            n_points: s.n_points,
            n_rel_excluded: s.n_rel_excluded,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteriorRow {
    pub k: usize,
    pub x: f64,
    pub y: f64,
    pub u_bem: f64,
    pub u_exact: f64,
    pub abs_err: f64,
    pub rel_err: Option<f64>,
    pub near_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub stats: Option<StatsRecord>,
    pub wall_time_s: Option<f64>,
    pub empirical_order: Option<f64>,
    pub error: Option<String>,
}

/// Contents of `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub boundary_nodes: usize,
    pub free_term: f64,
    pub interior_points: usize,
    pub interior_stats: StatsRecord,
    pub flux_stats: StatsRecord,
    pub n_rel_excluded: usize,
    /// 1-based interior rows flagged as near the boundary.
    pub near_boundary: Vec<usize>,
    pub min_pivot: f64,
    pub solve_relative_residual: f64,
    pub wall_time_s: f64,
    pub interior: Vec<InteriorRow>,
    pub convergence: Option<Vec<ConvergenceRecord>>,
}

/// What a run produced, for the stdout summary.
#[derive(Debug)]
pub struct RunSummary {
    pub report: Report,
    pub files: Vec<PathBuf>,
    pub failed_rows: Vec<(usize, String)>,
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_opt(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

pub fn boundary_flux_csv(out: &RunOutput<f64>, problem: TestProblem) -> String {
    let sol = &out.solution;
    let n = sol.q_nodes.len();
    let mut s = String::from("node,x,y,theta,q_bem,q_exact,abs_err\n");
    for (j, (&p, &q)) in sol.mesh.nodes().iter().zip(&sol.q_nodes).enumerate() {
        let node = j + 1;
        let theta = std::f64::consts::TAU * (node as f64 / n as f64);
        let exact = problem.q(p);
        writeln!(
            s,
            "{node},{},{},{},{},{},{}",
            fmt_num(p.x),
            fmt_num(p.y),
            fmt_num(theta),
            fmt_num(q),
            fmt_num(exact),
            fmt_num((q - exact).abs())
        )
        .unwrap();
    }
    s
}

pub fn interior_rows(out: &RunOutput<f64>) -> Vec<InteriorRow> {
    let r = &out.report;
    (0..r.len())
        .map(|k| InteriorRow {
            k: k + 1,
            x: r.points[k].x,
            y: r.points[k].y,
            u_bem: r.u_bem[k],
            u_exact: r.u_exact[k],
            abs_err: r.abs_err[k],
            rel_err: r.rel_err[k],
            near_boundary: r.near_boundary[k],
        })
        .collect()
}

pub fn interior_csv(rows: &[InteriorRow]) -> String {
    let mut s = String::from("k,x,y,u_bem,u_exact,abs_err,rel_err\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.k,
            fmt_num(r.x),
            fmt_num(r.y),
            fmt_num(r.u_bem),
            fmt_num(r.u_exact),
            fmt_num(r.abs_err),
            csv_opt(r.rel_err)
        )
        .unwrap();
    }
    s
}

pub fn convergence_csv(rows: &[ConvergenceRecord]) -> String {
    let mut s = String::from("n,max_abs,max_rel,mean_abs,mean_rel,wall_time_s\n");
    for r in rows {
        let st = r.stats.as_ref();
        writeln!(
            s,
            "{},{},{},{},{},{}",
            r.n,
            csv_opt(st.map(|v| v.max_abs)),
            csv_opt(st.map(|v| v.max_rel)),
            csv_opt(st.map(|v| v.mean_abs)),
            csv_opt(st.map(|v| v.mean_rel)),
            r.wall_time_s.map(|t| format!("{t:.3}")).unwrap_or_default()
        )
        .unwrap();
    }
    s
}

/// Writes `contents` to `dir/name` through a temporary file and a rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> anyhow::Result<PathBuf> {
    let path = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(&path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(path)
}

/// Failure of a run, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] BemError),
    #[error("i/o error: {0:#}")]
    Io(#[from] anyhow::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Solver(_) | RunError::Io(_) => 1,
        }
    }
}

/// Runs the configured pipeline and writes every output file.
pub fn run(config: &RunConfig) -> Result<RunSummary, RunError> {
    config.validate().map_err(RunError::Usage)?;
    let problem = TestProblem::from_id(config.problem_id)?;
    let rule = Rule::gauss_legendre(config.quad_order)?;
    let grid = Grid::new(config.interior_grid)?;

    let (convergence, failed_rows) = match config.mode {
        Mode::Solve => (None, Vec::new()),
        Mode::Convergence => {
            let rows = convergence_study(problem, &config.n_list, config.interior_grid, &rule)?;
            let orders = empirical_orders(&rows);
            let mut failed = Vec::new();
            let records: Vec<ConvergenceRecord> = rows
                .iter()
                .enumerate()
                .map(|(idx, row)| {
                    let order = idx.checked_sub(1).and_then(|p| orders[p]);
                    match &row.result {
                        Ok((stats, t)) => ConvergenceRecord {
                            n: row.n,
                            stats: Some(stats.into()),
                            wall_time_s: Some(*t),
                            empirical_order: order,
                            error: None,
                        },
                        Err(e) => {
                            failed.push((row.n, e.to_string()));
                            ConvergenceRecord {
                                n: row.n,
                                stats: None,
                                wall_time_s: None,
                                empirical_order: None,
                                error: Some(e.to_string()),
                            }
                        }
                    }
                })
                .collect();
            (Some(records), failed)
        }
    };

    let out = run_pipeline(problem, config.boundary_nodes, &grid, &rule)?;
    let rows = interior_rows(&out);
    let report = Report {
        config: config.clone(),
        boundary_nodes: config.boundary_nodes,
        free_term: free_term::<f64>(config.boundary_nodes)?,
        interior_points: rows.len(),
        interior_stats: (&out.interior).into(),
        flux_stats: (&out.flux).into(),
        n_rel_excluded: out.interior.n_rel_excluded,
        near_boundary: rows.iter().filter(|r| r.near_boundary).map(|r| r.k).collect(),
        min_pivot: out.solution.min_pivot,
        solve_relative_residual: out.solution.relative_residual,
        wall_time_s: out.wall_time_s,
        interior: rows,
        convergence,
    };

    let dir = &config.output_dir;
    fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let mut files = vec![
        write_atomic(dir, "boundary_flux.csv", &boundary_flux_csv(&out, problem))?,
        write_atomic(dir, "interior.csv", &interior_csv(&report.interior))?,
    ];
    if let Some(conv) = &report.convergence {
        files.push(write_atomic(dir, "convergence.csv", &convergence_csv(conv))?);
    }
    let json = serde_json::to_string_pretty(&report).context("serializing report")?;
    files.push(write_atomic(dir, "report.json", &(json + "\n"))?);

    Ok(RunSummary {
        report,
        files,
        failed_rows,
    })
}

/// Human-readable summary printed on stdout.
pub fn summary_text(summary: &RunSummary) -> String {
    let r = &summary.report;
    let s = &r.interior_stats;
    let mut t = String::new();
    writeln!(
        t,
        "problem {} | n = {} | m = {} ({} interior points) | quad order {}",
        r.config.problem_id,
        r.boundary_nodes,
        r.config.interior_grid,
        r.interior_points,
        r.config.quad_order
    )
    .unwrap();
    writeln!(t, "max abs error    {}", fmt_num(s.max_abs)).unwrap();
    writeln!(t, "max rel error    {}", fmt_num(s.max_rel)).unwrap();
    writeln!(t, "mean abs error   {}", fmt_num(s.mean_abs)).unwrap();
    writeln!(t, "mean rel error   {}", fmt_num(s.mean_rel)).unwrap();
    writeln!(t, "flux max abs     {}", fmt_num(r.flux_stats.max_abs)).unwrap();
    writeln!(t, "wall time        {:.3} s", r.wall_time_s).unwrap();
    if let Some(conv) = &r.convergence {
        writeln!(t, "convergence (n, max_abs, order):").unwrap();
        for c in conv {
            match &c.stats {
                Some(st) => writeln!(
                    t,
                    "  {:>6}  {:<24} {}",
                    c.n,
                    fmt_num(st.max_abs),
                    c.empirical_order.map(|o| format!("{o:.3}")).unwrap_or_else(|| "-".into())
                ),
                None => writeln!(t, "  {:>6}  failed", c.n),
            }
            .unwrap();
        }
    }
    t
}
