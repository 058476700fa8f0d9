use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use laplace_bem_cli::{run, summary_text, Mode, RunConfig};

/// Boundary element solver for Laplace's equation on the unit disk.
#[derive(Debug, Parser)]
#[command(name = "laplace-bem", version)]
struct Cli {
    /// Test problem, 1 to 5.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=5))]
    problem: u32,

    /// Boundary nodes n (required in solve mode; defaults to the largest
    /// entry of --n-list in convergence mode).
    #[arg(long = "boundary-nodes")]
    boundary_nodes: Option<usize>,

    /// Nodes per axis m of the square sampling grid (required in solve mode;
    /// defaults to 11 in convergence mode).
    #[arg(long = "interior-grid")]
    interior_grid: Option<usize>,

    /// Gauss-Legendre points per element.
    #[arg(long = "quad-order", default_value_t = 8)]
    quad_order: usize,

    #[arg(long, value_enum, default_value_t = Mode::Solve)]
    mode: Mode,

    /// Comma-separated boundary resolutions for convergence mode.
    #[arg(long = "n-list", value_delimiter = ',')]
    n_list: Vec<usize>,

    #[arg(long = "output-dir", default_value = "./out")]
    output_dir: PathBuf,
}

impl Cli {
    fn into_config(self) -> Result<RunConfig, clap::Error> {
        let mut cmd = Cli::command();
        let missing = |cmd: &mut clap::Command, flag: &str| {
            cmd.error(
                ErrorKind::MissingRequiredArgument,
                format!("{flag} is required in {:?} mode", self.mode).to_lowercase(),
            )
        };
        let (boundary_nodes, interior_grid) = match self.mode {
            Mode::Solve => (
                self.boundary_nodes.ok_or_else(|| missing(&mut cmd, "--boundary-nodes"))?,
                self.interior_grid.ok_or_else(|| missing(&mut cmd, "--interior-grid"))?,
            ),
            Mode::Convergence => {
                let largest = self
                    .n_list
                    .iter()
                    .copied()
                    .max()
                    .ok_or_else(|| missing(&mut cmd, "--n-list"))?;
                (
                    self.boundary_nodes.unwrap_or(largest),
                    self.interior_grid.unwrap_or(11),
                )
            }
        };
        let config = RunConfig {
            problem_id: self.problem,
            boundary_nodes,
            interior_grid,
            quad_order: self.quad_order,
            mode: self.mode,
            n_list: self.n_list,
            output_dir: self.output_dir,
        };
        config
            .validate()
            .map_err(|msg| cmd.error(ErrorKind::ValueValidation, msg))?;
        Ok(config)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = match Cli::parse().into_config() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(&config) {
        Ok(summary) => {
            print!("{}", summary_text(&summary));
            for f in &summary.files {
                log::info!("wrote {}", f.display());
            }
            if summary.failed_rows.is_empty() {
                ExitCode::SUCCESS
            } else {
                for (n, e) in &summary.failed_rows {
                    eprintln!("error: convergence row n = {n} failed: {e}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
