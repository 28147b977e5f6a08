use clap::{Args, Parser, Subcommand};
use monotri::{run, Input, Mode, RunConfig};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Canonical triangulations of punctured-torus bundles, 4-punctured-sphere
/// bundles, and two-bridge link complements, with complete hyperbolic
/// structures found by volume maximization.
#[derive(Parser)]
#[command(name = "monotri", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Once-punctured-torus bundle over the circle.
    Bundle(CommonArgs),
    /// 4-punctured-sphere bundle over the circle.
    Sphere(CommonArgs),
    /// Two-bridge link complement.
    Bridge(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// RL-word, e.g. "RL" or "R3L2" (cyclic for bundles, linear for bridges).
    #[arg(long, conflicts_with = "matrix")]
    word: Option<String>,
    /// Monodromy matrix "a,b,c,d" row-major (bundles only).
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    /// Gradient tolerance of the volume maximizer.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Iteration cap of the volume maximizer.
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write an SVG of the cusp tessellation here.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Horizontal periods drawn in the SVG.
    #[arg(long, default_value_t = 1)]
    svg_periods: u32,
    /// Cross-check against the analytic solution for the word R^N L^M,
    /// given as "N,M".
    #[arg(long)]
    rnlm: Option<String>,
}

fn build_config(mode: Mode, args: &CommonArgs) -> Result<RunConfig, String> {
    let input = match (&args.word, &args.matrix) {
        (Some(w), None) => Input::Word(w.clone()),
        (None, Some(m)) => Input::Matrix(m.clone()),
        _ => return Err("exactly one of --word or --matrix is required".into()),
    };
    if args.tol <= 0.0 {
        return Err("--tol must be positive".into());
    }
    let rnlm = match &args.rnlm {
        None => None,
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            let parsed = if parts.len() == 2 {
                parts[0].trim().parse::<u32>().ok().zip(parts[1].trim().parse::<u32>().ok())
            } else {
                None
            };
            match parsed {
                Some(nm) => Some(nm),
                None => return Err(format!("bad --rnlm argument '{text}', expected N,M")),
            }
        }
    };
    let mut cfg = RunConfig::new(mode, input);
    cfg.tol = args.tol;
    cfg.max_iter = args.max_iter;
    cfg.json_path = args.json.clone();
    cfg.svg_path = args.svg.clone();
    cfg.svg_periods = args.svg_periods;
    cfg.rnlm = rnlm;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match &cli.command {
        Command::Bundle(a) => (Mode::Bundle, a),
        Command::Sphere(a) => (Mode::Sphere, a),
        Command::Bridge(a) => (Mode::Bridge, a),
    };
    let cfg = match build_config(mode, args) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(outcome) => {
            // ignore a closed pipe on the summary output
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "word            {}", outcome.word)
                .and_then(|_| writeln!(out, "volume          {:.15}", outcome.volume))
                .and_then(|_| {
                    writeln!(
                        out,
                        "bounds          [{:.15}, {:.15})",
                        outcome.lower_bound, outcome.upper_bound
                    )
                })
                .and_then(|_| {
                    writeln!(
                        out,
                        "converged       {} ({} iterations, gradient {:.3e})",
                        outcome.converged, outcome.iterations, outcome.gradient_norm
                    )
                })
                .and_then(|_| writeln!(out, "max |psi - 1|   {:.3e}", outcome.max_residual));
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code as u8)
        }
    }
}
