use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use git_topo::algebra::{OrbitConvention, Rational};
use git_topo::families::{ControlSpec, DagSpec, FamilySpec};
use git_topo::harness::{TrialConfig, DEFAULT_KRONECKER_RADIUS, DEFAULT_PATH_SAMPLES};
use git_topo::reports::{self, CheckOptions, VerifyRequest};
use git_topo::{Error, Result};

/// Exit status for invalid input or a refused operation.
const EXIT_ERROR: u8 = 2;
/// Exit status when a verification counter is nonzero.
const EXIT_VERIFY_FAILED: u8 = 1;

#[derive(Parser)]
#[command(
    name = "git-topo",
    version,
    about = "Stability, destabilizing strata and connectivity of GIT stable loci"
)]
struct Cli {
    /// Orbit-dimension convention for stratum values (default depends on the family).
    #[arg(long, global = true, value_parser = parse_convention)]
    orbit_convention: Option<OrbitConvention>,

    /// Also write the report as canonical JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Destabilizing strata, d_min and the connectivity bound.
    Analyze {
        #[command(subcommand)]
        family: FamilyArgs,
        /// Also tabulate π_q(V^st/G) for q ≤ MAX_Q, assuming a free action.
        #[arg(long, global = true)]
        max_q: Option<u32>,
    },
    /// Stability status of one point read from an instance file.
    Check {
        file: PathBuf,
        /// DAG only: least-squares coefficients from the normal equations.
        #[arg(long)]
        mle: bool,
        /// DAG only: complete a rank-deficient parent block.
        #[arg(long)]
        stabilize: bool,
        /// Perturbation size for --stabilize, as a rational `p/q`.
        #[arg(long, default_value = "1/1000", value_parser = parse_rational)]
        epsilon: Rational,
    },
    /// Homotopy groups of the quotient V^st/G.
    Homotopy {
        #[command(subcommand)]
        family: FamilyArgs,
        #[arg(long, global = true, default_value_t = 5)]
        max_q: u32,
        /// Attest that G acts freely on V^st; required.
        #[arg(long, global = true)]
        assume_free_action: bool,
    },
    /// Seeded randomized and exhaustive consistency checks.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Subcommand, Clone)]
enum FamilyArgs {
    /// Quiver representations.
    Quiver(QuiverArgs),
    /// Linear control pairs (A, B).
    Control(ControlArgs),
    /// Star-DAG samples with k parents.
    Dag(DagArgs),
}

#[derive(Args, Clone)]
struct QuiverArgs {
    /// Comma-separated arrows `s->t`, vertices 1-indexed.
    #[arg(long, allow_hyphen_values = true)]
    arrows: String,
    /// Dimension vector, e.g. `1,1`.
    #[arg(long)]
    dim: String,
    /// Stability parameter, e.g. `1,-1`; must satisfy Σ θ_i v_i = 0.
    #[arg(long, allow_hyphen_values = true)]
    theta: String,
}

#[derive(Args, Clone)]
struct ControlArgs {
    /// State dimension.
    #[arg(long)]
    n: usize,
    /// Input dimension.
    #[arg(long)]
    m: usize,
}

#[derive(Args, Clone)]
struct DagArgs {
    /// Number of samples n.
    #[arg(long)]
    samples: usize,
    /// Number of parents k.
    #[arg(long)]
    parents: usize,
}

#[derive(Args, Clone)]
struct TrialArgs {
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    paths: u64,
    #[arg(long, default_value_t = DEFAULT_PATH_SAMPLES)]
    path_samples: u32,
    /// Integer entries are drawn from [-BOUND, BOUND].
    #[arg(long, default_value_t = 9)]
    bound: u32,
    #[arg(long, env = "GIT_TOPO_SEED", default_value_t = 0)]
    seed: u64,
    /// Expect every generic draw to be non-stable (e.g. a DAG with n < k).
    #[arg(long)]
    expect_degenerate: bool,
}

#[derive(Subcommand)]
enum VerifyTarget {
    Quiver {
        #[command(flatten)]
        family: QuiverArgs,
        #[command(flatten)]
        trials: TrialArgs,
    },
    Control {
        #[command(flatten)]
        family: ControlArgs,
        #[command(flatten)]
        trials: TrialArgs,
    },
    Dag {
        #[command(flatten)]
        family: DagArgs,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Exhaustive check of the Kronecker quiver on a Gaussian-integer grid.
    Kronecker {
        #[arg(long, default_value_t = DEFAULT_KRONECKER_RADIUS)]
        grid: i64,
    },
}

fn parse_convention(s: &str) -> std::result::Result<OrbitConvention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        match self {
            FamilyArgs::Quiver(q) => reports::quiver_family(&q.arrows, &q.dim, &q.theta),
            FamilyArgs::Control(c) => Ok(FamilySpec::Control(ControlSpec::new(c.n, c.m)?)),
            FamilyArgs::Dag(d) => Ok(FamilySpec::Dag(DagSpec::new(d.samples, d.parents)?)),
        }
    }
}

fn trial_config(family: FamilySpec, t: &TrialArgs, conv: Option<OrbitConvention>) -> TrialConfig {
    TrialConfig {
        family,
        trials: t.trials,
        seed: t.seed,
        entry_bound: t.bound,
        paths: t.paths,
        path_samples: t.path_samples,
        convention: conv,
    }
}

fn emit<T: Serialize>(report: &T, text: String, json: Option<&PathBuf>) -> Result<()> {
    print!("{text}");
    if let Some(path) = json {
        let body = reports::canonical_json(report)?;
        std::fs::write(path, body).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let conv = cli.orbit_convention;
    let json = cli.json.as_ref();
    match cli.command {
        Command::Analyze { family, max_q } => {
            let r = reports::run_analyze(&family.spec()?, conv, max_q)?;
            emit(&r, reports::render_analyze(&r), json)?;
        }
        Command::Check {
            file,
            mle,
            stabilize,
            epsilon,
        } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::schema("<file>", format!("cannot read {}: {e}", file.display())))?;
            let x = reports::parse_instance(&text)?;
            let opts = CheckOptions {
                mle,
                stabilize: stabilize.then_some(epsilon),
            };
            let r = reports::run_check(&x, &opts)?;
            emit(&r, reports::render_check(&r), json)?;
        }
        Command::Homotopy {
            family,
            max_q,
            assume_free_action,
        } => {
            let r = reports::run_homotopy(&family.spec()?, conv, max_q, assume_free_action)?;
            emit(&r, reports::render_homotopy(&r), json)?;
        }
        Command::Verify { target } => {
            let req = match target {
                VerifyTarget::Kronecker { grid } => VerifyRequest::Kronecker { grid_radius: grid },
                VerifyTarget::Quiver { family, trials } => family_request(FamilyArgs::Quiver(family), &trials, conv)?,
                VerifyTarget::Control { family, trials } => family_request(FamilyArgs::Control(family), &trials, conv)?,
                VerifyTarget::Dag { family, trials } => family_request(FamilyArgs::Dag(family), &trials, conv)?,
            };
            let r = reports::run_verify(&req)?;
            emit(&r, reports::render_verify(&r), json)?;
            if !r.passed {
                return Ok(ExitCode::from(EXIT_VERIFY_FAILED));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn family_request(family: FamilyArgs, t: &TrialArgs, conv: Option<OrbitConvention>) -> Result<VerifyRequest> {
    Ok(VerifyRequest::Family {
        config: trial_config(family.spec()?, t, conv),
        expect_degenerate: t.expect_degenerate,
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", reports::error_json(&e));
            ExitCode::from(EXIT_ERROR)
        }
    }
}
