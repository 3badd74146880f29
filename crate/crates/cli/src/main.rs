use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sqg::diagnostics::sobolev_norm;
use sqg::experiments::{
    record_to_json, run_decay_experiment, run_perturbation_experiment, run_sweep, workers_from_env, Checkpoint,
    ConfigOverrides, RunConfig, RunKind, RunRecord, RunStatus, SweepAxis,
};
use sqg::verify::{verify_suite, SuiteOptions};
use sqg::Error;

const EXIT_ACCEPTANCE: u8 = 1;
const EXIT_BLOW_UP: u8 = 2;
const EXIT_CONFIG: u8 = 3;

#[derive(Parser)]
#[command(name = "sqg", version, about = "Supercritical SQG perturbation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit decay exponents of the linear semigroup on radial data.
    Decay(RunArgs),
    /// Run the perturbation solve with the norm ledger and continuity monitor.
    Perturb {
        #[command(flatten)]
        run: RunArgs,
        /// Also run the full equation and record the decomposition gap.
        #[arg(long)]
        co_run_full: bool,
    },
    /// Independent perturbation runs over one parameter.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// epsilon, gamma, grid-n or dt
        #[arg(long)]
        axis: String,
        /// perturbation or decay
        #[arg(long, default_value = "perturbation")]
        kind: String,
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        values: Vec<f64>,
    },
    /// Run the acceptance battery.
    Verify {
        /// Only the 8x8 operator oracle checks.
        #[arg(long)]
        reduced: bool,
        /// Corrupt one operator multiplier (the oracle check must fail).
        #[arg(long)]
        inject_fault: bool,
        /// Write the machine-readable report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Describe a binary checkpoint.
    CheckpointInfo { path: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// Key-value config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long)]
    box_length: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self, co_run_full: bool) -> Result<RunConfig, Error> {
        let text = match &self.config {
            Some(p) => Some(
                fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?,
            ),
            None => None,
        };
        let flags = ConfigOverrides {
            gamma: self.gamma,
            grid_n: self.grid_n,
            box_length: self.box_length,
            dt: self.dt,
            t_end: self.t_end,
            amplitude: self.amplitude,
            width: self.width,
            epsilon: self.epsilon,
            seed: self.seed,
            sigma: self.sigma,
            out_dir: self.out_dir.clone(),
            co_run_full: co_run_full.then_some(true),
            ..Default::default()
        };
        RunConfig::resolve(text.as_deref(), &flags)
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Config(_)
        | Error::InvalidParameter(_)
        | Error::InvalidGrid(_)
        | Error::Checkpoint(_)
        | Error::WindowMismatch(_) => EXIT_CONFIG,
        Error::BlowUp { .. } | Error::NonFinite(_) | Error::CflViolation { .. } => EXIT_BLOW_UP,
        _ => EXIT_ACCEPTANCE,
    }
}

fn status_code(record: &RunRecord) -> u8 {
    match record.status {
        RunStatus::Completed => 0,
        RunStatus::FitFailed => EXIT_ACCEPTANCE,
        RunStatus::BlowUp | RunStatus::Failed => EXIT_BLOW_UP,
    }
}

fn print_record(record: &RunRecord) {
    println!("status: {:?}", record.status);
    for fit in &record.fits {
        match &fit.fit {
            Some(f) => println!(
                "{}: exponent {:.4} (target {:.4}), residual {:.3e}, window [{:.3}, {:.3}], {}",
                fit.norm,
                f.exponent,
                fit.target_exponent,
                f.residual,
                f.window.0,
                f.window.1,
                if fit.passed { "pass" } else { "FAIL" }
            ),
            None => println!("{}: no fit ({})", fit.norm, fit.error.as_deref().unwrap_or("")),
        }
    }
    if let Some(v) = &record.verdict {
        println!(
            "monitor: {:?}, sup ‖θ₁‖_Hs {:.4e}, first exit {:?}, handoff {:?}, envelope violations {}",
            v.status, v.sup_norm, v.first_exit_time, v.handoff, v.gronwall_violations
        );
    }
    if let Some(e) = record.decomposition_error {
        println!("decomposition gap: {e:.3e}");
    }
    if let Some(f) = &record.failure {
        println!("failure: {f}");
    }
    for (label, p) in [
        ("ledger", &record.ledger_path),
        ("theta0", &record.theta0_path),
        ("checkpoint", &record.checkpoint_path),
    ] {
        if let Some(p) = p {
            println!("{label}: {p}");
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Decay(args) => {
            let record = run_decay_experiment(&args.resolve(false)?)?;
            print_record(&record);
            Ok(status_code(&record))
        }
        Command::Perturb { run, co_run_full } => {
            let record = run_perturbation_experiment(&run.resolve(co_run_full)?)?;
            print_record(&record);
            if record.config.output.dir.is_none() {
                println!("{}", record_to_json(&record)?);
            }
            Ok(status_code(&record))
        }
        Command::Sweep {
            run,
            axis,
            kind,
            values,
        } => {
            let axis: SweepAxis = axis.parse()?;
            let kind: RunKind = kind.parse()?;
            let base = run.resolve(false)?;
            let report = run_sweep(&base, kind, axis, &values, workers_from_env()?)?;
            report.write_summary_csv(std::io::stdout())?;
            if let Some(t) = report.empirical_epsilon_threshold() {
                println!("empirical epsilon threshold: {t}");
            }
            let blew_up = report
                .entries
                .iter()
                .any(|e| e.record.as_ref().is_some_and(|r| r.status == RunStatus::BlowUp));
            Ok(if blew_up { EXIT_BLOW_UP } else { 0 })
        }
        Command::Verify {
            reduced,
            inject_fault,
            report,
        } => {
            let options = SuiteOptions { reduced, inject_fault };
            let suite = verify_suite(&options, |c| println!("{}", c.line()))?;
            if let Some(p) = report {
                fs::write(p, suite.to_json()?)?;
            }
            let failed = suite.checks.iter().filter(|c| !c.passed).count();
            println!("{} of {} checks passed", suite.checks.len() - failed, suite.checks.len());
            Ok(if failed == 0 { 0 } else { EXIT_ACCEPTANCE })
        }
        Command::CheckpointInfo { path } => {
            let ckpt = Checkpoint::read(&path).map_err(|e| match e {
                Error::Io(io) => Error::Checkpoint(format!("cannot read {}: {io}", path.display())),
                e => e,
            })?;
            let p = &ckpt.params;
            println!("grid: n = {}, L = {}", ckpt.grid.n(), ckpt.grid.box_length());
            println!(
                "params: gamma = {}, s = {}, sigma = {}, dt = {}, t_end = {}, cfl = {}, scheme = {:?}",
                p.gamma(),
                p.s(),
                p.sigma(),
                p.dt(),
                p.t_end(),
                p.cfl_safety(),
                p.scheme()
            );
            println!("time: {}", ckpt.time);
            println!("kind: {}", if ckpt.radial.is_some() { "perturbation" } else { "full" });
            println!("‖field‖_Hs: {:.6e}", sobolev_norm(&ckpt.field, p.s(), false)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
