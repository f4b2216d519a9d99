use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kd_bragg::cli::check::{self, DEFAULT_SEED};
use kd_bragg::cli::config::{self, Settings};
use kd_bragg::cli::sweep::{self, format_value, Preset, SweepPlan};
use kd_bragg::cli::{dip_find, overlap_estimate};
use kd_bragg::multi_mode::{multimode_coefficients, ScatterFractions};
use kd_bragg::single_mode::coefficients;
use kd_bragg::Error;

/// Two-particle Kapitza-Dirac Bragg scattering: channel probabilities,
/// figure data and exchange-overlap estimation.
#[derive(Parser)]
#[command(name = "kd-bragg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit channel probabilities over a w grid as CSV.
    Sweep(SweepArgs),
    /// List w values where the boson coincidence probability dips below a tolerance.
    DipFind {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Coincidence probability counted as a dip
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Invert a measured boson coincidence probability into an exchange overlap.
    OverlapEstimate {
        /// Measured probability of finding the bosons in different exit orders.
        #[arg(long)]
        mixed: f64,
        /// Pulse area (accepts `pi/4`-style values).
        #[arg(long, value_parser = parse_number)]
        w: f64,
        /// Unscatterable fraction shared by both particles.
        #[arg(long, default_value_t = 0.0)]
        n_t: f64,
    },
    /// Run the invariant suite and print PASS/FAIL lines.
    Check {
        /// Seed for the Monte Carlo comparison.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Figure preset (fig2..fig6).
    #[arg(long)]
    preset: Option<String>,
    /// Flat `key = value` settings file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Incidence scenario: I (same order) or II (opposite orders).
    #[arg(long)]
    scenario: Option<String>,
    /// Comma-separated statistics: dis, bos, fer.
    #[arg(long)]
    statistics: Option<String>,
    /// First pulse area w (accepts `pi/4`-style values)
    #[arg(long)]
    w_start: Option<String>,
    /// Last pulse area w, inclusive
    #[arg(long)]
    w_stop: Option<String>,
    /// Number of grid points
    #[arg(long)]
    w_count: Option<usize>,
    /// Plane-wave particles
    #[arg(long)]
    single_mode: bool,
    /// Gaussian wavepackets with unscatterable fractions
    #[arg(long)]
    multi_mode: bool,
    /// Single-mode identical particles with distinct perpendicular momenta.
    #[arg(long)]
    perpendicular_distinct: bool,
    /// Unscatterable fraction of the first particle
    #[arg(long)]
    n_t: Option<f64>,
    /// Unscatterable fraction of the second particle
    #[arg(long)]
    m_t: Option<f64>,
    /// Perpendicular momentum center of the first particle
    #[arg(long)]
    k0: Option<f64>,
    /// Perpendicular momentum center of the second particle
    #[arg(long)]
    k0_prime: Option<f64>,
    /// Shared perpendicular momentum spread
    #[arg(long)]
    mu: Option<f64>,
    /// Parallel momentum spread of the first particle
    #[arg(long)]
    sigma: Option<f64>,
    /// Parallel momentum spread of the second particle
    #[arg(long)]
    sigma_prime: Option<f64>,
    /// Interaction time
    #[arg(long)]
    tau: Option<f64>,
    /// Recoil phase epsilon*tau
    #[arg(long)]
    epsilon_tau: Option<f64>,
    /// Any other setting, as KEY=VALUE.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    extra: Vec<String>,
}

fn parse_number(v: &str) -> Result<f64, String> {
    config::parse_number(v).ok_or_else(|| format!("cannot parse `{v}` as a number"))
}

impl SweepArgs {
    fn flag_settings(&self) -> Result<Settings, Error> {
        if self.single_mode && self.multi_mode {
            return Err(Error::Usage("--single-mode and --multi-mode are mutually exclusive".into()));
        }
        let mut s = Settings::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                s.insert(k.to_string(), v);
            }
        };
        put("scenario", self.scenario.clone());
        put("statistics", self.statistics.clone());
        put("w_start", self.w_start.clone());
        put("w_stop", self.w_stop.clone());
        put("w_count", self.w_count.map(|v| v.to_string()));
        put("mode", self.single_mode.then(|| "single".to_string()));
        put("mode", self.multi_mode.then(|| "multi".to_string()));
        put("perpendicular_equal", self.perpendicular_distinct.then(|| "false".to_string()));
        for (k, v) in [
            ("n_t", self.n_t),
            ("m_t", self.m_t),
            ("k0", self.k0),
            ("k0_prime", self.k0_prime),
            ("mu", self.mu),
            ("sigma", self.sigma),
            ("sigma_prime", self.sigma_prime),
            ("tau", self.tau),
            ("epsilon_tau", self.epsilon_tau),
        ] {
            put(k, v.map(|x| x.to_string()));
        }
        for kv in &self.extra {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("--set expects KEY=VALUE, got `{kv}`")))?;
            s.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(s)
    }

    fn plan(&self) -> Result<SweepPlan, Error> {
        let base = match &self.preset {
            Some(p) => p.parse::<Preset>()?.settings(),
            None => Settings::new(),
        };
        let mut user = match &self.config {
            Some(path) => config::load(path)?,
            None => Settings::new(),
        };
        let flags = self.flag_settings()?;
        if flags.get("mode").is_some_and(|m| user.get("mode").is_some_and(|u| u != m)) {
            // a mode flag overrides the file's mode together with its mode-specific keys
            user = config::layer(&user, &flags);
        } else {
            user.extend(flags);
        }
        config::check_conflicts(&user)?;
        let merged = config::layer(&base, &user);
        config::check_conflicts(&merged)?;
        sweep::plan_from_settings(&merged)
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Sweep(args) => {
            let csv = sweep::render(&args.plan()?)?;
            args.emit(&csv)?;
        }
        Command::DipFind { sweep, tolerance } => {
            let SweepPlan::Channels(spec) = sweep.plan()? else {
                return Err(Error::Usage("dip finding needs a w sweep, not a spread sweep".into()));
            };
            let dips = dip_find(&spec, tolerance)?;
            let text: String = dips.iter().map(|w| format!("{}\n", format_value(*w))).collect();
            sweep.emit(&text)?;
        }
        Command::OverlapEstimate { mixed, w, n_t } => {
            let f = ScatterFractions::from_unscatterable(n_t)?;
            let d = multimode_coefficients(&coefficients(w, 0.0), &f, 0.0)?;
            let e = overlap_estimate(mixed, &d)?;
            if e.clamped {
                eprintln!("warning: raw estimate {} clamped to [0, 1]", format_value(e.raw));
            }
            println!("overlap = {}", format_value(e.value));
            println!("raw = {}", format_value(e.raw));
            println!("clamped = {}", e.clamped);
        }
        Command::Check { seed } => {
            let outcomes = check::check(seed);
            print!("{}", check::report(&outcomes));
            if !check::all_passed(&outcomes) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kd-bragg: {e}");
            if matches!(e, Error::Usage(_)) {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
