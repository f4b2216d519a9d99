//! Parameter sweeps over the pulse area and the CSV they produce.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use super::config::{self, get_bool, get_f64, get_usize, require_f64, Settings};
use crate::error::{Error, Result};
use crate::multi_mode::{self, GaussianMode, ScatterFractions};
use crate::params::{self, InteractionParams};
use crate::single_mode::{self, ChannelTable, Scenario, ScatterCoefficients, Statistics};

pub const DEFAULT_POINTS: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig2" => Ok(Preset::Fig2),
            "fig3" => Ok(Preset::Fig3),
            "fig4" => Ok(Preset::Fig4),
            "fig5" => Ok(Preset::Fig5),
            "fig6" => Ok(Preset::Fig6),
            other => Err(Error::Usage(format!("unknown preset `{other}` (expected fig2..fig6)"))),
        }
    }
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Fig5, Preset::Fig6];

    pub fn settings(self) -> Settings {
        let pairs: &[(&str, &str)] = match self {
            // single-mode, equal incident orders, equal perpendicular momenta
            Preset::Fig2 => &[
                ("mode", "single"),
                ("scenario", "I"),
                ("statistics", "dis,bos"),
                ("perpendicular_equal", "true"),
            ],
            Preset::Fig3 => &[
                ("mode", "single"),
                ("scenario", "II"),
                ("statistics", "dis,bos,fer"),
                ("perpendicular_equal", "true"),
            ],
            // |d-|² against σ/σ_k at w = π/4
            Preset::Fig4 => &[
                ("mode", "spread"),
                ("w", "pi/4"),
                ("ratio_start", "0.001"),
                ("ratio_stop", "10"),
            ],
            Preset::Fig5 => &[
                ("mode", "multi"),
                ("scenario", "I"),
                ("statistics", "dis,bos,fer"),
                ("n_t", "0.01"),
                ("m_t", "0.8"),
                ("k0", "1"),
                ("k0_prime", "2"),
                ("mu", "2"),
            ],
            Preset::Fig6 => &[
                ("mode", "multi"),
                ("scenario", "II"),
                ("statistics", "dis,bos,fer"),
                ("n_t", "0.1"),
                ("m_t", "0.1"),
                ("k0", "1"),
                ("k0_prime", "2"),
                ("mu", "2"),
            ],
        };
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }
}

/// Inclusive uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::Usage("grid bounds must be finite".into()));
        }
        if start >= stop {
            return Err(Error::Usage(format!("grid start {start} must be below stop {stop}")));
        }
        if count < 2 {
            return Err(Error::Usage(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(Self { start, stop, count })
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            return self.stop;
        }
        self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

/// Parameters of a multi-mode pair: unscatterable fractions of each
/// particle's parallel distribution and the two perpendicular
/// distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiModeParams {
    pub fractions: ScatterFractions,
    pub fractions_prime: ScatterFractions,
    pub perp: GaussianMode,
    pub perp_prime: GaussianMode,
}

impl MultiModeParams {
    pub fn overlap(&self) -> Result<f64> {
        multi_mode::overlap(&self.perp, &self.perp_prime)
    }

    pub fn coefficients(&self, w: f64, epsilon_tau: f64) -> Result<(ScatterCoefficients, ScatterCoefficients)> {
        let c = single_mode::coefficients(w, epsilon_tau);
        Ok((
            multi_mode::multimode_coefficients(&c, &self.fractions, epsilon_tau)?,
            multi_mode::multimode_coefficients(&c, &self.fractions_prime, epsilon_tau)?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    SingleMode { perpendicular_equal: bool },
    MultiMode(MultiModeParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub statistics: Vec<Statistics>,
    pub grid: Grid,
    pub model: Model,
    pub epsilon_tau: f64,
}

impl SweepSpec {
    pub fn table(&self, stats: Statistics, w: f64) -> Result<ChannelTable> {
        match &self.model {
            Model::SingleMode { perpendicular_equal } => {
                let c = single_mode::coefficients(w, self.epsilon_tau);
                match stats {
                    Statistics::Distinguishable => Ok(single_mode::probs_distinguishable(&c, &c, self.scenario)),
                    _ => single_mode::probs_identical(&c, stats, self.scenario, *perpendicular_equal),
                }
            }
            Model::MultiMode(mm) => {
                let (d, dd) = mm.coefficients(w, self.epsilon_tau)?;
                match stats {
                    Statistics::Distinguishable => Ok(multi_mode::probs_distinguishable_mm(&d, &dd, self.scenario)),
                    _ => multi_mode::probs_identical_mm(&d, &dd, mm.overlap()?, stats, self.scenario),
                }
            }
        }
    }
}

/// `|d-|²` against the spread ratio `σ/σ_k` at fixed `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadSweepSpec {
    pub w: f64,
    pub grid: Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepPlan {
    Channels(SweepSpec),
    Spread(SpreadSweepSpec),
}

impl FromStr for SweepPlan {
    type Err = Error;

    /// Parses a flat settings document.
    fn from_str(s: &str) -> Result<Self> {
        plan_from_settings(&config::parse(s)?)
    }
}

pub fn parse_scenario(v: &str) -> Result<Scenario> {
    match v.trim().to_ascii_lowercase().as_str() {
        "i" | "1" | "case1" | "casei" => Ok(Scenario::CaseI),
        "ii" | "2" | "case2" | "caseii" => Ok(Scenario::CaseII),
        other => Err(Error::Usage(format!("unknown scenario `{other}` (expected I or II)"))),
    }
}

pub fn parse_statistics(v: &str) -> Result<Statistics> {
    match v.trim().to_ascii_lowercase().as_str() {
        "dis" | "distinguishable" => Ok(Statistics::Distinguishable),
        "bos" | "boson" | "bosons" => Ok(Statistics::Boson),
        "fer" | "fermion" | "fermions" => Ok(Statistics::Fermion),
        other => Err(Error::Usage(format!("unknown statistics `{other}` (expected dis, bos or fer)"))),
    }
}

fn w_grid(s: &Settings) -> Result<Grid> {
    Grid::new(
        get_f64(s, "w_start")?.unwrap_or(0.0),
        get_f64(s, "w_stop")?.unwrap_or(std::f64::consts::PI),
        get_usize(s, "w_count")?.unwrap_or(DEFAULT_POINTS),
    )
}

fn fraction(s: &Settings, key: &str, default: f64) -> Result<ScatterFractions> {
    let v = get_f64(s, key)?.unwrap_or(default);
    ScatterFractions::from_unscatterable(v).map_err(|_| Error::Usage(format!("`{key}` must lie in [0, 1], got {v}")))
}

/// Builds a sweep plan from merged settings.
pub fn plan_from_settings(s: &Settings) -> Result<SweepPlan> {
    let mode = s.get("mode").map(String::as_str).unwrap_or("single");
    if mode == "spread" {
        let grid = Grid::new(
            get_f64(s, "ratio_start")?.unwrap_or(0.001),
            get_f64(s, "ratio_stop")?.unwrap_or(10.0),
            get_usize(s, "ratio_count")?.unwrap_or(DEFAULT_POINTS),
        )?;
        if grid.start <= 0.0 {
            return Err(Error::Usage("spread ratios must be > 0".into()));
        }
        let w = get_f64(s, "w")?.unwrap_or(std::f64::consts::FRAC_PI_4);
        return Ok(SweepPlan::Spread(SpreadSweepSpec { w, grid }));
    }

    let scenario = parse_scenario(s.get("scenario").map(String::as_str).unwrap_or("I"))?;
    let statistics = s
        .get("statistics")
        .map(String::as_str)
        .unwrap_or("dis,bos,fer")
        .split(',')
        .map(parse_statistics)
        .collect::<Result<Vec<_>>>()?;
    if statistics.is_empty() {
        return Err(Error::Usage("no statistics selected".into()));
    }
    let grid = w_grid(s)?;
    let mut epsilon_tau = get_f64(s, "epsilon_tau")?;

    let model = match mode {
        "single" => Model::SingleMode {
            perpendicular_equal: get_bool(s, "perpendicular_equal")?.unwrap_or(true),
        },
        "multi" => {
            let physical = config::PHYSICAL_KEYS[..3].iter().any(|k| s.contains_key(*k));
            let (fractions, fractions_prime) = if physical {
                let tau = require_f64(s, "tau")?;
                let p = InteractionParams::new(
                    0.0,
                    tau,
                    get_f64(s, "k_l")?.unwrap_or(1.0),
                    get_f64(s, "mass")?.unwrap_or(1.0),
                    get_f64(s, "hbar")?.unwrap_or(1.0),
                )?;
                let derived = params::derive(&p)?;
                let sigma = require_f64(s, "sigma")?;
                let sigma_prime = get_f64(s, "sigma_prime")?.unwrap_or(sigma);
                let f = multi_mode::scatter_fractions(&GaussianMode::new(p.k_l, sigma)?, derived.sigma_k)?;
                let ff = multi_mode::scatter_fractions(&GaussianMode::new(p.k_l, sigma_prime)?, derived.sigma_k)?;
                epsilon_tau.get_or_insert(derived.epsilon_tau);
                (f, ff)
            } else {
                let f = fraction(s, "n_t", 0.0)?;
                // d = D unless m_t is given
                let ff = fraction(s, "m_t", f.n_t())?;
                (f, ff)
            };
            let k0 = get_f64(s, "k0")?.unwrap_or(0.0);
            let k0_prime = get_f64(s, "k0_prime")?.unwrap_or(k0);
            let mu = get_f64(s, "mu")?.unwrap_or(1.0);
            Model::MultiMode(MultiModeParams {
                fractions,
                fractions_prime,
                perp: GaussianMode::new(k0, mu)?,
                perp_prime: GaussianMode::new(k0_prime, mu)?,
            })
        }
        other => return Err(Error::Usage(format!("unknown mode `{other}` (expected single, multi or spread)"))),
    };

    Ok(SweepPlan::Channels(SweepSpec {
        scenario,
        statistics,
        grid,
        model,
        epsilon_tau: epsilon_tau.unwrap_or(0.0),
    }))
}

/// 15 significant digits in `%.15g` style; `nan` for NaN.
pub fn format_value(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..15).contains(&exp) {
        let decimals = (14 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

const CHANNELS: [&str; 3] = ["ff", "mix", "bb"];

/// One row per `w`: `w`, then `<stat>_ff,<stat>_mix,<stat>_bb` for each
/// selected statistics. Combinations that cannot be prepared emit `nan`,
/// and a trailing `# pauli_forbidden: <stat>` (or `# degenerate: <stat>`)
/// line records why.
pub fn sweep(spec: &SweepSpec) -> Result<String> {
    let mut out = String::from("w");
    for stats in &spec.statistics {
        for ch in CHANNELS {
            write!(out, ",{}_{}", stats.short_name(), ch).unwrap();
        }
    }
    out.push('\n');

    let mut forbidden = BTreeSet::new();
    let mut degenerate = BTreeSet::new();
    for w in spec.grid.points() {
        out.push_str(&format_value(w));
        for &stats in &spec.statistics {
            let values = match spec.table(stats, w) {
                Ok(t) => t.coarse(),
                Err(Error::PauliForbidden) => {
                    forbidden.insert(stats.short_name());
                    [f64::NAN; 3]
                }
                Err(Error::DegenerateState(_)) => {
                    degenerate.insert(stats.short_name());
                    [f64::NAN; 3]
                }
                Err(e) => return Err(e),
            };
            for v in values {
                out.push(',');
                out.push_str(&format_value(v));
            }
        }
        out.push('\n');
    }
    for (label, set) in [("pauli_forbidden", &forbidden), ("degenerate", &degenerate)] {
        if !set.is_empty() {
            writeln!(out, "# {label}: {}", set.iter().copied().collect::<Vec<_>>().join(",")).unwrap();
        }
    }
    Ok(out)
}

pub fn spread_sweep(spec: &SpreadSweepSpec) -> Result<String> {
    let mut out = String::from("sigma_ratio,d_minus_sq,c_minus_sq\n");
    let c = single_mode::coefficients(spec.w, 0.0);
    for ratio in spec.grid.points() {
        // σ_k = 1, σ = ratio
        let f = multi_mode::scatter_fractions(&GaussianMode::new(1.0, ratio)?, params::Window::Finite(1.0))?;
        let d = multi_mode::multimode_coefficients(&c, &f, 0.0)?;
        writeln!(
            out,
            "{},{},{}",
            format_value(ratio),
            format_value(d.minus_sq()),
            format_value(c.minus_sq())
        )
        .unwrap();
    }
    Ok(out)
}

pub fn render(plan: &SweepPlan) -> Result<String> {
    match plan {
        SweepPlan::Channels(spec) => sweep(spec),
        SweepPlan::Spread(spec) => spread_sweep(spec),
    }
}
