//! Self-check suite: normalizations, limits and oracle agreements, reported
//! as `PASS|FAIL <name> <detail>` lines.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;

use super::dip::dip_find;
use super::estimate::overlap_estimate;
use super::sweep::{Grid, Model, SweepSpec};
use crate::error::{Error, Result};
use crate::multi_mode::{self, GaussianMode, ScatterFractions};
use crate::oracle;
use crate::params::Window;
use crate::single_mode::{self, ChannelTable, Scenario, Statistics};
use crate::special;

pub const DEFAULT_SEED: u64 = 20_100_101;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!("{} {} {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Largest observed deviation against a threshold.
fn bounded(name: &'static str, worst: Result<f64>, limit: f64) -> CheckOutcome {
    match worst {
        Ok(v) => CheckOutcome {
            name,
            passed: v <= limit,
            detail: format!("max_dev={v:.3e} limit={limit:.0e}"),
        },
        Err(e) => CheckOutcome { name, passed: false, detail: format!("error: {e}") },
    }
}

fn flag(name: &'static str, ok: Result<bool>, detail: impl Into<String>) -> CheckOutcome {
    match ok {
        Ok(passed) => CheckOutcome { name, passed, detail: detail.into() },
        Err(e) => CheckOutcome { name, passed: false, detail: format!("error: {e}") },
    }
}

fn w_grid(n: usize) -> Vec<f64> {
    Grid::new(0.0, PI, n).expect("static grid").points()
}

fn mm_coefficients(w: f64, n_t: f64) -> Result<single_mode::ScatterCoefficients> {
    let f = ScatterFractions::from_unscatterable(n_t)?;
    multi_mode::multimode_coefficients(&single_mode::coefficients(w, 0.0), &f, 0.0)
}

fn normalization_single() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in w_grid(401) {
        let c = single_mode::coefficients(w, 0.0);
        for s in Scenario::ALL {
            worst = worst.max((single_mode::probs_distinguishable(&c, &c, s).sum() - 1.0).abs());
            for stats in [Statistics::Boson, Statistics::Fermion] {
                for eq in [false, true] {
                    match single_mode::probs_identical(&c, stats, s, eq) {
                        Ok(t) => worst = worst.max((t.sum() - 1.0).abs()),
                        Err(Error::PauliForbidden) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn normalization_multi() -> Result<f64> {
    const LEVELS: [f64; 5] = [0.0, 0.1, 0.5, 0.8, 1.0];
    let mut worst: f64 = 0.0;
    for w in w_grid(101) {
        for n_t in LEVELS {
            for m_t in LEVELS {
                let d = mm_coefficients(w, n_t)?;
                let dd = mm_coefficients(w, m_t)?;
                for s in Scenario::ALL {
                    worst = worst.max((multi_mode::probs_distinguishable_mm(&d, &dd, s).sum() - 1.0).abs());
                    for ov in LEVELS {
                        for stats in [Statistics::Boson, Statistics::Fermion] {
                            match multi_mode::probs_identical_mm(&d, &dd, ov, stats, s) {
                                Ok(t) => worst = worst.max((t.sum() - 1.0).abs()),
                                Err(Error::PauliForbidden | Error::DegenerateState(_)) => {}
                                Err(e) => return Err(e),
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn boson_dip_shape() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in w_grid(401) {
        let c = single_mode::coefficients(w, 0.0);
        let t = single_mode::probs_identical(&c, Statistics::Boson, Scenario::CaseII, true)?;
        worst = worst.max((t.mixed() - (2.0 * w).cos().powi(2)).abs());
    }
    Ok(worst)
}

fn dip_positions() -> Result<f64> {
    let spec = SweepSpec {
        scenario: Scenario::CaseII,
        statistics: vec![Statistics::Boson],
        grid: Grid::new(0.0, PI, 401)?,
        model: Model::SingleMode { perpendicular_equal: true },
        epsilon_tau: 0.0,
    };
    let dips = dip_find(&spec, 1e-9)?;
    if dips.len() != 2 {
        return Ok(f64::INFINITY);
    }
    Ok((dips[0] - FRAC_PI_4).abs().max((dips[1] - 3.0 * FRAC_PI_4).abs()))
}

fn fermion_exclusion() -> Result<bool> {
    for w in w_grid(401) {
        let c = single_mode::coefficients(w, 0.0);
        let t = single_mode::probs_identical(&c, Statistics::Fermion, Scenario::CaseII, true)?;
        if t.mixed() != 1.0 || t.plus_plus != 0.0 || t.minus_minus != 0.0 {
            return Ok(false);
        }
    }
    let c = single_mode::coefficients(0.3, 0.0);
    Ok(single_mode::probs_identical(&c, Statistics::Fermion, Scenario::CaseI, true) == Err(Error::PauliForbidden))
}

fn case_one_coincidence() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in w_grid(401) {
        let c = single_mode::coefficients(w, 0.0);
        let dis = single_mode::probs_distinguishable(&c, &c, Scenario::CaseI);
        let bos = single_mode::probs_identical(&c, Statistics::Boson, Scenario::CaseI, true)?;
        worst = worst.max(dis.max_abs_diff(&bos));

        let d = mm_coefficients(w, 0.1)?;
        let dis = multi_mode::probs_distinguishable_mm(&d, &d, Scenario::CaseI);
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let t = multi_mode::probs_identical_mm(&d, &d, 0.5, stats, Scenario::CaseI)?;
            worst = worst.max(dis.max_abs_diff(&t));
        }
    }
    Ok(worst)
}

fn single_mode_limit() -> Result<bool> {
    let c = single_mode::coefficients(FRAC_PI_4, 0.0);
    let d_minus = |ratio: f64| -> Result<f64> {
        let f = multi_mode::scatter_fractions(&GaussianMode::new(0.0, ratio)?, Window::Finite(1.0))?;
        Ok(multi_mode::multimode_coefficients(&c, &f, 0.0)?.minus_sq())
    };
    if (d_minus(1e-3)? - 0.5).abs() > 1e-6 {
        return Ok(false);
    }
    let ratios = Grid::new(1e-3, 10.0, 401)?.points();
    let values = ratios.iter().map(|&r| d_minus(r)).collect::<Result<Vec<_>>>()?;
    // f64 values pin at |c-|² while erf rounds to 1; below that they must drop
    let limit = c.minus_sq();
    let non_increasing = values.windows(2).all(|p| p[1] < p[0] || (p[1] == limit && p[0] == limit));
    // ln(1/2 - |d-|²) = ln(sin²w) + ln erfc(σ_k/(√2σ)) stays resolvable everywhere
    let deficits = ratios
        .iter()
        .map(|&r| special::ln_erfc(1.0 / (2f64.sqrt() * r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(non_increasing && deficits.windows(2).all(|p| p[1] > p[0]))
}

fn tensor_oracle() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for w in w_grid(100) {
        let c = single_mode::coefficients(w, 0.0);
        for s in Scenario::ALL {
            for stats in [Statistics::Boson, Statistics::Fermion] {
                match (oracle::brute_force_single_mode(&c, stats, s), single_mode::probs_identical(&c, stats, s, true)) {
                    (Ok(a), Ok(b)) => worst = worst.max(a.max_abs_diff(&b)),
                    (Err(a), Err(b)) if a == b => {}
                    _ => return Ok(f64::INFINITY),
                }
            }
        }
    }
    Ok(worst)
}

fn overlap_oracle() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (k0, k1, mu) in [(1.0, 2.0, 2.0), (0.0, 0.0, 1.0), (0.0, 10.0, 1.0)] {
        let a = GaussianMode::new(k0, mu)?;
        let b = GaussianMode::new(k1, mu)?;
        let q = oracle::overlap_quadrature(&a, &b, 1000)?;
        let closed = multi_mode::overlap(&a, &b)?;
        worst = worst.max((q.factored - closed).abs()).max((q.double - closed).abs());
    }
    Ok(worst)
}

fn fraction_oracle() -> Result<f64> {
    let mut worst: f64 = 0.0;
    let g = GaussianMode::new(1.0, 1.0)?;
    for sk in [1e-3, 0.3, 1.0, 2.0, 5.0] {
        let q = oracle::fraction_quadrature(&g, sk, 1000)?;
        worst = worst.max((q - special::erf(sk / (2f64.sqrt() * g.spread()))?).abs());
    }
    Ok(worst)
}

/// Largest deviation in units of the per-entry standard error.
fn monte_carlo(seed: u64) -> Result<f64> {
    let a = GaussianMode::new(1.0, 0.8)?;
    let b = GaussianMode::new(-1.0, 1.6)?;
    let sigma_k = 1.0;
    let w = 1.1;
    let fa = multi_mode::scatter_fractions(&a, Window::Finite(sigma_k))?;
    let fb = multi_mode::scatter_fractions(&b, Window::Finite(sigma_k))?;
    let c = single_mode::coefficients(w, 0.0);
    let d = multi_mode::multimode_coefficients(&c, &fa, 0.0)?;
    let dd = multi_mode::multimode_coefficients(&c, &fb, 0.0)?;
    let mut worst: f64 = 0.0;
    for s in Scenario::ALL {
        let exact = multi_mode::probs_distinguishable_mm(&d, &dd, s);
        let mc = oracle::monte_carlo_distinguishable(&a, &b, sigma_k, w, s, 1_000_000, seed)?;
        worst = worst.max(z_scores(&mc.table, &mc.std_err, &exact));
    }
    Ok(worst)
}

fn z_scores(sample: &ChannelTable, err: &ChannelTable, exact: &ChannelTable) -> f64 {
    sample
        .to_array()
        .iter()
        .zip(err.to_array())
        .zip(exact.to_array())
        .map(|((s, e), x)| if e > 0.0 { (s - x).abs() / e } else if s == &x { 0.0 } else { f64::INFINITY })
        .fold(0.0, f64::max)
}

fn reduced_visibility() -> Result<bool> {
    let dip_min = |ov: f64, n_t: f64| -> Result<f64> {
        let mut min = f64::INFINITY;
        for w in w_grid(401) {
            let d = mm_coefficients(w, n_t)?;
            let t = multi_mode::probs_identical_mm(&d, &d, ov, Statistics::Boson, Scenario::CaseII)?;
            min = min.min(t.mixed());
        }
        Ok(min)
    };
    Ok(dip_min(0.5, 0.1)? > 0.0 && dip_min(1.0, 0.0)? < 1e-12)
}

fn estimator_round_trip() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for truth in [0.1, 0.5, (-0.25f64).exp(), 1.0] {
        for w in [PI / 6.0, PI / 3.0] {
            for n_t in [0.0, 0.1] {
                let d = mm_coefficients(w, n_t)?;
                let t = multi_mode::probs_identical_mm(&d, &d, truth, Statistics::Boson, Scenario::CaseII)?;
                worst = worst.max((overlap_estimate(t.mixed(), &d)?.value - truth).abs());
            }
        }
    }
    Ok(worst)
}

fn erf_reference() -> Result<f64> {
    Ok((special::erf(1.0)? - 0.842_700_792_949_714_9)
        .abs()
        .max((special::erfc(2.0)? - 0.004_677_734_981_047_266).abs()))
}

/// Runs every check. `seed` drives the Monte Carlo comparison.
pub fn check(seed: u64) -> Vec<CheckOutcome> {
    vec![
        bounded("erf_reference_values", erf_reference(), 1e-12),
        bounded("normalization_single_mode", normalization_single(), 1e-12),
        bounded("normalization_multi_mode", normalization_multi(), 1e-12),
        bounded("boson_mixed_is_cos2_2w", boson_dip_shape(), 1e-12),
        bounded("dip_find_quarter_pi", dip_positions(), 1e-10),
        flag("fermion_exclusion", fermion_exclusion(), "case II mixed = 1; case I raises PauliForbidden"),
        bounded("case_one_statistics_coincide", case_one_coincidence(), 1e-12),
        flag("single_mode_limit", single_mode_limit(), "|d-|^2 -> 1/2 and decreasing in sigma/sigma_k"),
        bounded("tensor_oracle", tensor_oracle(), 1e-12),
        bounded("overlap_quadrature", overlap_oracle(), 1e-8),
        bounded("fraction_quadrature", fraction_oracle(), 1e-8),
        bounded("monte_carlo_z_score", monte_carlo(seed), 3.0),
        flag("reduced_visibility", reduced_visibility(), "I=0.5 floor > 0; I=1, N_T=0 floor = 0"),
        bounded("overlap_estimate_round_trip", estimator_round_trip(), 1e-10),
    ]
}

/// Report lines followed by a summary line.
pub fn report(outcomes: &[CheckOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        writeln!(out, "{}", o.line()).unwrap();
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(out, "SUMMARY passed={} failed={}", outcomes.len() - failed, failed).unwrap();
    out
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let outcomes = check(DEFAULT_SEED);
        for o in &outcomes {
            assert!(o.passed, "{}", o.line());
        }
        let text = report(&outcomes);
        assert!(text.ends_with(&format!("SUMMARY passed={} failed=0\n", outcomes.len())));
        assert!(text.lines().all(|l| l.starts_with("PASS ") || l.starts_with("SUMMARY ")));
    }
}
