//! Estimating the exchange overlap from a measured coincidence rate.
//!
//! For bosons with equal parallel distributions in case II the mixed-channel
//! probability is `P = |d+|⁴ + |d-|⁴ - 2 I |d+|² |d-|²`, which is linear in
//! the overlap `I` and can be inverted directly.

use crate::error::{Error, Result};
use crate::single_mode::ScatterCoefficients;

/// Raw estimates this far outside `[0, 1]` are clamped with a warning.
pub const CLAMP_MARGIN: f64 = 0.05;
/// `|d+|² |d-|²` below this makes the inversion meaningless.
pub const CONDITIONING_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapEstimate {
    /// Estimate in `[0, 1]`.
    pub value: f64,
    /// Unclamped inversion.
    pub raw: f64,
    /// Set when `raw` fell slightly outside `[0, 1]` and was clamped.
    pub clamped: bool,
}

pub fn overlap_estimate(measured_mixed: f64, d: &ScatterCoefficients) -> Result<OverlapEstimate> {
    if !(0.0..=1.0).contains(&measured_mixed) {
        return Err(Error::Domain(format!(
            "measured mixed-channel probability must lie in [0, 1], got {measured_mixed}"
        )));
    }
    let (p, m) = (d.plus_sq(), d.minus_sq());
    let product = p * m;
    if product < CONDITIONING_FLOOR {
        return Err(Error::IllConditioned(product));
    }
    let raw = (p * p + m * m - measured_mixed) / (2.0 * product);
    if (0.0..=1.0).contains(&raw) {
        return Ok(OverlapEstimate { value: raw, raw, clamped: false });
    }
    if (-CLAMP_MARGIN..=1.0 + CLAMP_MARGIN).contains(&raw) {
        return Ok(OverlapEstimate { value: raw.clamp(0.0, 1.0), raw, clamped: true });
    }
    Err(Error::InconsistentMeasurement(raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_mode::{multimode_coefficients, probs_identical_mm, ScatterFractions};
    use crate::single_mode::{coefficients, Scenario, Statistics};
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn d_of(w: f64, n_t: f64) -> ScatterCoefficients {
        let f = ScatterFractions::from_unscatterable(n_t).unwrap();
        multimode_coefficients(&coefficients(w, 0.0), &f, 0.0).unwrap()
    }

    #[test]
    fn distinguishable_limit() {
        let d = d_of(0.7, 0.2);
        let (p, m) = (d.plus_sq(), d.minus_sq());
        let e = overlap_estimate(p * p + m * m, &d).unwrap();
        assert!(e.value.abs() < 1e-15);
    }

    #[test]
    fn perfect_dip() {
        let e = overlap_estimate(0.0, &d_of(FRAC_PI_4, 0.0)).unwrap();
        assert!((e.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn round_trip() {
        let d = d_of(FRAC_PI_3, 0.1);
        let truth = 0.7788;
        let t = probs_identical_mm(&d, &d, truth, Statistics::Boson, Scenario::CaseII).unwrap();
        let e = overlap_estimate(t.mixed(), &d).unwrap();
        assert!((e.value - truth).abs() < 1e-10);
        assert!(!e.clamped);
    }

    #[test]
    fn clamping_and_errors() {
        let d = d_of(FRAC_PI_3, 0.0);
        let (p, m) = (d.plus_sq(), d.minus_sq());
        let base = p * p + m * m;
        // raw = -0.02
        let e = overlap_estimate(base + 0.04 * p * m, &d).unwrap();
        assert!(e.clamped);
        assert_eq!(e.value, 0.0);
        assert!((e.raw + 0.02).abs() < 1e-12);
        // raw = -0.2
        assert!(matches!(
            overlap_estimate(base + 0.4 * p * m, &d),
            Err(Error::InconsistentMeasurement(_))
        ));
        assert!(matches!(overlap_estimate(0.3, &d_of(0.0, 0.0)), Err(Error::IllConditioned(_))));
        assert!(matches!(overlap_estimate(1.3, &d), Err(Error::Domain(_))));
    }
}
