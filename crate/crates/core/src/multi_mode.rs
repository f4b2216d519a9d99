//! Gaussian multi-mode states.
//!
//! Only modes within `σ_k/2` of the Bragg condition can be scattered; the
//! rest of the beam is always transmitted. With a Gaussian parallel mode
//! distribution of spread `σ` the scatterable fraction is
//! `N_R = erf(σ_k / (√2 σ))`, and each particle is described by the
//! effective coefficients
//!
//! ```text
//! d+ = e^{-iετ} (N_T + N_R |c+|²)^{1/2},    d- = N_R^{1/2} c-.
//! ```
//!
//! The perpendicular distributions are never observed. They enter the
//! identical-particle tables only through the exchange overlap
//! `I = exp(-(K0 - K0')² / μ²)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::Window;
use crate::single_mode::{self, ChannelTable, Scenario, ScatterCoefficients, Statistics, NORM_TOLERANCE};
use crate::special;

/// Normalization denominators below this are treated as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// A 1-D Gaussian wavenumber distribution
/// `g(k) = (2/(π σ²))^{1/4} exp(-(k - k0)² / σ²)`, normalized so that
/// `∫ |g|² dk = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMode {
    center: f64,
    spread: f64,
}

impl GaussianMode {
    pub fn new(center: f64, spread: f64) -> Result<Self> {
        if !center.is_finite() || !spread.is_finite() {
            return Err(Error::Domain("mode center and spread must be finite".into()));
        }
        if spread <= 0.0 {
            return Err(Error::Domain(format!("mode spread must be > 0, got {spread}")));
        }
        Ok(Self { center, spread })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn spread(&self) -> f64 {
        self.spread
    }

    pub fn normalization(&self) -> f64 {
        (2.0 / (PI * self.spread * self.spread)).powf(0.25)
    }

    pub fn amplitude(&self, k: f64) -> f64 {
        let x = (k - self.center) / self.spread;
        self.normalization() * (-x * x).exp()
    }

    /// `|g(k)|²`, a normal density with standard deviation `spread / 2`.
    pub fn density(&self, k: f64) -> f64 {
        let a = self.amplitude(k);
        a * a
    }
}

/// Fractions of a beam inside (`n_r`) and outside (`n_t`) the scatterable
/// window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterFractions {
    n_r: f64,
    n_t: f64,
}

impl ScatterFractions {
    /// Builds the fractions from the unscatterable share, as when it is
    /// held fixed over a sweep.
    pub fn from_unscatterable(n_t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&n_t) {
            return Err(Error::Domain(format!("unscatterable fraction must lie in [0, 1], got {n_t}")));
        }
        Ok(Self { n_r: 1.0 - n_t, n_t })
    }

    /// Every mode scatterable.
    pub fn single_mode() -> Self {
        Self { n_r: 1.0, n_t: 0.0 }
    }

    pub fn n_r(&self) -> f64 {
        self.n_r
    }

    pub fn n_t(&self) -> f64 {
        self.n_t
    }
}

pub fn scatter_fractions(parallel: &GaussianMode, sigma_k: Window) -> Result<ScatterFractions> {
    let sigma_k = match sigma_k {
        Window::Unbounded => return Ok(ScatterFractions::single_mode()),
        Window::Finite(v) => v,
    };
    if !sigma_k.is_finite() || sigma_k <= 0.0 {
        return Err(Error::Domain(format!("window width must be > 0, got {sigma_k}")));
    }
    let x = sigma_k / (2f64.sqrt() * parallel.spread());
    Ok(ScatterFractions {
        n_r: special::erf(x)?,
        n_t: special::erfc(x)?,
    })
}

/// Effective two-level coefficients `(d+, d-)` of a multi-mode particle.
pub fn multimode_coefficients(
    c: &ScatterCoefficients,
    f: &ScatterFractions,
    epsilon_tau: f64,
) -> Result<ScatterCoefficients> {
    let plus = Complex64::from_polar(1.0, -epsilon_tau) * (f.n_t + f.n_r * c.plus_sq()).sqrt();
    let minus = f.n_r.sqrt() * c.minus();
    ScatterCoefficients::new(plus, minus)
}

/// Exchange overlap of two perpendicular distributions with equal spreads.
pub fn overlap(perp_a: &GaussianMode, perp_b: &GaussianMode) -> Result<f64> {
    let (mu_a, mu_b) = (perp_a.spread(), perp_b.spread());
    if (mu_a - mu_b).abs() > 1e-12 * mu_a.max(mu_b) {
        return Err(Error::Unsupported(format!(
            "exchange overlap needs equal perpendicular spreads, got {mu_a} and {mu_b}"
        )));
    }
    let x = (perp_a.center() - perp_b.center()) / mu_a;
    Ok((-x * x).exp())
}

/// Same algebra as the single-mode table with `c± → d±, D±`.
pub fn probs_distinguishable_mm(d: &ScatterCoefficients, dd: &ScatterCoefficients, s: Scenario) -> ChannelTable {
    single_mode::probs_distinguishable(d, dd, s)
}

/// Identical particles with effective coefficients `d` (particle 1) and
/// `dd` (particle 2) and perpendicular exchange overlap `overlap_i`.
///
/// Entries are built in units of `2N²` from the complex amplitudes, and the
/// normalization is their sum:
///
/// ```text
/// case I:  1 ± I(|d+||D+| + |d-||D-|)²
/// case II: 1 ± I(|d+||D-| - |d-||D+|)²
/// ```
///
/// for coefficients obeying the standard phase relation.
pub fn probs_identical_mm(
    d: &ScatterCoefficients,
    dd: &ScatterCoefficients,
    overlap_i: f64,
    stats: Statistics,
    s: Scenario,
) -> Result<ChannelTable> {
    let sign = stats.require_identical()?;
    if !(0.0..=1.0).contains(&overlap_i) {
        return Err(Error::Domain(format!("overlap must lie in [0, 1], got {overlap_i}")));
    }
    let exchange = sign * overlap_i;

    let (dp, dm) = (d.plus(), d.minus());
    let (ddp, ddm) = (dd.plus(), dd.minus());
    let (dp2, dm2) = (d.plus_sq(), d.minus_sq());
    let (ddp2, ddm2) = (dd.plus_sq(), dd.minus_sq());

    let (same_forward, mixed, same_backward) = match s {
        Scenario::CaseI => {
            let cross = (dp.conj() * dm * ddp * ddm.conj()).re;
            (
                (1.0 + exchange) * dp2 * ddp2,
                dp2 * ddm2 + ddp2 * dm2 + 2.0 * exchange * cross,
                (1.0 + exchange) * dm2 * ddm2,
            )
        }
        Scenario::CaseII => {
            let cross = (dp.conj() * ddm * ddp.conj() * dm).re;
            (
                (1.0 + exchange) * dp2 * ddm2,
                dp2 * ddp2 + dm2 * ddm2 + 2.0 * exchange * cross,
                (1.0 + exchange) * dm2 * ddp2,
            )
        }
    };

    let total = same_forward + mixed + same_backward;
    if total < DEGENERACY_THRESHOLD {
        return Err(if stats == Statistics::Fermion && overlap_i == 1.0 {
            Error::PauliForbidden
        } else {
            Error::DegenerateState(total)
        });
    }
    let table = ChannelTable::from_mixed(same_forward / total, mixed / total, same_backward / total);
    debug_assert!((table.sum() - 1.0).abs() < NORM_TOLERANCE);
    Ok(table)
}

/// Closed-form normalization denominator `1/(2N²)` for coefficients with the
/// standard phase relation.
pub fn normalization_denominator(
    d: &ScatterCoefficients,
    dd: &ScatterCoefficients,
    overlap_i: f64,
    stats: Statistics,
    s: Scenario,
) -> Result<f64> {
    let sign = stats.require_identical()?;
    let (dp, dm) = (d.plus().norm(), d.minus().norm());
    let (ddp, ddm) = (dd.plus().norm(), dd.minus().norm());
    let q = match s {
        Scenario::CaseI => dp * ddp + dm * ddm,
        Scenario::CaseII => dp * ddm - dm * ddp,
    };
    Ok(1.0 + sign * overlap_i * q * q)
}
