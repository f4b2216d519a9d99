//! Physical inputs of a grating interaction and the scalars derived from them.
//!
//! All quantities live in one caller-chosen consistent unit system. The
//! natural-unit constructor fixes `hbar = mass = k_l = 1`, which leaves the
//! pulse area `w` and the window width `σ_k` as the only free knobs.

use crate::error::{Error, Result};

/// Width of a scatterable window.
///
/// A zero interaction time makes the window infinitely wide: every mode of
/// the beam can be scattered, which is the single-mode limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    Finite(f64),
    Unbounded,
}

impl Window {
    pub fn finite(self) -> Option<f64> {
        match self {
            Window::Finite(v) => Some(v),
            Window::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Window::Unbounded)
    }
}

/// Inputs of a single Bragg pulse: the grating `V = V0 cos²(k_l x)` switched
/// on for a time `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionParams {
    /// Potential depth (energy).
    pub v0: f64,
    /// Interaction duration.
    pub tau: f64,
    /// Grating wavenumber.
    pub k_l: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl InteractionParams {
    pub fn new(v0: f64, tau: f64, k_l: f64, mass: f64, hbar: f64) -> Result<Self> {
        let p = Self { v0, tau, k_l, mass, hbar };
        p.validate()?;
        Ok(p)
    }

    /// `hbar = mass = k_l = 1`.
    pub fn natural(v0: f64, tau: f64) -> Result<Self> {
        Self::new(v0, tau, 1.0, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("v0", self.v0),
            ("tau", self.tau),
            ("k_l", self.k_l),
            ("mass", self.mass),
            ("hbar", self.hbar),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {v}")));
            }
        }
        if self.v0 < 0.0 {
            return Err(Error::Domain(format!("v0 must be >= 0, got {}", self.v0)));
        }
        if self.tau < 0.0 {
            return Err(Error::Domain(format!("tau must be >= 0, got {}", self.tau)));
        }
        for (name, v) in [("k_l", self.k_l), ("mass", self.mass), ("hbar", self.hbar)] {
            if v <= 0.0 {
                return Err(Error::Domain(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// Scalars derived from [`InteractionParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    /// Dimensionless pulse area `V0 τ / 4ħ`.
    pub w: f64,
    /// Recoil angular frequency `ħ k_l² / 2m`.
    pub epsilon: f64,
    /// Accumulated phase `ε τ`.
    pub epsilon_tau: f64,
    /// Width of the scatterable wavenumber window, `m / (τ ħ k_l)`.
    pub sigma_k: Window,
    /// Width of the scatterable velocity window, `1 / (τ k_l)`.
    pub sigma_v: Window,
}

pub fn derive(params: &InteractionParams) -> Result<DerivedQuantities> {
    params.validate()?;
    let InteractionParams { v0, tau, k_l, mass, hbar } = *params;

    let w = v0 * tau / (4.0 * hbar);
    let epsilon = hbar * k_l * k_l / (2.0 * mass);
    let (sigma_k, sigma_v) = if tau > 0.0 {
        (
            Window::Finite(mass / (tau * hbar * k_l)),
            Window::Finite(1.0 / (tau * k_l)),
        )
    } else {
        (Window::Unbounded, Window::Unbounded)
    };

    Ok(DerivedQuantities {
        w,
        epsilon,
        epsilon_tau: epsilon * tau,
        sigma_k,
        sigma_v,
    })
}

/// Angle between the particle path and the normal to the grating, from the
/// parallel and perpendicular wavenumbers.
pub fn incidence_angle(k_parallel: f64, k_perp: f64) -> Result<f64> {
    if !k_parallel.is_finite() || !k_perp.is_finite() {
        return Err(Error::Domain("wavenumbers must be finite".into()));
    }
    if k_perp <= 0.0 {
        return Err(Error::Domain(format!(
            "grazing incidence: perpendicular wavenumber must be > 0, got {k_perp}"
        )));
    }
    Ok((k_parallel / k_perp).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn pulse_area() {
        let d = derive(&InteractionParams::natural(PI, 1.0).unwrap()).unwrap();
        assert_relative_eq!(d.w, FRAC_PI_4, epsilon = 1e-15);
    }

    #[test]
    fn window_width() {
        let d = derive(&InteractionParams::new(0.0, 2.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(d.sigma_k, Window::Finite(0.5));
        assert_eq!(d.sigma_v, Window::Finite(0.5));
    }

    #[test]
    fn recoil_phase() {
        let d = derive(&InteractionParams::new(0.0, 1.0, 2.0, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(d.epsilon, 2.0);
        assert_eq!(d.epsilon_tau, 2.0);
    }

    #[test]
    fn zero_time_is_unbounded() {
        let d = derive(&InteractionParams::natural(3.0, 0.0).unwrap()).unwrap();
        assert!(d.sigma_k.is_unbounded());
        assert!(d.sigma_v.is_unbounded());
        assert_eq!(d.w, 0.0);
        assert_eq!(d.epsilon_tau, 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(InteractionParams::natural(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(InteractionParams::natural(1.0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(InteractionParams::new(1.0, 1.0, 0.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(InteractionParams::new(1.0, 1.0, 1.0, -2.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(InteractionParams::new(1.0, 1.0, 1.0, 1.0, f64::NAN), Err(Error::Domain(_))));
        // a hand-built value bypassing `new` is still checked
        let raw = InteractionParams { v0: 1.0, tau: 1.0, k_l: 1.0, mass: 1.0, hbar: 0.0 };
        assert!(derive(&raw).is_err());
    }

    #[test]
    fn incidence() {
        assert_eq!(incidence_angle(0.0, 3.0).unwrap(), 0.0);
        assert_relative_eq!(incidence_angle(1.7, 1.7).unwrap(), FRAC_PI_4, epsilon = 1e-15);
        assert_relative_eq!(incidence_angle(1.0, 2.0).unwrap(), 0.463_647_609_000_806, epsilon = 1e-14);
        assert!(matches!(incidence_angle(1.0, 0.0), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn pulse_area_depends_on_product(v0 in 1e-3f64..1e3, tau in 1e-3f64..1e3, lambda in 1e-2f64..1e2) {
            let a = derive(&InteractionParams::natural(v0, tau).unwrap()).unwrap();
            let b = derive(&InteractionParams::natural(v0 * lambda, tau / lambda).unwrap()).unwrap();
            prop_assert!((a.w - b.w).abs() <= 1e-12 * a.w.max(1.0));
        }

        #[test]
        fn window_widths_consistent(
            tau in 1e-3f64..1e3, k_l in 1e-2f64..1e2, mass in 1e-2f64..1e2, hbar in 1e-2f64..1e2,
        ) {
            let d = derive(&InteractionParams::new(1.0, tau, k_l, mass, hbar).unwrap()).unwrap();
            let sk = d.sigma_k.finite().unwrap();
            let sv = d.sigma_v.finite().unwrap();
            prop_assert!((sk - mass * sv / hbar).abs() <= 1e-12 * sk);
        }

        #[test]
        fn derive_is_pure(v0 in 0.0f64..10.0, tau in 0.0f64..10.0) {
            let p = InteractionParams::natural(v0, tau).unwrap();
            let a = derive(&p).unwrap();
            let b = derive(&p).unwrap();
            prop_assert_eq!(a.w.to_bits(), b.w.to_bits());
            prop_assert_eq!(a.epsilon_tau.to_bits(), b.epsilon_tau.to_bits());
            prop_assert_eq!(a, b);
        }
    }
}
