//! Bragg scattering coefficients and single-mode two-particle exit tables.
//!
//! A particle incident in the `+k` order leaves as `c+|+k> + c-|-k>`, with
//!
//! ```text
//! c+ = exp(-iετ) cos w,    c- = -i exp(-iετ) sin w.
//! ```
//!
//! A particle incident in the `-k` order leaves as `c+|-k> + c-|+k>`. Two
//! particles enter either in the same order (case I) or in opposite orders
//! (case II). For identical particles the perpendicular momenta matter only
//! through whether they coincide: if they differ the particles can be told
//! apart and behave as distinguishable ones.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const NORM_TOLERANCE: f64 = 1e-12;

/// The two-level amplitude pair `(c+, c-)` of a single particle: `c+` stays
/// in the incident order, `c-` is scattered into the opposite one.
///
/// Also used for the multi-mode effective coefficients `d±` and `D±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterCoefficients {
    plus: Complex64,
    minus: Complex64,
}

impl ScatterCoefficients {
    /// Fails unless `|plus|² + |minus|² = 1` within 1e-12.
    pub fn new(plus: Complex64, minus: Complex64) -> Result<Self> {
        if !(plus.re.is_finite() && plus.im.is_finite() && minus.re.is_finite() && minus.im.is_finite()) {
            return Err(Error::Domain("scattering amplitudes must be finite".into()));
        }
        let norm = plus.norm_sqr() + minus.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Domain(format!(
                "scattering amplitudes must have unit norm, got |c+|^2 + |c-|^2 = {norm}"
            )));
        }
        Ok(Self { plus, minus })
    }

    pub fn plus(&self) -> Complex64 {
        self.plus
    }

    pub fn minus(&self) -> Complex64 {
        self.minus
    }

    /// Transmission probability `|c+|²`.
    pub fn plus_sq(&self) -> f64 {
        self.plus.norm_sqr()
    }

    /// Scattering probability `|c-|²`.
    pub fn minus_sq(&self) -> f64 {
        self.minus.norm_sqr()
    }
}

/// Exit-channel probabilities of a particle pair, indexed by the momentum
/// order each particle is detected in: `plus_minus` is particle 1 in `+k`
/// and particle 2 in `-k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChannelTable {
    pub plus_plus: f64,
    pub plus_minus: f64,
    pub minus_plus: f64,
    pub minus_minus: f64,
}

impl ChannelTable {
    pub fn new(plus_plus: f64, plus_minus: f64, minus_plus: f64, minus_minus: f64) -> Self {
        Self { plus_plus, plus_minus, minus_plus, minus_minus }
    }

    /// Table for identical particles: the mixed probability is shared evenly
    /// between the two orderings, which no detector can tell apart.
    pub(crate) fn from_mixed(same_forward: f64, mixed: f64, same_backward: f64) -> Self {
        Self::new(same_forward, 0.5 * mixed, 0.5 * mixed, same_backward)
    }

    pub(crate) fn from_array(p: [f64; 4]) -> Self {
        Self::new(p[0], p[1], p[2], p[3])
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.plus_plus, self.plus_minus, self.minus_plus, self.minus_minus]
    }

    pub fn sum(&self) -> f64 {
        self.to_array().iter().sum()
    }

    /// Both particles in `+k`.
    pub fn same_forward(&self) -> f64 {
        self.plus_plus
    }

    /// One particle in each order.
    pub fn mixed(&self) -> f64 {
        self.plus_minus + self.minus_plus
    }

    /// Both particles in `-k`.
    pub fn same_backward(&self) -> f64 {
        self.minus_minus
    }

    /// `[same_forward, mixed, same_backward]`: what a detector that cannot
    /// tell the particles apart records.
    pub fn coarse(&self) -> [f64; 3] {
        [self.same_forward(), self.mixed(), self.same_backward()]
    }

    pub fn max_abs_diff_coarse(&self, other: &ChannelTable) -> f64 {
        self.coarse()
            .iter()
            .zip(other.coarse())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ChannelTable) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for ChannelTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(+,+) {:.6}  (+,-) {:.6}  (-,+) {:.6}  (-,-) {:.6}",
            self.plus_plus, self.plus_minus, self.minus_plus, self.minus_minus
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Distinguishable,
    Boson,
    Fermion,
}

impl Statistics {
    pub const ALL: [Statistics; 3] = [Statistics::Distinguishable, Statistics::Boson, Statistics::Fermion];

    /// Sign of the exchange term: `+1` for bosons, `-1` for fermions.
    pub fn exchange_sign(self) -> Option<f64> {
        match self {
            Statistics::Distinguishable => None,
            Statistics::Boson => Some(1.0),
            Statistics::Fermion => Some(-1.0),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Statistics::Distinguishable => "dis",
            Statistics::Boson => "bos",
            Statistics::Fermion => "fer",
        }
    }

    pub(crate) fn require_identical(self) -> Result<f64> {
        self.exchange_sign()
            .ok_or_else(|| Error::Domain("identical-particle table requested for distinguishable statistics".into()))
    }
}

/// Incidence configuration of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Both particles incident in the `+k` order.
    CaseI,
    /// Particle 1 incident in `+k`, particle 2 in `-k`.
    CaseII,
}

impl Scenario {
    pub const ALL: [Scenario; 2] = [Scenario::CaseI, Scenario::CaseII];
}

/// `c+ = e^{-iφ} cos w`, `c- = -i e^{-iφ} sin w` with `φ = ετ`.
pub fn coefficients(w: f64, epsilon_tau: f64) -> ScatterCoefficients {
    let phase = Complex64::from_polar(1.0, -epsilon_tau);
    ScatterCoefficients {
        plus: phase * w.cos(),
        minus: -Complex64::i() * phase * w.sin(),
    }
}

/// Arranges per-particle transmission (t) / reflection (r) products into
/// momentum channels. In case II particle 2 starts in `-k`, so its
/// transmitted branch is `-k` and its reflected branch is `+k`.
pub(crate) fn place(s: Scenario, tt: f64, tr: f64, rt: f64, rr: f64) -> ChannelTable {
    match s {
        Scenario::CaseI => ChannelTable::new(tt, tr, rt, rr),
        Scenario::CaseII => ChannelTable::new(tr, tt, rr, rt),
    }
}

pub fn probs_distinguishable(a: &ScatterCoefficients, b: &ScatterCoefficients, s: Scenario) -> ChannelTable {
    let (ap, am) = (a.plus_sq(), a.minus_sq());
    let (bp, bm) = (b.plus_sq(), b.minus_sq());
    place(s, ap * bp, ap * bm, am * bp, am * bm)
}

/// Identical particles sharing the coefficients `c`.
///
/// With `perpendicular_equal == false` the particles are distinguishable by
/// their perpendicular momenta. Two fermions in case I with equal
/// perpendicular momenta would occupy the same state and are rejected.
pub fn probs_identical(
    c: &ScatterCoefficients,
    stats: Statistics,
    s: Scenario,
    perpendicular_equal: bool,
) -> Result<ChannelTable> {
    let sign = stats.require_identical()?;
    if !perpendicular_equal {
        return Ok(probs_distinguishable(c, c, s));
    }

    let (p, m) = (c.plus(), c.minus());
    let (pp, mm) = (c.plus_sq(), c.minus_sq());

    // Unnormalized entries (N = 1). Their sum is 1/N², which is 4 in case I
    // and 2 in case II for coefficients with the standard phase relation.
    let (same_forward, mixed, same_backward) = match s {
        Scenario::CaseI => {
            if stats == Statistics::Fermion {
                return Err(Error::PauliForbidden);
            }
            (4.0 * pp * pp, 8.0 * pp * mm, 4.0 * mm * mm)
        }
        Scenario::CaseII => {
            let same = (1.0 + sign) * (1.0 + sign) * pp * mm;
            (same, 2.0 * (p * p + sign * m * m).norm_sqr(), same)
        }
    };

    let total = same_forward + mixed + same_backward;
    if total < NORM_TOLERANCE {
        return Err(Error::PauliForbidden);
    }
    Ok(ChannelTable::from_mixed(same_forward / total, mixed / total, same_backward / total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI, TAU};

    fn grid(n: usize, stop: f64) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| stop * i as f64 / (n - 1) as f64)
    }

    fn all_tables(c: &ScatterCoefficients) -> Vec<ChannelTable> {
        let mut out = Vec::new();
        for s in Scenario::ALL {
            out.push(probs_distinguishable(c, c, s));
            for stats in [Statistics::Boson, Statistics::Fermion] {
                for eq in [false, true] {
                    if let Ok(t) = probs_identical(c, stats, s, eq) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn coefficient_limits() {
        let c = coefficients(0.0, 1.3);
        assert!((c.plus_sq() - 1.0).abs() < 1e-15);
        assert_eq!(c.minus_sq(), 0.0);

        let c = coefficients(FRAC_PI_4, 0.0);
        assert!((c.minus_sq() - 0.5).abs() < 1e-15);

        let c = coefficients(FRAC_PI_2, 0.0);
        assert!(c.plus().norm() < 1e-15);
        assert!((c.minus_sq() - 1.0).abs() < 1e-15);
        // c- carries the -i
        assert!((c.minus() - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_unit_coefficients() {
        let r = ScatterCoefficients::new(Complex64::new(0.8, 0.0), Complex64::new(0.8, 0.0));
        assert!(matches!(r, Err(Error::Domain(_))));
        assert!(ScatterCoefficients::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).is_ok());
    }

    #[test]
    fn distinguishable_even_split() {
        let c = coefficients(FRAC_PI_4, 0.0);
        let t = probs_distinguishable(&c, &c, Scenario::CaseI);
        for p in t.to_array() {
            assert!((p - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn distinguishable_no_scattering() {
        let c = coefficients(0.0, 0.0);
        let t = probs_distinguishable(&c, &c, Scenario::CaseI);
        assert_eq!(t, ChannelTable::new(1.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn case_two_double_scattering_saturates() {
        let c = coefficients(FRAC_PI_2, 0.0);
        let t = probs_distinguishable(&c, &c, Scenario::CaseII);
        assert!((t.minus_plus - 1.0).abs() < 1e-15);
        assert!(t.plus_plus.abs() < 1e-15 && t.plus_minus.abs() < 1e-15 && t.minus_minus.abs() < 1e-15);
    }

    #[test]
    fn case_two_labels() {
        // (k;-k) is double transmission, (k;k) and (-k;-k) single scattering
        let c = coefficients(0.3, 0.0);
        let t = probs_distinguishable(&c, &c, Scenario::CaseII);
        let (p, m) = (c.plus_sq(), c.minus_sq());
        assert_eq!(t.plus_minus, p * p);
        assert_eq!(t.plus_plus, p * m);
        assert_eq!(t.minus_plus, m * m);
        assert_eq!(t.minus_minus, m * p);
    }

    #[test]
    fn boson_dip() {
        let c = coefficients(FRAC_PI_4, 0.0);
        let t = probs_identical(&c, Statistics::Boson, Scenario::CaseII, true).unwrap();
        assert!(t.mixed().abs() < 1e-15);
        assert!((t.plus_plus - 0.5).abs() < 1e-15);
        assert!((t.minus_minus - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fermions_always_split() {
        for w in grid(101, TAU) {
            let c = coefficients(w, 0.4);
            let t = probs_identical(&c, Statistics::Fermion, Scenario::CaseII, true).unwrap();
            assert_eq!(t.mixed(), 1.0);
            assert_eq!(t.plus_plus, 0.0);
            assert_eq!(t.minus_minus, 0.0);
        }
    }

    #[test]
    fn fermion_case_one_forbidden() {
        let c = coefficients(0.7, 0.0);
        assert_eq!(
            probs_identical(&c, Statistics::Fermion, Scenario::CaseI, true),
            Err(Error::PauliForbidden)
        );
        // different perpendicular momenta make the preparation legal
        assert!(probs_identical(&c, Statistics::Fermion, Scenario::CaseI, false).is_ok());
    }

    #[test]
    fn boson_case_one_is_distinguishable() {
        let c = coefficients(FRAC_PI_6, 0.0);
        let b = probs_identical(&c, Statistics::Boson, Scenario::CaseI, true).unwrap();
        let d = probs_distinguishable(&c, &c, Scenario::CaseI);
        assert!(b.max_abs_diff(&d) < 1e-15);
    }

    #[test]
    fn unequal_perpendicular_is_distinguishable() {
        let c = coefficients(1.1, 0.2);
        for s in Scenario::ALL {
            for stats in [Statistics::Boson, Statistics::Fermion] {
                let t = probs_identical(&c, stats, s, false).unwrap();
                assert_eq!(t, probs_distinguishable(&c, &c, s));
            }
        }
    }

    #[test]
    fn distinguishable_stats_rejected() {
        let c = coefficients(1.0, 0.0);
        assert!(matches!(
            probs_identical(&c, Statistics::Distinguishable, Scenario::CaseI, true),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn normalization_grid() {
        for w in grid(1000, TAU) {
            for t in all_tables(&coefficients(w, 0.0)) {
                assert!((t.sum() - 1.0).abs() < 1e-12, "w = {w}");
                assert!(t.to_array().iter().all(|p| (0.0..=1.0 + 1e-15).contains(p)));
            }
        }
    }

    #[test]
    fn boson_mixed_is_cos_squared() {
        for w in grid(1000, TAU) {
            let t = probs_identical(&coefficients(w, 0.0), Statistics::Boson, Scenario::CaseII, true).unwrap();
            let want = (2.0 * w).cos().powi(2);
            assert!((t.mixed() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn same_channel_ordering() {
        for w in grid(200, PI) {
            let c = coefficients(w, 0.0);
            let b = probs_identical(&c, Statistics::Boson, Scenario::CaseII, true).unwrap();
            let f = probs_identical(&c, Statistics::Fermion, Scenario::CaseII, true).unwrap();
            let d = probs_distinguishable(&c, &c, Scenario::CaseII);
            let pm = c.plus_sq() * c.minus_sq();
            assert!((b.plus_plus - 2.0 * pm).abs() < 1e-12);
            assert_eq!(f.plus_plus, 0.0);
            assert!(f.plus_plus <= d.plus_plus && d.plus_plus <= b.plus_plus + 1e-15);
        }
    }

    proptest! {
        #[test]
        fn global_phase_invariance(w in 0.0f64..TAU, phase in -10.0f64..10.0) {
            let a = all_tables(&coefficients(w, 0.0));
            let b = all_tables(&coefficients(w, phase));
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(x.max_abs_diff(y) <= 1e-15);
            }
        }

        #[test]
        fn periodic_in_pi(w in 0.0f64..TAU) {
            let a = all_tables(&coefficients(w, 0.0));
            let b = all_tables(&coefficients(w + PI, 0.0));
            for (x, y) in a.iter().zip(&b) {
                prop_assert!(x.max_abs_diff(y) <= 1e-12);
            }
        }

        #[test]
        fn unit_norm(w in -100.0f64..100.0, phase in -100.0f64..100.0) {
            let c = coefficients(w, phase);
            prop_assert!((c.plus_sq() + c.minus_sq() - 1.0).abs() <= 1e-12);
        }
    }
}
