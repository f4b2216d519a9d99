//! Error function and complementary error function.
//!
//! `erf` uses the everywhere-positive series
//!
//! ```text
//! erf(x) = 2/√π · exp(-x²) · Σ_{n≥0} 2ⁿ x^{2n+1} / (1·3·5···(2n+1))
//! ```
//!
//! for `|x| < 2`, which has no cancellation, and the continued fraction
//! for `erfc` beyond that. Absolute error is below 1e-15 for every finite
//! argument.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Crossover between the series and the continued fraction.
const SPLIT: f64 = 2.0;
const MAX_TERMS: usize = 1000;

/// Beyond this, `erfc` underflows to zero.
const ERFC_ZERO: f64 = 27.3;

pub fn erf(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(erf_unchecked(x))
}

pub fn erfc(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(erfc_unchecked(x))
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("erf argument must be finite, got {x}")))
    }
}

/// `ln(erfc(x))`, finite for every finite `x` (no underflow for large `x`).
pub fn ln_erfc(x: f64) -> Result<f64> {
    check_finite(x)?;
    if x < SPLIT {
        Ok(erfc_unchecked(x).ln())
    } else {
        Ok(-x * x - (PI.sqrt() * continued_fraction(x)).ln())
    }
}

pub(crate) fn erf_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax < SPLIT {
        positive_series(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    v.copysign(x)
}

pub(crate) fn erfc_unchecked(x: f64) -> f64 {
    if x < SPLIT {
        // for x < 2 the result is > 4e-3, so the subtraction is benign
        1.0 - erf_unchecked(x)
    } else {
        erfc_continued_fraction(x)
    }
}

fn positive_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for n in 0..MAX_TERMS {
        term *= 2.0 * x2 / (2 * n + 3) as f64;
        sum += term;
        if term < sum * f64::EPSILON * 0.25 {
            break;
        }
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

fn erfc_continued_fraction(x: f64) -> f64 {
    if x > ERFC_ZERO {
        return 0.0;
    }
    (-x * x).exp() / (PI.sqrt() * continued_fraction(x))
}

/// `F(x) = x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))`, so that
/// `erfc(x) = exp(-x²) / (√π F(x))`. Modified Lentz algorithm; requires `x > 0`.
fn continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..MAX_TERMS {
        let a = n as f64 * 0.5;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Alternating Maclaurin series, summed until terms stop changing the
    /// result. Loses digits to cancellation for large x, so it is only used
    /// as a reference on |x| <= 3.
    fn taylor_oracle(x: f64) -> f64 {
        let mut sum = 0.0;
        let mut power = x; // x^(2n+1) / n!
        for n in 0..200 {
            let term = power / (2 * n + 1) as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let next = sum + sign * term;
            if next == sum && n > 0 {
                break;
            }
            sum = next;
            power *= x * x / (n + 1) as f64;
        }
        2.0 / PI.sqrt() * sum
    }

    fn midpoint_erf(x: f64, n: usize) -> f64 {
        let h = x / n as f64;
        let s: f64 = (0..n)
            .map(|i| {
                let u = (i as f64 + 0.5) * h;
                (-u * u).exp()
            })
            .sum();
        2.0 / PI.sqrt() * s * h
    }

    #[test]
    fn known_values() {
        assert_eq!(erf(0.0).unwrap(), 0.0);
        assert_eq!(erfc(0.0).unwrap(), 1.0);
        assert!((erf(1.0).unwrap() - 0.842700792949715).abs() < 1e-12);
        assert!((erfc(2.0).unwrap() - 0.004677734981063).abs() < 1e-12);
        assert!((erf(6.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((erf(-6.0).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_taylor_oracle() {
        for i in 0..=300 {
            let x = -3.0 + i as f64 * 0.02;
            let diff = (erf(x).unwrap() - taylor_oracle(x)).abs();
            assert!(diff < 1e-12, "x = {x}: diff {diff:e}");
        }
        assert!((taylor_oracle(1.0) - 0.842700792949715).abs() < 1e-14);
        assert!((1.0 - taylor_oracle(2.0) - 0.004677734981063).abs() < 1e-12);
    }

    // reference digits from a 30-digit arbitrary-precision evaluation
    #[test]
    fn tail_relative_accuracy() {
        let cases = [
            (2.5, 4.069_520_174_449_589e-4),
            (3.0, 2.209_049_699_858_544e-5),
            (4.0, 1.541_725_790_028_002e-8),
            (5.0, 1.537_459_794_428_035e-12),
            (6.0, 2.151_973_671_249_891_3e-17),
            (10.0, 2.088_487_583_762_545e-45),
        ];
        for (x, want) in cases {
            let got = erfc(x).unwrap();
            assert!(((got - want) / want).abs() < 1e-13, "erfc({x}) = {got:e}, want {want:e}");
        }
        assert_eq!(erfc(40.0).unwrap(), 0.0);
        assert_eq!(erfc(-40.0).unwrap(), 2.0);
    }

    #[test]
    fn complement_identity() {
        for x in [0.1, 1.0, 3.0, -0.7, 1.9999, 2.0, 2.0001] {
            let s = erf(x).unwrap() + erfc(x).unwrap();
            assert!((s - 1.0).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn continuous_at_split() {
        let below = erf(SPLIT - 1e-15).unwrap();
        let above = erf(SPLIT).unwrap();
        assert!((above - below).abs() < 1e-15);
    }

    #[test]
    fn odd_symmetry() {
        for i in 0..=1000 {
            let x = i as f64 * 0.01;
            assert!((erf(-x).unwrap() + erf(x).unwrap()).abs() <= 1e-15);
        }
    }

    #[test]
    fn monotone_on_grid() {
        let mut prev = erf(-5.0).unwrap();
        for i in 1..=1000 {
            let x = -5.0 + i as f64 * 0.01;
            let v = erf(x).unwrap();
            assert!(v > prev || (v == prev && v.abs() == 1.0), "x = {x}");
            assert!(v > -1.0 - 1e-16 && v < 1.0 + 1e-16);
            prev = v;
        }
    }

    #[test]
    fn agrees_with_midpoint_quadrature() {
        for i in 0..=40 {
            let x = i as f64 * 0.1;
            let q = midpoint_erf(x, 200_000);
            assert!((erf(x).unwrap() - q).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn log_complement() {
        for x in [-3.0, 0.0, 0.5, 1.9, 2.1, 5.0, 20.0] {
            let want = erfc(x).unwrap().ln();
            assert!((ln_erfc(x).unwrap() - want).abs() < 1e-13 * want.abs().max(1.0), "x = {x}");
        }
        let cases = [
            (3.0, -10.720_363_041_981_112),
            (10.0, -102.879_889_024_844_89),
            (30.0, -903.974_117_110_643_9),
            (707.106_781_186_547_6, -500_007.133_547_631_7),
        ];
        for (x, want) in cases {
            assert!(((ln_erfc(x).unwrap() - want) / want).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(erf(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(erfc(f64::INFINITY), Err(Error::Domain(_))));
    }
}
