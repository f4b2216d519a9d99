//! Independent checks of the closed-form channel tables.
//!
//! - [`brute_force_single_mode`] / [`brute_force_multi_mode`] build the
//!   two-particle state from explicit tensor products, (anti)symmetrize it
//!   and read probabilities off the normalized amplitudes.
//! - [`overlap_quadrature`] and [`fraction_quadrature`] integrate the
//!   Gaussian mode functions with composite Simpson rules.
//! - [`monte_carlo_distinguishable`] samples individual modes for
//!   distinguishable particles. Exchange interference has no classical
//!   sampling analogue, so identical particles are only checked through the
//!   tensor and quadrature routes.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::multi_mode::GaussianMode;
use crate::single_mode::{ChannelTable, Scenario, ScatterCoefficients, Statistics};

/// Generator used by the Monte Carlo sampler, recorded with every result.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64 (rand_chacha 0.3)";

const ZERO_NORM: f64 = 1e-12;

/// Basis order of [`TwoParticleState`] amplitudes: `(+,+), (+,-), (-,+), (-,-)`.
type Amplitudes = [Complex64; 4];

/// A two-particle state `|direct> + |exchange>`, where both branches carry
/// the parallel amplitudes over the four exit channels and their
/// perpendicular parts overlap by `overlap` (`1` for coinciding
/// perpendicular states, `0` for orthogonal ones).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoParticleState {
    pub direct: Amplitudes,
    pub exchange: Amplitudes,
    pub overlap: f64,
}

impl TwoParticleState {
    /// Product state of particle 1 in `first` and particle 2 in `second`,
    /// (anti)symmetrized according to `stats`. Single-particle states are
    /// given as `[amplitude in +k, amplitude in -k]`.
    pub fn build(first: [Complex64; 2], second: [Complex64; 2], stats: Statistics, overlap: f64) -> Self {
        let direct = tensor(first, second);
        let exchange = match stats.exchange_sign() {
            Some(sign) => tensor(second, first).map(|a| a * sign),
            None => [Complex64::new(0.0, 0.0); 4],
        };
        Self { direct, exchange, overlap }
    }

    /// Unnormalized weight of each channel,
    /// `<ψ|Π_j|ψ> = |a_j|² + |b_j|² + 2 I Re(a_j* b_j)`.
    fn weights(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (j, w) in out.iter_mut().enumerate() {
            let (a, b) = (self.direct[j], self.exchange[j]);
            *w = a.norm_sqr() + b.norm_sqr() + 2.0 * self.overlap * (a.conj() * b).re;
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.weights().iter().sum()
    }

    /// Normalizes and projects onto the four channels.
    pub fn channel_table(&self) -> Result<ChannelTable> {
        let weights = self.weights();
        let norm: f64 = weights.iter().sum();
        if norm < ZERO_NORM {
            return Err(Error::PauliForbidden);
        }
        Ok(ChannelTable::from_array(weights.map(|w| w / norm)))
    }
}

fn tensor(u: [Complex64; 2], v: [Complex64; 2]) -> Amplitudes {
    [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]]
}

/// Outgoing single-particle state of a particle incident in `+k`
/// (`incident_plus`) or `-k`.
fn outgoing(c: &ScatterCoefficients, incident_plus: bool) -> [Complex64; 2] {
    if incident_plus {
        [c.plus(), c.minus()]
    } else {
        [c.minus(), c.plus()]
    }
}

fn pair(d: &ScatterCoefficients, dd: &ScatterCoefficients, s: Scenario) -> ([Complex64; 2], [Complex64; 2]) {
    let second = match s {
        Scenario::CaseI => outgoing(dd, true),
        Scenario::CaseII => outgoing(dd, false),
    };
    (outgoing(d, true), second)
}

/// Single-mode pair with equal perpendicular momenta.
pub fn brute_force_single_mode(c: &ScatterCoefficients, stats: Statistics, s: Scenario) -> Result<ChannelTable> {
    let (first, second) = pair(c, c, s);
    TwoParticleState::build(first, second, stats, 1.0).channel_table()
}

/// Multi-mode pair with effective coefficients `d`, `dd` and perpendicular
/// exchange overlap `overlap_i`.
pub fn brute_force_multi_mode(
    d: &ScatterCoefficients,
    dd: &ScatterCoefficients,
    overlap_i: f64,
    stats: Statistics,
    s: Scenario,
) -> Result<ChannelTable> {
    let (first, second) = pair(d, dd, s);
    TwoParticleState::build(first, second, stats, overlap_i).channel_table()
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let coeff = if i % 2 == 0 { 2.0 } else { 4.0 };
        sum += coeff * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    (0..=n)
        .map(|i| {
            let c = if i == 0 || i == n {
                1.0
            } else if i % 2 == 0 {
                2.0
            } else {
                4.0
            };
            c * h / 3.0
        })
        .collect()
}

fn check_grid(grid_points: usize) -> Result<()> {
    if grid_points < 1000 {
        return Err(Error::Domain(format!("quadrature needs at least 1000 grid points, got {grid_points}")));
    }
    Ok(())
}

/// The exchange-overlap integral evaluated two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapQuadrature {
    /// `[∫ G_a G_b dK]²`.
    pub factored: f64,
    /// Full 2-D quadrature of `G_a(K) G_b(K') G_a(K') G_b(K)`.
    pub double: f64,
}

/// Integrates over `±8` spreads around the midpoint of the two centers.
pub fn overlap_quadrature(perp_a: &GaussianMode, perp_b: &GaussianMode, grid_points: usize) -> Result<OverlapQuadrature> {
    check_grid(grid_points)?;
    let mid = 0.5 * (perp_a.center() + perp_b.center());
    let half = 8.0 * perp_a.spread().max(perp_b.spread());
    let (lo, hi) = (mid - half, mid + half);

    let single = simpson(|k| perp_a.amplitude(k) * perp_b.amplitude(k), lo, hi, grid_points);

    let n = grid_points + grid_points % 2;
    let h = (hi - lo) / n as f64;
    let weights = simpson_weights(n, h);
    let nodes: Vec<f64> = (0..=n).map(|i| lo + i as f64 * h).collect();
    let ga: Vec<f64> = nodes.iter().map(|&k| perp_a.amplitude(k)).collect();
    let gb: Vec<f64> = nodes.iter().map(|&k| perp_b.amplitude(k)).collect();
    let mut double = 0.0;
    for i in 0..=n {
        let mut row = 0.0;
        for j in 0..=n {
            row += weights[j] * ga[i] * gb[j] * ga[j] * gb[i];
        }
        double += weights[i] * row;
    }

    Ok(OverlapQuadrature { factored: single * single, double })
}

/// `∫ |g|²` over the window `[k0 - σ_k/2, k0 + σ_k/2]`.
pub fn fraction_quadrature(parallel: &GaussianMode, sigma_k: f64, grid_points: usize) -> Result<f64> {
    check_grid(grid_points)?;
    if sigma_k.is_nan() || sigma_k < 0.0 {
        return Err(Error::Domain(format!("window width must be >= 0, got {sigma_k}")));
    }
    let k0 = parallel.center();
    Ok(simpson(|k| parallel.density(k), k0 - 0.5 * sigma_k, k0 + 0.5 * sigma_k, grid_points))
}

/// Sampled channel frequencies with their standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloTable {
    pub table: ChannelTable,
    pub std_err: ChannelTable,
    pub samples: usize,
    pub seed: u64,
    pub rng: &'static str,
}

/// Samples one parallel mode per particle. A mode within `σ_k/2` of its
/// distribution center scatters with probability `sin²w`; any other mode is
/// transmitted.
pub fn monte_carlo_distinguishable(
    parallel_a: &GaussianMode,
    parallel_b: &GaussianMode,
    sigma_k: f64,
    w: f64,
    s: Scenario,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloTable> {
    if samples == 0 {
        return Err(Error::Domain("Monte Carlo needs at least one sample".into()));
    }
    if sigma_k.is_nan() || sigma_k < 0.0 {
        return Err(Error::Domain(format!("window width must be >= 0, got {sigma_k}")));
    }
    // |g|² is normal with standard deviation spread/2
    let dist_a = Normal::new(parallel_a.center(), 0.5 * parallel_a.spread()).map_err(|e| Error::Domain(e.to_string()))?;
    let dist_b = Normal::new(parallel_b.center(), 0.5 * parallel_b.spread()).map_err(|e| Error::Domain(e.to_string()))?;
    let p_scatter = w.sin().powi(2);
    let half = 0.5 * sigma_k;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // indexed by (particle 1 scattered, particle 2 scattered)
    let mut counts = [[0usize; 2]; 2];
    for _ in 0..samples {
        let ka = dist_a.sample(&mut rng);
        let kb = dist_b.sample(&mut rng);
        let ua: f64 = rng.gen();
        let ub: f64 = rng.gen();
        let ra = (ka - parallel_a.center()).abs() <= half && ua < p_scatter;
        let rb = (kb - parallel_b.center()).abs() <= half && ub < p_scatter;
        counts[ra as usize][rb as usize] += 1;
    }

    let n = samples as f64;
    let freq = |a: usize, b: usize| counts[a][b] as f64 / n;
    let (tt, tr, rt, rr) = (freq(0, 0), freq(0, 1), freq(1, 0), freq(1, 1));
    let table = crate::single_mode::place(s, tt, tr, rt, rr);
    let std_err = ChannelTable::from_array(table.to_array().map(|p| (p * (1.0 - p) / n).sqrt()));

    Ok(MonteCarloTable { table, std_err, samples, seed, rng: RNG_ALGORITHM })
}
