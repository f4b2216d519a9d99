//! Locating Hong-Ou-Mandel-type dips in the boson coincidence channel.

use super::sweep::SweepSpec;
use crate::error::{Error, Result};
use crate::single_mode::{Scenario, Statistics};

/// Width below which refinement stops.
const REFINE_WIDTH: f64 = 1e-12;
/// Half-step of the central difference used to read the slope sign.
const SLOPE_STEP: f64 = 1e-6;

/// All `w` in the sweep range where the boson mixed-channel probability has
/// a local minimum below `tolerance`. Minima are bracketed on the sweep grid
/// and refined by bisection on the sign of the slope.
pub fn dip_find(spec: &SweepSpec, tolerance: f64) -> Result<Vec<f64>> {
    if spec.scenario != Scenario::CaseII {
        return Err(Error::Usage("dips only occur for opposite incident orders (scenario II)".into()));
    }
    if !spec.statistics.contains(&Statistics::Boson) {
        return Err(Error::Usage("dip finding needs boson statistics selected".into()));
    }
    let mixed = |w: f64| spec.table(Statistics::Boson, w).map(|t| t.mixed());

    let grid = spec.grid.points();
    let values = grid.iter().map(|&w| mixed(w)).collect::<Result<Vec<_>>>()?;
    let last = grid.len() - 1;

    let mut dips: Vec<f64> = Vec::new();
    for i in 0..=last {
        let left_ok = i == 0 || values[i] <= values[i - 1];
        let right_ok = i == last || values[i] < values[i + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        let w = if i == 0 || i == last {
            grid[i]
        } else {
            refine(&mixed, grid[i - 1], grid[i + 1])?
        };
        if mixed(w)? < tolerance && dips.last().is_none_or(|&prev| (w - prev).abs() > 1e-9) {
            dips.push(w);
        }
    }
    Ok(dips)
}

fn refine(f: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    while hi - lo > REFINE_WIDTH {
        let mid = 0.5 * (lo + hi);
        if f(mid + SLOPE_STEP)? > f(mid - SLOPE_STEP)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
