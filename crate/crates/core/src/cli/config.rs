//! Flat `key = value` settings with `#` comments.
//!
//! Settings are layered: a preset provides the base, a config file
//! overrides it, and command-line flags override both.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

pub type Settings = BTreeMap<String, String>;

/// Keys that only make sense for multi-mode sweeps.
pub const MULTI_MODE_KEYS: [&str; 11] = [
    "n_t", "m_t", "k0", "k0_prime", "mu", "sigma", "sigma_prime", "tau", "mass", "hbar", "k_l",
];

/// Keys that fix the unscatterable fractions directly.
pub const FIGURE_KEYS: [&str; 2] = ["n_t", "m_t"];

/// Keys that derive the unscatterable fractions from beam spreads and the
/// interaction time.
pub const PHYSICAL_KEYS: [&str; 6] = ["sigma", "sigma_prime", "tau", "mass", "hbar", "k_l"];

pub fn parse(text: &str) -> Result<Settings> {
    let mut out = Settings::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("line {}: expected `key = value`, got `{raw}`", lineno + 1)))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::Usage(format!("line {}: empty key", lineno + 1)));
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Settings> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

/// Rejects user settings that mix single- and multi-mode parameters, or
/// figure-style and physical-style fraction inputs.
pub fn check_conflicts(user: &Settings) -> Result<()> {
    if user.get("mode").map(String::as_str) == Some("single") {
        if let Some(k) = MULTI_MODE_KEYS.iter().find(|k| user.contains_key(**k)) {
            return Err(Error::Usage(format!("`{k}` is a multi-mode parameter but single-mode was requested")));
        }
    }
    let figure = FIGURE_KEYS.iter().find(|k| user.contains_key(**k));
    let physical = ["sigma", "sigma_prime", "tau"].into_iter().find(|k| user.contains_key(*k));
    if let (Some(a), Some(b)) = (figure, physical) {
        return Err(Error::Usage(format!(
            "`{a}` fixes the unscatterable fraction directly and conflicts with `{b}`"
        )));
    }
    Ok(())
}

/// Overlays `user` on `base`. Switching mode away from the base drops the
/// base's mode-specific keys, as does switching between figure-style and
/// physical-style fractions.
pub fn layer(base: &Settings, user: &Settings) -> Settings {
    let mut merged = base.clone();
    if let (Some(b), Some(u)) = (base.get("mode"), user.get("mode")) {
        if b != u {
            for k in MULTI_MODE_KEYS {
                merged.remove(k);
            }
        }
    }
    if FIGURE_KEYS.iter().any(|k| user.contains_key(*k)) {
        for k in PHYSICAL_KEYS {
            merged.remove(k);
        }
    }
    if PHYSICAL_KEYS.iter().any(|k| user.contains_key(*k)) {
        for k in FIGURE_KEYS {
            merged.remove(k);
        }
    }
    merged.extend(user.iter().map(|(k, v)| (k.clone(), v.clone())));
    merged
}

pub(crate) fn get_f64(s: &Settings, key: &str) -> Result<Option<f64>> {
    s.get(key)
        .map(|v| {
            parse_number(v).ok_or_else(|| Error::Usage(format!("`{key}`: cannot parse `{v}` as a number")))
        })
        .transpose()
}

pub(crate) fn require_f64(s: &Settings, key: &str) -> Result<f64> {
    get_f64(s, key)?.ok_or_else(|| Error::Usage(format!("missing setting `{key}`")))
}

pub(crate) fn get_usize(s: &Settings, key: &str) -> Result<Option<usize>> {
    s.get(key)
        .map(|v| v.parse().map_err(|_| Error::Usage(format!("`{key}`: cannot parse `{v}` as a count"))))
        .transpose()
}

pub(crate) fn get_bool(s: &Settings, key: &str) -> Result<Option<bool>> {
    s.get(key)
        .map(|v| match v.to_ascii_lowercase().as_str() {
            "true" | "yes" | "1" => Ok(true),
            "false" | "no" | "0" => Ok(false),
            _ => Err(Error::Usage(format!("`{key}`: cannot parse `{v}` as a boolean"))),
        })
        .transpose()
}

/// Plain floats plus `pi`, `pi/N` and `N*pi` shorthands.
pub fn parse_number(v: &str) -> Option<f64> {
    let v = v.trim();
    if let Ok(x) = v.parse::<f64>() {
        return Some(x);
    }
    let lower = v.to_ascii_lowercase();
    let pi = std::f64::consts::PI;
    if lower == "pi" {
        return Some(pi);
    }
    if let Some(den) = lower.strip_prefix("pi/") {
        return den.trim().parse::<f64>().ok().map(|d| pi / d);
    }
    if let Some(num) = lower.strip_suffix("*pi") {
        return num.trim().parse::<f64>().ok().map(|n| n * pi);
    }
    if let Some((num, den)) = lower.split_once("*pi/") {
        let n = num.trim().parse::<f64>().ok()?;
        let d = den.trim().parse::<f64>().ok()?;
        return Some(n * pi / d);
    }
    None
}
