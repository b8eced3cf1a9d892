//! Scenario configuration, presets, CSV emission and the validation driver
//! behind the `jcm` binary.

/// Numbers in CSV output: 12 significant digits, exponent form.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

pub mod config;
pub mod presets;
pub mod runner;
pub mod validate;
