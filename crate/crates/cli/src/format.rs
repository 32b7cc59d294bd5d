//! Locale-independent number formatting for CSV and report output.

/// Formats with twelve significant digits in scientific notation, so every
/// column keeps full precision regardless of magnitude and output diffs
/// cleanly across machines.
pub fn sig12(value: f64) -> String {
    format!("{value:.11e}")
}
