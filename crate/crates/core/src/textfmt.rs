//! Number formatting for the text outputs.

/// Rounds `x` to `digits` significant digits.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("formatted float parses");
    // normalise -0
    rounded + 0.0
}

/// Shortest text of `x` rounded to `digits` significant digits; very small
/// and very large magnitudes use exponent notation.
pub fn significant(x: f64, digits: usize) -> String {
    let r = round_significant(x, digits);
    if r != 0.0 && !(1e-4..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}
