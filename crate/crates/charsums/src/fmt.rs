//! Deterministic float formatting: 12 significant digits, stable across
//! runs and worker counts, so report files diff cleanly.

/// Rounds to 12 significant digits and prints the shortest representation
/// of the rounded value, always with a decimal point or exponent.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0.0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    let rounded = if (-250..=250).contains(&mag) {
        let scale = 10f64.powi(11 - mag);
        (x * scale).round() / scale
    } else {
        x
    };
    let mut s = format!("{rounded}");
    if !s.contains('.') && !s.contains('e') && !s.contains("inf") && !s.contains("nan") {
        s.push_str(".0");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::format_sig;

    #[test]
    fn formats_are_stable() {
        assert_eq!(format_sig(6.0), "6.0");
        assert_eq!(format_sig(0.0), "0.0");
        assert_eq!(format_sig(-2.5), "-2.5");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(123456789012345.0), "123456789012000.0");
        assert_eq!(format_sig(f64::NAN), "nan");
        assert_eq!(format_sig(f64::INFINITY), "inf");
    }
}
