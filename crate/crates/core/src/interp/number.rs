use crate::lang::parse_number;

/// Render a number the way `print` and `..` show it: integral values
/// without a fraction, everything else as the shortest decimal that
/// round-trips, switching to exponent form for very large or very small
/// magnitudes.
pub fn format_number(n: f64) -> String {
    if n.is_nan() {
        return if n.is_sign_negative() { "-nan" } else { "nan" }.to_string();
    }
    if n.is_infinite() {
        return if n < 0.0 { "-inf" } else { "inf" }.to_string();
    }
    let abs = n.abs();
    if n.fract() == 0.0 && abs < 1e15 {
        if n == 0.0 && n.is_sign_negative() {
            return "-0".to_string();
        }
        return format!("{}", n as i64);
    }
    if !(1e-4..1e15).contains(&abs) {
        // Rust renders "1e-7"; use the conventional signed two-digit exponent.
        let raw = format!("{n:e}");
        let (mantissa, exponent) = raw.split_once('e').expect("exponent form");
        let exp: i32 = exponent.parse().expect("integer exponent");
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    format!("{n}")
}

/// Convert a string to a number the way arithmetic coercion does: surrounding
/// whitespace and a leading sign are allowed.
pub fn str_to_number(s: &str) -> Option<f64> {
    let t = s.trim_matches(|c: char| c.is_ascii_whitespace());
    let (negative, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let value = parse_number(body)?;
    Some(if negative { -value } else { value })
}

/// Exact conversion to a 64-bit integer, as required by bitwise operators.
pub fn to_integer(n: f64) -> Option<i64> {
    if n.fract() != 0.0 || !n.is_finite() {
        return None;
    }
    // 2^63 is the first float outside the i64 range.
    if (-9_223_372_036_854_775_808.0..9_223_372_036_854_775_808.0).contains(&n) {
        Some(n as i64)
    } else {
        None
    }
}
