//! Number formatting for table output. Fixed-point with a set number of
//! decimals, switching to a short scientific form for very large or very
//! small magnitudes the way the published tables do.

/// `|v| >= SCI_ABOVE` or `|v| < SCI_BELOW` prints in scientific form.
pub const SCI_ABOVE: f64 = 10.0;
pub const SCI_BELOW: f64 = 1e-4;

pub fn fixed(v: f64, decimals: usize) -> String {
    if !v.is_finite() {
        return non_finite(v);
    }
    let s = format!("{v:.decimals$}");
    // avoid "-0.000000"
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Two-decimal mantissa, explicitly signed unpadded exponent: `3.99E-5`, `4.93E+1`.
pub fn scientific(v: f64) -> String {
    if !v.is_finite() {
        return non_finite(v);
    }
    let s = format!("{v:.2E}");
    let (mantissa, exp) = s.split_once('E').expect("E format always has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}E{exp:+}")
}

/// Table cell style: scientific outside `[1e-4, 10)`, fixed otherwise. Zero
/// stays fixed.
pub fn table_value(v: f64, decimals: usize) -> String {
    let a = v.abs();
    if v != 0.0 && !(SCI_BELOW..SCI_ABOVE).contains(&a) {
        scientific(v)
    } else {
        fixed(v, decimals)
    }
}

fn non_finite(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Exact decimal `numerator / 10^scale` with trailing zeros removed, e.g.
/// `(39, 2)` gives `"0.39"`.
pub fn decimal(numerator: i64, scale: u32) -> String {
    let neg = numerator < 0;
    let digits = numerator.unsigned_abs().to_string();
    let scale = scale as usize;
    let padded = if digits.len() <= scale {
        format!("{}{digits}", "0".repeat(scale + 1 - digits.len()))
    } else {
        digits
    };
    let (int, frac) = padded.split_at(padded.len() - scale);
    let frac = frac.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Unit in the last printed place of a table entry such as `"0.015178"` or
/// `"3.99E-5"`, with the value it denotes.
pub fn parse_printed(s: &str) -> Option<(f64, f64)> {
    let value: f64 = s.parse().ok()?;
    let (mantissa, exp) = match s.split_once(['E', 'e']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let decimals = mantissa.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    Some((value, 10f64.powi(exp - decimals)))
}
