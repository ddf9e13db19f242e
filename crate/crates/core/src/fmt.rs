//! Deterministic number formatting for emitted CSV files.
//!
//! All real values are printed with 9 significant digits so repeated runs of
//! the same experiment produce byte-identical files. Fixed notation is used
//! for decimal exponents in `[-4, 8]`, scientific notation otherwise, and
//! trailing zeros are trimmed.

/// Format a value with 9 significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    // {:.8e} renders d.dddddddde<exp> — one leading digit plus 8 decimals.
    let sci = format!("{:.8e}", x);
    let (mantissa, exp_str) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp_str.parse().expect("exponent");
    if (-4..=8).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed)
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}
