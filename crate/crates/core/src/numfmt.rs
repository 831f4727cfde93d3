//! Deterministic float formatting for artifacts: plain decimal notation,
//! shortest round-trip form capped at 12 significant digits.

/// Format a float in plain decimal (never scientific) with at most 12
/// significant digits. Shorter round-trip forms are kept verbatim; zero
/// (either sign) prints as "0".
pub fn fmt_g12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let shortest = format!("{v}");
    if significant_digits(&shortest) <= 12 {
        return shortest;
    }
    rounded_to_12(v)
}

fn significant_digits(s: &str) -> usize {
    // Counting trailing zeros as significant only sends borderline values
    // down the (identical) rounding path; it never changes the output.
    s.chars()
        .filter(char::is_ascii_digit)
        .skip_while(|&c| c == '0')
        .count()
}

fn rounded_to_12(v: f64) -> String {
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("float formatting emits an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    debug_assert_eq!(digits.len(), 12);

    let mut out = String::new();
    if v < 0.0 {
        out.push('-');
    }
    if exp >= 0 {
        let point = exp as usize + 1;
        if point >= digits.len() {
            out.push_str(&digits);
            out.push_str(&"0".repeat(point - digits.len()));
        } else {
            out.push_str(&digits[..point]);
            let frac = digits[point..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-exp - 1) as usize));
        out.push_str(digits.trim_end_matches('0'));
    }
    out
}
