//! Complex literals of the form `a`, `a+bi`, `a-bi`, `bi`, `i`.

use num_complex::Complex64;

fn real(text: &str) -> Option<f64> {
    let v: f64 = text.parse().ok()?;
    v.is_finite().then_some(v)
}

fn imag_coeff(text: &str) -> Option<f64> {
    match text {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => real(t),
    }
}

/// Parse a complex literal. Uses `str::parse::<f64>`, which does not depend
/// on the locale.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let t = text.trim();
    if t.is_empty() || t.chars().any(char::is_whitespace) {
        return None;
    }
    let Some(body) = t.strip_suffix('i') else {
        return real(t).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    // last sign that is not the leading one or part of an exponent
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Some(Complex64::new(real(&body[..k])?, imag_coeff(&body[k..])?)),
        None => Some(Complex64::new(0.0, imag_coeff(body)?)),
    }
}

/// Shortest round-trip form, e.g. `0.5`, `3-1.5i`.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        return format!("{}", z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Fixed 17-significant-digit form used in printed values.
pub fn format_complex_exact(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{}{:.16e}i", z.re, sign, z.im.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        let c = Complex64::new;
        assert_eq!(parse_complex("2"), Some(c(2.0, 0.0)));
        assert_eq!(parse_complex("1.5i"), Some(c(0.0, 1.5)));
        assert_eq!(parse_complex("-1.5i"), Some(c(0.0, -1.5)));
        assert_eq!(parse_complex("i"), Some(c(0.0, 1.0)));
        assert_eq!(parse_complex("-i"), Some(c(0.0, -1.0)));
        assert_eq!(parse_complex("0.3+1.1i"), Some(c(0.3, 1.1)));
        assert_eq!(parse_complex("0.25-0.4i"), Some(c(0.25, -0.4)));
        assert_eq!(parse_complex("-2-i"), Some(c(-2.0, -1.0)));
        assert_eq!(parse_complex("1e-3+2E+1i"), Some(c(1e-3, 20.0)));
        assert_eq!(parse_complex("-1e-2i"), Some(c(0.0, -1e-2)));
        for bad in ["", "1+", "abc", "1,5", "1 + 2i", "inf", "nan+i", "2ii"] {
            assert_eq!(parse_complex(bad), None, "{bad}");
        }
    }

    #[test]
    fn round_trip() {
        for z in [Complex64::new(0.3, -0.2), Complex64::new(-4.0, 0.0), Complex64::new(0.0, 1.5), Complex64::new(1e-300, 7.25)] {
            assert_eq!(parse_complex(&format_complex(z)), Some(z));
            assert_eq!(parse_complex(&format_complex_exact(z)), Some(z));
        }
    }
}
