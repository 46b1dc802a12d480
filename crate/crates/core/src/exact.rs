//! Exact scalar arithmetic: big rationals and Gaussian rationals.
//!
//! A [`GaussianRational`] is a complex number whose real and imaginary parts
//! are arbitrary-precision rationals.  The field is closed under the
//! operations the library needs (`+`, `×`, division by nonzero, conjugation)
//! and equality is exact, so theorem-level identities can be asserted with
//! `==` rather than tolerances.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Complex number with exact rational real and imaginary parts.
pub type GaussianRational = Complex<Rational>;

/// Error produced when parsing a rational from text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("rational denominator is zero")]
    ZeroDenominator,
}

/// `num/den` as an exact rational.  Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n` as an exact rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `re + im·i` as a Gaussian rational.
pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// `re + im·i` with integer parts.
pub fn gauss_ints(re: i64, im: i64) -> GaussianRational {
    Complex::new(integer(re), integer(im))
}

/// A Gaussian rational with zero imaginary part.
pub fn real(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

/// The binomial coefficient `C(n, k)` as a big integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `2^e` as an exact rational, for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Parses `p`, `p/q` or `-p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |part: &str| {
        part.parse::<BigInt>()
            .map_err(|_| ParseRationalError::BadInteger(part.to_owned()))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Renders a rational as `p` or `p/q` (always in lowest terms).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Renders a Gaussian rational exactly, e.g. `3/2`, `-i`, `1/2-3i`, `0`.
pub fn format_gaussian(z: &GaussianRational) -> String {
    let imag = |im: &Rational| {
        let mag = im.abs();
        if mag.is_one() {
            "i".to_owned()
        } else {
            format!("{mag}i")
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => {
            let sign = if z.im.is_negative() { "-" } else { "" };
            format!("{sign}{}", imag(&z.im))
        }
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{sign}{}", z.re, imag(&z.im))
        }
    }
}

/// Nearest `f64` to a rational (for the opt-in floating-point pathway).
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for text in ["0", "5", "-7", "3/2", "-22/7"] {
            let r = parse_rational(text).unwrap();
            assert_eq!(format_rational(&r), text);
        }
        // Reduction and sign normalisation happen on parse.
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("1/-2").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert_eq!(parse_rational(""), Err(ParseRationalError::Empty));
        assert_eq!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator));
        assert!(matches!(parse_rational("x/2"), Err(ParseRationalError::BadInteger(_))));
        assert!(matches!(parse_rational("1/2/3"), Err(ParseRationalError::BadInteger(_))));
    }

    #[test]
    fn gaussian_formatting_covers_all_sign_shapes() {
        assert_eq!(format_gaussian(&gauss_ints(0, 0)), "0");
        assert_eq!(format_gaussian(&gauss_ints(3, 0)), "3");
        assert_eq!(format_gaussian(&gauss_ints(0, 1)), "i");
        assert_eq!(format_gaussian(&gauss_ints(0, -1)), "-i");
        assert_eq!(format_gaussian(&gauss_ints(0, -3)), "-3i");
        assert_eq!(format_gaussian(&gauss_ints(2, -3)), "2-3i");
        assert_eq!(
            format_gaussian(&gauss(rational(1, 2), rational(-1, 2))),
            "1/2-1/2i"
        );
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i, gauss_ints(-1, 0));
    }

    #[test]
    fn binomial_matches_pascal_rule() {
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(8, 4), BigInt::from(70));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        for n in 1..=12u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn pow2_handles_negative_exponents() {
        assert_eq!(pow2(0), integer(1));
        assert_eq!(pow2(5), integer(32));
        assert_eq!(pow2(-3), rational(1, 8));
    }
}
