//! Exact rational coordinates and their textual forms.
//!
//! Every coordinate in the crate is a [`BigRational`], which is always stored
//! in lowest terms with a positive denominator. The canonical text form is the
//! one produced by `Display` (`p/q`, or `p` when the denominator is one), and
//! [`parse_canonical`] accepts exactly that form and nothing else.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

pub fn in_unit(x: &Rational) -> bool {
    !x.is_negative() && *x <= one()
}

/// Parses the canonical `p/q` or `p` form. Rejects anything `Display` would
/// not produce: non-reduced fractions, explicit `/1`, leading `+`, `-0`,
/// leading zeros, whitespace and decimals.
pub fn parse_canonical(token: &str) -> Option<Rational> {
    let value = parse_fraction(token)?;
    (value.to_string() == token).then_some(value)
}

/// Parses `p/q` or an integer in any reduced or unreduced form. Decimals are
/// rejected so that no precision is lost silently.
pub fn parse_lenient(token: &str) -> Option<Rational> {
    parse_fraction(token.trim())
}

fn parse_fraction(token: &str) -> Option<Rational> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    if !is_integer_literal(num) || !is_integer_literal(den) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Fixed-point decimal rendering with `places` digits, rounded half away
/// from zero. Display only; never parsed back.
pub fn decimal(value: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value * Rational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice_r = r.abs() * BigInt::from(2);
    let mut q = q;
    if twice_r >= *scaled.denom() {
        if scaled.is_negative() {
            q -= 1;
        } else {
            q += 1;
        }
    }
    let negative = q.sign() == Sign::Minus;
    let digits = q.abs().to_string();
    let places = places as usize;
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        format!("{int_part}.{frac_part}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// The smallest dyadic `k / 2^bits` that is `>= sqrt(value)`.
pub(crate) fn sqrt_upper(value: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = value * Rational::from_integer(&scale * &scale);
    let floor = scaled.floor().to_integer();
    let mut root = floor.sqrt();
    if Rational::from_integer(&root * &root) < scaled {
        root += 1;
    }
    Rational::new(root, scale)
}

/// The largest dyadic `k / 2^bits` that is `<= sqrt(value)`.
pub(crate) fn sqrt_lower(value: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = value * Rational::from_integer(&scale * &scale);
    let floor = scaled.floor().to_integer();
    Rational::new(floor.sqrt(), scale)
}
