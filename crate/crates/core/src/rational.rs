//! Exact rational numbers.
//!
//! Everything in the crate that is not a learning-dynamics weight is a
//! [`Rational`]: payoffs, probabilities, welfare weights and LP data. Values
//! are always kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p / q` as a rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.25"` or
/// `"1.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = parse_integer(p.trim()).ok_or_else(bad)?;
        let q: BigInt = parse_integer(q.trim()).ok_or_else(bad)?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(t).ok_or_else(bad)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact `base^exp` for a rational exponent `p/q`. Succeeds only when the
/// `q`-th root of `base` is itself rational.
pub fn pow_exact(base: &Rational, exp: &Rational) -> Result<Rational> {
    if base.is_negative() {
        return Err(Error::Inexact(format!("negative base {base} with exponent {exp}")));
    }
    if base.is_zero() {
        return if exp.is_positive() {
            Ok(Rational::zero())
        } else {
            Err(Error::Inexact(format!("0 raised to {exp}")))
        };
    }
    let q = exp
        .denom()
        .to_u32()
        .ok_or_else(|| Error::Inexact(format!("root degree {} too large", exp.denom())))?;
    let p = exp.numer().clone();
    let root = if q == 1 {
        base.clone()
    } else {
        let n = exact_root(base.numer(), q);
        let d = exact_root(base.denom(), q);
        match (n, d) {
            (Some(n), Some(d)) => Rational::new(n, d),
            _ => {
                return Err(Error::Inexact(format!(
                    "{base} has no rational {q}-th root"
                )))
            }
        }
    };
    let k = p
        .abs()
        .to_usize()
        .ok_or_else(|| Error::Inexact(format!("exponent {exp} too large")))?;
    let powered = num_traits::pow(root, k);
    Ok(if p.is_negative() { powered.recip() } else { powered })
}

fn exact_root(x: &BigInt, degree: u32) -> Option<BigInt> {
    let r = x.nth_root(degree);
    (num_traits::pow(r.clone(), degree as usize) == *x).then_some(r)
}

pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> Rational {
    it.into_iter().fold(Rational::zero(), |acc, x| acc + x)
}

pub fn is_one(r: &Rational) -> bool {
    r.is_one()
}
