//! Exact rational scalars and Pochhammer symbols.
//!
//! Every discrete identity in this crate is checked by exact equality, so the
//! scalar type is an arbitrary-precision rational kept in lowest terms.
//! Gamma-function ratios never appear; they are always rewritten as
//! Pochhammer products.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always reduced, with a positive denominator.
pub type Rational = BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `num/den`. Panics if `den` is zero.
pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected so that no value is
/// ever silently rounded.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
    if s.is_empty() {
        return Err(err("empty"));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(err("decimal notation is not accepted, write p/q"));
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err("bad numerator"))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err("bad denominator"))?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s).map_err(|_| err("bad integer"))?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(input: &str) -> Result<Vec<Rational>> {
    input.split(',').map(parse_rational).collect()
}

/// Division that reports a zero divisor instead of panicking.
pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(a: &Rational) -> f64 {
    a.to_f64().unwrap_or(f64::NAN)
}

/// Renders `"p"` for integers and `"p/q"` otherwise.
pub fn fmt_rational(a: &Rational) -> String {
    a.to_string()
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..n {
        if factor.is_zero() {
            return Rational::zero();
        }
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// `(-x)_g` for nonnegative integers: `(-1)^g x!/(x-g)!`, zero when `g > x`.
pub fn neg_pochhammer(x: u32, g: u32) -> Rational {
    if g > x {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..g {
        acc *= BigInt::from(x - i);
    }
    if g % 2 == 1 {
        acc = -acc;
    }
    Rational::from_integer(acc)
}

/// Componentwise Pochhammer product `(a)_gamma = prod_i (a_i)_{gamma_i}`.
pub fn pochhammer_multi(a: &[Rational], gamma: &[u32]) -> Result<Rational> {
    if a.len() != gamma.len() {
        return Err(Error::LengthMismatch { expected: a.len(), found: gamma.len() });
    }
    let mut acc = Rational::one();
    for (ai, &gi) in a.iter().zip(gamma) {
        acc *= pochhammer(ai, gi);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// `gamma! = prod_i gamma_i!`.
pub fn multi_factorial(gamma: &[u32]) -> Rational {
    gamma.iter().map(|&g| factorial(g)).product()
}

/// `binom(n, k)` for nonnegative integers.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(-1)^n` as a rational.
pub fn sign(n: u32) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `a^n` for a nonnegative integer exponent.
pub fn pow(a: &Rational, n: u32) -> Rational {
    num_traits::pow(a.clone(), n as usize)
}

/// Absolute value.
pub fn abs(a: &Rational) -> Rational {
    a.abs()
}

/// True when `a` is an integer `<= 0`; returns that integer negated.
pub fn nonpositive_integer(a: &Rational) -> Option<u32> {
    if a.is_integer() && !a.is_positive() {
        (-a.to_integer()).to_u32()
    } else {
        None
    }
}
