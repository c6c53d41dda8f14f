//! Terminating hypergeometric series in exact arithmetic.
//!
//! One summation routine backs the univariate Jacobi, Hahn and Krawtchouk
//! polynomials. A series terminates when an upper parameter is a
//! nonpositive integer `-n`; the smallest such `n` fixes the number of terms,
//! and summation also stops early at the first vanishing term, so a lower
//! parameter `-N` with `N >= n` is admissible.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, nonpositive_integer, pochhammer, Rational};

/// Number of the last term, `n`, of a terminating series.
pub fn termination_index(upper: &[Rational]) -> Option<u32> {
    upper.iter().filter_map(nonpositive_integer).min()
}

/// `pFq(upper; lower; z)` summed exactly over its `n + 1` terms.
pub fn hyp_terminating(upper: &[Rational], lower: &[Rational], z: &Rational) -> Result<Rational> {
    let n = termination_index(upper).ok_or(Error::NonTerminating)?;
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 0..n {
        let kk = int(k as i64);
        let mut num = z.clone();
        for u in upper {
            num *= u + &kk;
        }
        if num.is_zero() {
            break;
        }
        let mut den = int(k as i64 + 1);
        for l in lower {
            den *= l + &kk;
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator { term: k as usize + 1 });
        }
        term = term * num / den;
        sum += &term;
    }
    Ok(sum)
}

/// Both sides of the closed-form evaluation
/// `3F2(-n, k1+m+1, -n-k2; k1+1, -k2+m-2n; 1)
///    = n! (k2+1)_n (-k2-2n)_m / ((k1+1)_m (k2+1)_{2n})`.
pub fn three_f_two_sides(k1: &Rational, k2: &Rational, n: u32, m: u32) -> Result<(Rational, Rational)> {
    if m > n {
        return Err(Error::IndexOutOfRange { index: m as usize, min: 0, max: n as usize });
    }
    let one = Rational::one();
    let ni = int(n as i64);
    let mi = int(m as i64);
    let upper = [-ni.clone(), k1 + &mi + &one, -&ni - k2];
    let lower = [k1 + &one, -k2 + &mi - int(2 * n as i64)];
    let lhs = hyp_terminating(&upper, &lower, &one)?;
    let rhs = factorial(n) * pochhammer(&(k2 + &one), n) * pochhammer(&(-k2 - int(2 * n as i64)), m)
        / (pochhammer(&(k1 + &one), m) * pochhammer(&(k2 + &one), 2 * n));
    Ok((lhs, rhs))
}

/// Checks the non-balanced `3F2` evaluation at 1 for one parameter set.
pub fn verify_3f2_identity(k1: &Rational, k2: &Rational, n: u32, m: u32) -> Result<bool> {
    let (lhs, rhs) = three_f_two_sides(k1, k2, n, m)?;
    Ok(lhs == rhs)
}
