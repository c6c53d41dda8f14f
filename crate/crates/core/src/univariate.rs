//! Classical one-variable Jacobi, Hahn and Krawtchouk polynomials.
//!
//! All four evaluators route through [`hyp_terminating`]. The `scaled_*`
//! variants multiply by `(-M)_n` and cancel it against the series
//! denominators, which keeps the product formulas of the multivariate
//! families well defined when the local length `M` is smaller than `n`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, pochhammer, pow, Rational};
use crate::hypergeom::hyp_terminating;

/// `P_n^{(a,b)}(t) / P_n^{(a,b)}(1) = 2F1(-n, n+a+b+1; a+1; (1-t)/2)`.
pub fn jacobi_ratio(n: u32, a: &Rational, b: &Rational, t: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let ni = int(n as i64);
    let z = (&one - t) / int(2);
    hyp_terminating(&[-ni.clone(), &ni + a + b + &one], &[a + &one], &z)
}

/// `P_n^{(a,b)}(t)` in the standard normalization `P_n^{(a,b)}(1) = (a+1)_n/n!`.
pub fn jacobi_unnormalized(n: u32, a: &Rational, b: &Rational, t: &Rational) -> Result<Rational> {
    Ok(jacobi_ratio(n, a, b, t)? * pochhammer(&(a + Rational::one()), n) / factorial(n))
}

/// Hahn polynomial `Q_n(x; a, b, N) = 3F2(-n, n+a+b+1, -x; a+1, -N; 1)`.
pub fn hahn_q(n: u32, a: &Rational, b: &Rational, big_n: &Rational, x: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let ni = int(n as i64);
    hyp_terminating(&[-ni.clone(), &ni + a + b + &one, -x.clone()], &[a + &one, -big_n.clone()], &one)
}

/// Krawtchouk polynomial `K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)`.
pub fn kraw_k(n: u32, p: &Rational, big_n: &Rational, x: &Rational) -> Result<Rational> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    hyp_terminating(&[-int(n as i64), -x.clone()], &[-big_n.clone()], &(Rational::one() / p))
}

/// `(-M)_n Q_n(x; a, b, M)`, expanded so that no `(-M)_k` is ever a divisor.
pub fn scaled_hahn_q(n: u32, a: &Rational, b: &Rational, m: &Rational, x: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let ni = int(n as i64);
    let c = &ni + a + b + &one;
    let a1 = a + &one;
    let mut sum = Rational::zero();
    // running value of (-n)_k (c)_k (-x)_k / ((a+1)_k k!)
    let mut coef = Rational::one();
    for k in 0..=n {
        if k > 0 {
            let km = int(k as i64 - 1);
            let den = (&a1 + &km) * int(k as i64);
            if den.is_zero() {
                return Err(Error::ZeroDenominator { term: k as usize });
            }
            coef = coef * (-&ni + &km) * (&c + &km) * (-x + &km) / den;
            if coef.is_zero() {
                break;
            }
        }
        let tail = pochhammer(&(-m + int(k as i64)), n - k);
        sum += &coef * tail;
    }
    Ok(sum)
}

/// `(-M)_n K_n(x; p, M)`, expanded without dividing by `(-M)_k`.
pub fn scaled_kraw_k(n: u32, p: &Rational, m: &Rational, x: &Rational) -> Result<Rational> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inv_p = Rational::one() / p;
    let ni = int(n as i64);
    let mut sum = Rational::zero();
    let mut coef = Rational::one();
    for k in 0..=n {
        if k > 0 {
            let km = int(k as i64 - 1);
            coef = coef * (-&ni + &km) * (-x + &km) * &inv_p / int(k as i64);
            if coef.is_zero() {
                break;
            }
        }
        sum += &coef * pochhammer(&(-m + int(k as i64)), n - k);
    }
    Ok(sum)
}

/// `sum_n binom(N, n) K_n(x; p, N) t^n`, the right side of the Krawtchouk
/// generating function.
pub fn kraw_generating_sum(p: &Rational, big_n: u32, x: u32, t: &Rational) -> Result<Rational> {
    let nn = int(big_n as i64);
    let xx = int(x as i64);
    let mut sum = Rational::zero();
    for n in 0..=big_n {
        sum += crate::exact::binomial(big_n, n) * kraw_k(n, p, &nn, &xx)? * pow(t, n);
    }
    Ok(sum)
}

/// `(1 - (1-p) t / p)^x (1 + t)^{N-x}`, the closed generating function.
pub fn kraw_generating_closed(p: &Rational, big_n: u32, x: u32, t: &Rational) -> Rational {
    let one = Rational::one();
    let base = &one - (&one - p) * t / p;
    pow(&base, x) * pow(&(&one + t), big_n - x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, sign};

    fn params() -> Vec<Rational> {
        vec![frac(-1, 2), int(0), frac(1, 2), int(1), frac(7, 3)]
    }

    #[test]
    fn jacobi_examples() {
        let (a, b) = (frac(2, 3), frac(-1, 4));
        assert_eq!(jacobi_ratio(0, &a, &b, &frac(5, 7)).unwrap(), int(1));
        for n in 0..6 {
            assert_eq!(jacobi_ratio(n, &a, &b, &int(1)).unwrap(), int(1));
        }
        assert_eq!(jacobi_ratio(1, &int(0), &int(0), &frac(1, 2)).unwrap(), frac(1, 2));
        assert_eq!(jacobi_unnormalized(0, &a, &b, &frac(1, 9)).unwrap(), int(1));
        let t = frac(3, 11);
        assert_eq!(jacobi_unnormalized(1, &int(0), &int(0), &t).unwrap(), t);
        assert_eq!(jacobi_unnormalized(2, &int(0), &int(0), &int(1)).unwrap(), int(1));
        // Legendre P_2(t) = (3t^2 - 1)/2
        let p2 = (int(3) * &t * &t - int(1)) / int(2);
        assert_eq!(jacobi_unnormalized(2, &int(0), &int(0), &t).unwrap(), p2);
    }

    #[test]
    fn hahn_examples() {
        let (a, b) = (frac(1, 3), frac(5, 2));
        for n in 0..5 {
            assert_eq!(hahn_q(n, &a, &b, &int(6), &int(0)).unwrap(), int(1));
        }
        assert_eq!(hahn_q(0, &a, &b, &int(4), &int(3)).unwrap(), int(1));
        assert_eq!(hahn_q(1, &int(0), &int(0), &int(2), &int(1)).unwrap(), int(0));
    }

    #[test]
    fn kraw_examples() {
        let p = frac(2, 7);
        for n in 0..5 {
            assert_eq!(kraw_k(n, &p, &int(5), &int(0)).unwrap(), int(1));
        }
        assert_eq!(kraw_k(0, &p, &int(5), &int(3)).unwrap(), int(1));
        assert_eq!(kraw_k(1, &frac(1, 2), &int(2), &int(1)).unwrap(), int(0));
        assert_eq!(kraw_k(1, &int(0), &int(2), &int(1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn hahn_reflection() {
        for a in params() {
            for b in params() {
                for big_n in 0..=5u32 {
                    let nn = int(big_n as i64);
                    for n in 0..=big_n {
                        for x in 0..=big_n {
                            let lhs = hahn_q(n, &a, &b, &nn, &int(x as i64)).unwrap();
                            let rhs = sign(n) * pochhammer(&(&b + int(1)), n) / pochhammer(&(&a + int(1)), n)
                                * hahn_q(n, &b, &a, &nn, &int((big_n - x) as i64)).unwrap();
                            assert_eq!(lhs, rhs, "a={a} b={b} N={big_n} n={n} x={x}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kraw_reflection() {
        for p in [frac(1, 5), frac(1, 3), frac(1, 2), frac(3, 4)] {
            let q = int(1) - &p;
            for big_n in 0..=5u32 {
                let nn = int(big_n as i64);
                for n in 0..=big_n {
                    for x in 0..=big_n {
                        let lhs = kraw_k(n, &p, &nn, &int((big_n - x) as i64)).unwrap();
                        let rhs =
                            sign(n) * pow(&q, n) / pow(&p, n) * kraw_k(n, &q, &nn, &int(x as i64)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn hahn_orthogonality_one_variable() {
        // weight (a+1)_x (b+1)_{N-x} / (x! (N-x)!)
        for a in params() {
            for b in params() {
                let big_n = 4u32;
                let nn = int(big_n as i64);
                let w = |x: u32| {
                    pochhammer(&(&a + int(1)), x) * pochhammer(&(&b + int(1)), big_n - x)
                        / (factorial(x) * factorial(big_n - x))
                };
                for n in 0..=big_n {
                    for m in 0..n {
                        let s: Rational = (0..=big_n)
                            .map(|x| {
                                let xx = int(x as i64);
                                hahn_q(n, &a, &b, &nn, &xx).unwrap()
                                    * hahn_q(m, &a, &b, &nn, &xx).unwrap()
                                    * w(x)
                            })
                            .sum();
                        assert_eq!(s, int(0));
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_ratio_is_degree_n() {
        // (n+1)-th finite difference on n+2 equispaced nodes vanishes
        for n in 0..6u32 {
            let (a, b) = (frac(1, 2), frac(7, 3));
            let vals: Vec<Rational> =
                (0..n + 2).map(|i| jacobi_ratio(n, &a, &b, &frac(i as i64, 5)).unwrap()).collect();
            let mut diff = vals;
            for _ in 0..=n {
                diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
            }
            assert_eq!(diff, vec![int(0)]);
        }
    }

    #[test]
    fn scaled_variants_agree_where_defined() {
        for a in params() {
            for b in params() {
                for m in 0..=5u32 {
                    let mm = int(m as i64);
                    for n in 0..=m {
                        for x in 0..=m {
                            let xx = int(x as i64);
                            let direct = pochhammer(&-mm.clone(), n) * hahn_q(n, &a, &b, &mm, &xx).unwrap();
                            assert_eq!(scaled_hahn_q(n, &a, &b, &mm, &xx).unwrap(), direct);
                        }
                    }
                }
            }
        }
        let p = frac(2, 5);
        for m in 0..=5u32 {
            let mm = int(m as i64);
            for n in 0..=m {
                for x in 0..=m {
                    let xx = int(x as i64);
                    let direct = pochhammer(&-mm.clone(), n) * kraw_k(n, &p, &mm, &xx).unwrap();
                    assert_eq!(scaled_kraw_k(n, &p, &mm, &xx).unwrap(), direct);
                }
            }
        }
        // n > M: (-M)_n vanishes and the scaled value is the polynomial limit
        assert_eq!(scaled_hahn_q(3, &int(0), &int(0), &int(1), &int(0)).unwrap(), int(0));
    }

    #[test]
    fn kraw_generating_function() {
        let p = frac(1, 3);
        for x in 0..=3 {
            for r in [int(0), frac(1, 2), int(1)] {
                let t = &r * &p / (int(1) - &p);
                assert_eq!(kraw_generating_sum(&p, 3, x, &t).unwrap(), kraw_generating_closed(&p, 3, x, &t));
            }
        }
    }
}
