//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are the homogeneous coordinates `y_1, ..., y_{d+1}`. Terms are
//! keyed by exponent vectors in graded-lexicographic order, so iteration and
//! the text rendering are stable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, pow, Rational};
use crate::lattice::a_j;

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a homogeneity query.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = SparsePoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        SparsePoly::constant(nvars, Rational::one())
    }

    /// The variable `y_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        SparsePoly::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = SparsePoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `y_{from+1} + ... + y_{nvars}`.
    pub fn tail_sum(nvars: usize, from: usize) -> Self {
        let mut p = SparsePoly::zero(nvars);
        for i in from..nvars {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_term(e, Rational::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.exponents(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c y^exps`, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check(&self, other: &SparsePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check(other)?;
        let mut out = SparsePoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: point.len() });
        }
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= pow(x, e);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(first) => {
                if degrees.all(|e| e == first) {
                    Homogeneity::Homogeneous(first)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Multiplies each term of degree `e` by `|y|^{degree - e}`. On the
    /// hyperplane `|y| = 1` the result agrees with `self` and is homogeneous.
    pub fn homogenize(&self, degree: u32) -> Result<SparsePoly> {
        if let Some(top) = self.max_degree() {
            if top > degree {
                return Err(Error::DegreeExceedsLevel { degree: top, level: degree });
            }
        }
        let sum = SparsePoly::tail_sum(self.nvars, 0);
        let mut powers: Vec<SparsePoly> = vec![SparsePoly::one(self.nvars)];
        let mut out = SparsePoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = (degree - m.degree()) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * &sum;
                powers.push(next);
            }
            for (pm, pc) in &powers[k].terms {
                let e = m.0.iter().zip(&pm.0).map(|(a, b)| a + b).collect();
                out.add_term(e, c * pc);
            }
        }
        Ok(out)
    }

    /// True when both polynomials agree on the hyperplane `|y| = 1`.
    pub fn equal_on_unit_hyperplane(&self, other: &SparsePoly) -> Result<bool> {
        self.check(other)?;
        let deg = self.max_degree().unwrap_or(0).max(other.max_degree().unwrap_or(0));
        Ok(self.homogenize(deg)? == other.homogenize(deg)?)
    }

    /// One line per term, `coeff * y1^e1 y2^e2`, in key order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, c) in &self.terms {
            s.push_str(&c.to_string());
            s.push_str(" *");
            let mut any = false;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    s.push_str(&format!(" y{}^{}", i + 1, e));
                    any = true;
                }
            }
            if !any {
                s.push_str(" 1");
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0\n");
        }
        f.write_str(&self.to_text())
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("polynomial variable count mismatch")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("polynomial variable count mismatch")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("polynomial variable count mismatch")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}

/// Coefficients `(-n)_k (n+a+b+1)_k / ((a+1)_k k!)` of the Jacobi ratio series.
pub(crate) fn jacobi_series_coefficients(n: u32, a: &Rational, b: &Rational) -> Vec<Rational> {
    let one = Rational::one();
    let ni = int(n as i64);
    let c = &ni + a + b + &one;
    let a1 = a + &one;
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut coef = Rational::one();
    out.push(coef.clone());
    for k in 1..=n {
        let km = int(k as i64 - 1);
        coef = coef * (-&ni + &km) * (&c + &km) / ((&a1 + &km) * int(k as i64));
        out.push(coef.clone());
    }
    out
}

/// `s^n P_n^{(a,b)}(2u/s - 1) / P_n^{(a,b)}(1)` as a homogeneous polynomial,
/// with `u = y_{j+1}` and `s = y_{j+1} + ... + y_{nvars}` (`j` is 0-based).
pub fn homogenized_jacobi_factor(nvars: usize, n: u32, a: &Rational, b: &Rational, j: usize) -> SparsePoly {
    let s = SparsePoly::tail_sum(nvars, j);
    let s_minus_u = SparsePoly::tail_sum(nvars, j + 1);
    let coefs = jacobi_series_coefficients(n, a, b);
    let mut out = SparsePoly::zero(nvars);
    for (k, c) in coefs.iter().enumerate() {
        let term = &s_minus_u.pow(k as u32) * &s.pow(n - k as u32);
        out = &out + &term.scale(c);
    }
    out
}

/// `|y|^{N-|nu|} prod_j` of the homogenized factors with `a = a_j(kappa, nu)`
/// and `b = kappa_j`; the coefficient of `y^alpha` is `N!/alpha!` times the
/// Hahn polynomial at `alpha`.
pub fn generating_polynomial(kappa: &[Rational], level: u32, nu: &[u32]) -> Result<SparsePoly> {
    let d = nu.len();
    if kappa.len() != d + 1 {
        return Err(Error::LengthMismatch { expected: d + 1, found: kappa.len() });
    }
    let deg: u32 = nu.iter().sum();
    if deg > level {
        return Err(Error::DegreeExceedsLevel { degree: deg, level });
    }
    let nvars = d + 1;
    let mut out = SparsePoly::tail_sum(nvars, 0).pow(level - deg);
    for j in 0..d {
        if nu[j] == 0 {
            continue;
        }
        let a = a_j(kappa, nu, j + 1)?;
        out = &out * &homogenized_jacobi_factor(nvars, nu[j], &a, &kappa[j], j);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, frac, multi_factorial};
    use crate::hahn::HahnFamily;
    use crate::lattice::{enumerate_compositions, multi_indices_up_to};
    use crate::params::Kappa;
    use crate::univariate::{hahn_q, jacobi_ratio};

    fn y(i: usize) -> SparsePoly {
        SparsePoly::var(2, i)
    }

    #[test]
    fn ring_examples() {
        let p = &y(0) + &y(1);
        assert_eq!(&p * &SparsePoly::one(2), p);
        let prod = &(&y(0) + &y(1)) * &(&y(0) - &y(1));
        let expected = &y(0).pow(2) - &y(1).pow(2);
        assert_eq!(prod, expected);
        let z = p.scale(&int(0));
        assert!(z.is_zero() && z.is_empty());
        assert!(p.checked_add(&SparsePoly::one(3)).is_err());
    }

    #[test]
    fn homogeneity_and_text() {
        let p = &y(0).pow(2) + &SparsePoly::monomial(vec![1, 1], frac(-1, 2));
        assert_eq!(p.homogeneous_degree(), Homogeneity::Homogeneous(2));
        assert_eq!(p.to_text(), "-1/2 * y1^1 y2^1\n1 * y1^2\n");
        let q = &p + &SparsePoly::one(2);
        assert_eq!(q.homogeneous_degree(), Homogeneity::Inhomogeneous);
        assert_eq!(SparsePoly::zero(2).homogeneous_degree(), Homogeneity::Zero);
        let h = q.homogenize(2).unwrap();
        assert_eq!(h.homogeneous_degree(), Homogeneity::Homogeneous(2));
        assert!(h.equal_on_unit_hyperplane(&q).unwrap());
    }

    #[test]
    fn jacobi_factor_examples() {
        let (a, b) = (frac(1, 3), frac(2, 5));
        assert_eq!(homogenized_jacobi_factor(3, 0, &a, &b, 1), SparsePoly::one(3));
        let f = homogenized_jacobi_factor(2, 1, &int(0), &int(0), 0);
        assert_eq!(f, &y(0) - &y(1));
        // at u = s the ratio is 1, leaving s^n
        let g = homogenized_jacobi_factor(3, 3, &a, &b, 1);
        let pt = [int(5), int(2), int(0)];
        assert_eq!(g.eval(&pt).unwrap(), int(8));
    }

    #[test]
    fn jacobi_factor_matches_ratio() {
        let (a, b) = (frac(1, 2), frac(7, 3));
        for n in 0..5 {
            let f = homogenized_jacobi_factor(3, n, &a, &b, 1);
            let pt = [frac(1, 7), frac(2, 9), frac(3, 5)];
            let s = &pt[1] + &pt[2];
            let t = int(2) * &pt[1] / &s - int(1);
            let expected = jacobi_ratio(n, &a, &b, &t).unwrap() * pow(&s, n);
            assert_eq!(f.eval(&pt).unwrap(), expected);
        }
    }

    #[test]
    fn generating_polynomial_examples() {
        let k = vec![frac(1, 2), int(1), frac(-1, 2)];
        let g = generating_polynomial(&k, 3, &[0, 0]).unwrap();
        assert_eq!(g, SparsePoly::tail_sum(3, 0).pow(3));
        let g = generating_polynomial(&[int(0), int(0)], 1, &[1]).unwrap();
        assert_eq!(g, &y(0) - &y(1));
        assert!(generating_polynomial(&k, 1, &[1, 1]).is_err());
    }

    #[test]
    fn generating_polynomial_is_homogeneous_and_matches_product_formula() {
        let kappa = Kappa::parse("1/2,-1/2,7/3").unwrap();
        for level in 0..=4u32 {
            let fam = HahnFamily::new(kappa.clone(), level).unwrap();
            for nu in multi_indices_up_to(2, level) {
                let g = generating_polynomial(kappa.entries(), level, &nu).unwrap();
                assert_eq!(g.homogeneous_degree(), Homogeneity::Homogeneous(level));
                for alpha in enumerate_compositions(3, level) {
                    let expected =
                        factorial(level) / multi_factorial(&alpha) * fam.hahn_h(&nu, &alpha).unwrap();
                    assert_eq!(g.coefficient(&alpha), expected);
                }
            }
        }
    }

    #[test]
    fn one_variable_reduction() {
        // coefficient of y1^{N-j} y2^j is binom(N,j) Q_n(j; k2, k1, N)
        let (k1, k2) = (frac(1, 3), int(2));
        let level = 4;
        for n in 0..=level {
            let g = generating_polynomial(&[k1.clone(), k2.clone()], level, &[n]).unwrap();
            for j in 0..=level {
                let expected = crate::exact::binomial(level, j)
                    * hahn_q(n, &k2, &k1, &int(level as i64), &int(j as i64)).unwrap();
                assert_eq!(g.coefficient(&[level - j, j]), expected);
            }
        }
    }
}
