//! Jacobi polynomials on the simplex `T^d`.
//!
//! Polynomials are carried as [`SparsePoly`] in the homogeneous coordinates
//! `X = (x_1, ..., x_d, 1 - |x|)`. Integrals against the normalized weight
//! `X^kappa` reduce to the moments `(kappa+1)_gamma / (lambda)_{|gamma|}`,
//! so every inner product here is exact.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, multi_factorial, neg_pochhammer, pochhammer, sign, Rational};
use crate::hahn::{norm_product, HahnFamily};
use crate::lattice::{
    a_j, dominated_by, enumerate_compositions, multi_indices_of_degree, multi_indices_up_to,
};
use crate::params::Kappa;
use crate::poly::{homogenized_jacobi_factor, jacobi_series_coefficients, SparsePoly};

/// Coefficient maps keyed by a multi-index or composition.
pub type Expansion = BTreeMap<Vec<u32>, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexJacobi {
    kappa: Kappa,
}

/// `X(x) = (x, 1 - |x|)`.
pub fn homogeneous_point(x: &[Rational]) -> Vec<Rational> {
    let mut out = x.to_vec();
    let s: Rational = x.iter().sum();
    out.push(Rational::one() - s);
    out
}

/// `(-alpha)_beta` for integer vectors.
fn neg_pochhammer_multi(alpha: &[u32], beta: &[u32]) -> Rational {
    alpha.iter().zip(beta).map(|(&a, &b)| neg_pochhammer(a, b)).product()
}

impl SimplexJacobi {
    pub fn new(kappa: Kappa) -> Self {
        SimplexJacobi { kappa }
    }

    pub fn kappa(&self) -> &Kappa {
        &self.kappa
    }

    pub fn d(&self) -> usize {
        self.kappa.d()
    }

    fn nvars(&self) -> usize {
        self.d() + 1
    }

    pub fn lambda(&self) -> Rational {
        self.kappa.lambda()
    }

    /// The Hahn family with the same parameters on level `n`.
    pub fn hahn(&self, level: u32) -> HahnFamily {
        HahnFamily::new(self.kappa.clone(), level).expect("kappa already validated")
    }

    /// `(kappa+1)_gamma` over the `d+1` homogeneous coordinates.
    pub fn shifted_pochhammer(&self, gamma: &[u32]) -> Rational {
        self.kappa.shifted().iter().zip(gamma).map(|(k, &g)| pochhammer(k, g)).product()
    }

    /// `<X^gamma, 1> = (kappa+1)_gamma / (lambda)_{|gamma|}`.
    pub fn moment(&self, gamma: &[u32]) -> Result<Rational> {
        if gamma.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), found: gamma.len() });
        }
        let n: u32 = gamma.iter().sum();
        Ok(self.shifted_pochhammer(gamma) / pochhammer(&self.lambda(), n))
    }

    /// Integral of a polynomial in `X` against the normalized weight.
    pub fn integrate(&self, f: &SparsePoly) -> Result<Rational> {
        if f.nvars() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), found: f.nvars() });
        }
        let mut s = Rational::zero();
        for (e, c) in f.terms() {
            s += c * self.moment(e)?;
        }
        Ok(s)
    }

    pub fn inner_product(&self, f: &SparsePoly, g: &SparsePoly) -> Result<Rational> {
        self.integrate(&f.checked_mul(g)?)
    }

    fn check_nu(&self, nu: &[u32]) -> Result<u32> {
        if nu.len() != self.d() {
            return Err(Error::LengthMismatch { expected: self.d(), found: nu.len() });
        }
        Ok(nu.iter().sum())
    }

    fn check_alpha(&self, alpha: &[u32]) -> Result<u32> {
        if alpha.len() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), found: alpha.len() });
        }
        Ok(alpha.iter().sum())
    }

    /// `P_nu` as a homogeneous polynomial of degree `|nu|` in `X`.
    pub fn p_basis(&self, nu: &[u32]) -> Result<SparsePoly> {
        self.check_nu(nu)?;
        let kappa = self.kappa.entries();
        let mut out = SparsePoly::one(self.nvars());
        for j in 0..nu.len() {
            if nu[j] == 0 {
                continue;
            }
            let a = a_j(kappa, nu, j + 1)?;
            out = &out * &homogenized_jacobi_factor(self.nvars(), nu[j], &a, &kappa[j], j);
        }
        Ok(out)
    }

    /// `P_nu(x)` evaluated factor by factor in homogenized form, so a vanishing
    /// `1 - |x_{j-1}|` needs no division.
    pub fn p_eval(&self, nu: &[u32], x: &[Rational]) -> Result<Rational> {
        self.check_nu(nu)?;
        if x.len() != self.d() {
            return Err(Error::LengthMismatch { expected: self.d(), found: x.len() });
        }
        let kappa = self.kappa.entries();
        let big_x = homogeneous_point(x);
        let mut acc = Rational::one();
        for j in 0..nu.len() {
            if nu[j] == 0 {
                continue;
            }
            let a = a_j(kappa, nu, j + 1)?;
            let s: Rational = big_x[j..].iter().sum();
            let s_minus_u: Rational = big_x[j + 1..].iter().sum();
            let mut f = Rational::zero();
            for (k, c) in jacobi_series_coefficients(nu[j], &a, &kappa[j]).iter().enumerate() {
                let k = k as u32;
                f += c * crate::exact::pow(&s_minus_u, k) * crate::exact::pow(&s, nu[j] - k);
            }
            acc *= f;
        }
        Ok(acc)
    }

    /// `A_nu = <P_nu, P_nu>` in closed form.
    pub fn norm_a(&self, nu: &[u32]) -> Result<Rational> {
        let n = self.check_nu(nu)?;
        Ok(norm_product(self.kappa.entries(), nu)? / pochhammer(&self.lambda(), 2 * n))
    }

    /// Monic `R_alpha = X^alpha + lower terms`, orthogonal to all lower degrees.
    pub fn r_monic(&self, alpha: &[u32]) -> Result<SparsePoly> {
        let n = self.check_alpha(alpha)?;
        let big_l = self.kappa.total() + int(self.d() as i64 + n as i64);
        let lead = sign(n) * self.shifted_pochhammer(alpha) / pochhammer(&big_l, n);
        let mut out = SparsePoly::zero(self.nvars());
        for gamma in dominated_by(alpha) {
            let g: u32 = gamma.iter().sum();
            let c = &lead * neg_pochhammer_multi(alpha, &gamma) * pochhammer(&big_l, g)
                / (self.shifted_pochhammer(&gamma) * multi_factorial(&gamma));
            out.add_term(gamma, c);
        }
        Ok(out)
    }

    /// Coefficients of `X^alpha = sum_{beta <= alpha} c_beta R_beta`.
    pub fn monomial_in_r(&self, alpha: &[u32]) -> Result<Expansion> {
        let n = self.check_alpha(alpha)?;
        let lam = self.lambda();
        let ka = self.shifted_pochhammer(alpha);
        let mut out = Expansion::new();
        for beta in dominated_by(alpha) {
            let b: u32 = beta.iter().sum();
            let c = &ka * sign(b) * neg_pochhammer_multi(alpha, &beta) * pochhammer(&lam, 2 * b)
                / (multi_factorial(&beta) * self.shifted_pochhammer(&beta) * pochhammer(&lam, n + b));
            if !c.is_zero() {
                out.insert(beta, c);
            }
        }
        Ok(out)
    }

    /// Orthogonal projection `R_{alpha,n}` of `X^alpha` onto degree `n`.
    pub fn projection_r_alpha_n(&self, alpha: &[u32], n: u32) -> Result<SparsePoly> {
        let big_n = self.check_alpha(alpha)?;
        if n > big_n {
            return Err(Error::DegreeExceedsLevel { degree: n, level: big_n });
        }
        let lam = self.lambda();
        let pre = self.shifted_pochhammer(alpha) * pochhammer(&lam, 2 * n) / pochhammer(&lam, big_n + n);
        let mut out = SparsePoly::zero(self.nvars());
        for beta in crate::lattice::bounded_compositions(alpha, n) {
            let c = sign(n) * neg_pochhammer_multi(alpha, &beta)
                / (multi_factorial(&beta) * self.shifted_pochhammer(&beta));
            out = &out + &self.r_monic(&beta)?.scale(&(&pre * c));
        }
        Ok(out)
    }

    /// `sum_{|nu|=n} P_nu(x) P_nu(y) / A_nu`.
    pub fn kernel_sum(&self, n: u32, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let mut s = Rational::zero();
        for nu in multi_indices_of_degree(self.d(), n) {
            s += self.p_eval(&nu, x)? * self.p_eval(&nu, y)? / self.norm_a(&nu)?;
        }
        Ok(s)
    }

    /// The kernel as a polynomial in `X` with the first argument fixed.
    pub fn kernel_sum_poly(&self, n: u32, x: &[Rational]) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(self.nvars());
        for nu in multi_indices_of_degree(self.d(), n) {
            let c = self.p_eval(&nu, x)? / self.norm_a(&nu)?;
            out = &out + &self.p_basis(&nu)?.scale(&c);
        }
        Ok(out)
    }

    /// `P_nu = sum_{|alpha|=n} n!/alpha! H_nu(alpha; kappa, n) R_alpha`.
    pub fn connection_p_in_r(&self, nu: &[u32]) -> Result<Expansion> {
        let n = self.check_nu(nu)?;
        let fam = self.hahn(n);
        let mut out = Expansion::new();
        for alpha in fam.grid() {
            let c = factorial(n) / multi_factorial(&alpha) * fam.hahn_h(nu, &alpha)?;
            if !c.is_zero() {
                out.insert(alpha.entries().to_vec(), c);
            }
        }
        Ok(out)
    }

    /// `R_alpha = (kappa+1)_alpha/(lambda)_n sum_{|nu|=n} H_nu(alpha; n)/B_nu(n) P_nu`.
    pub fn connection_r_in_p(&self, alpha: &[u32]) -> Result<Expansion> {
        let n = self.check_alpha(alpha)?;
        let fam = self.hahn(n);
        let pre = self.shifted_pochhammer(alpha) / pochhammer(&self.lambda(), n);
        let mut out = Expansion::new();
        for nu in multi_indices_of_degree(self.d(), n) {
            let c = &pre * fam.hahn_h(&nu, alpha)? / fam.norm_b(&nu)?;
            if !c.is_zero() {
                out.insert(nu.entries().to_vec(), c);
            }
        }
        Ok(out)
    }

    /// `<P_nu, R_alpha> = n! (kappa+1)_alpha / (lambda)_{2n} H_nu(alpha; n)`.
    pub fn ip_p_r(&self, nu: &[u32], alpha: &[u32]) -> Result<Rational> {
        let n = self.check_nu(nu)?;
        let m = self.check_alpha(alpha)?;
        if m != n {
            return Err(Error::LevelMismatch { expected: n as u64, found: m as u64 });
        }
        Ok(factorial(n) * self.shifted_pochhammer(alpha) / pochhammer(&self.lambda(), 2 * n)
            * self.hahn(n).hahn_h(nu, alpha)?)
    }

    /// `<R_alpha, R_beta>` through the Hahn kernel on level `n`.
    pub fn ip_r_r(&self, alpha: &[u32], beta: &[u32]) -> Result<Rational> {
        let n = self.check_alpha(alpha)?;
        let m = self.check_alpha(beta)?;
        if m != n {
            return Err(Error::LevelMismatch { expected: n as u64, found: m as u64 });
        }
        let lam = self.lambda();
        Ok(factorial(n) * self.shifted_pochhammer(alpha) * self.shifted_pochhammer(beta)
            / (pochhammer(&lam, n) * pochhammer(&lam, 2 * n))
            * self.hahn(n).kernel_closed(n, alpha, beta)?)
    }

    /// `<P_nu, X^alpha> = (-1)^n (-N)_n (kappa+1)_alpha / (lambda)_{N+n} H_nu(alpha; N)`
    /// with `N = |alpha|`. The same value is `<R_{alpha,n}, P_nu>`.
    pub fn ip_p_x(&self, nu: &[u32], alpha: &[u32]) -> Result<Rational> {
        let n = self.check_nu(nu)?;
        let big_n = self.check_alpha(alpha)?;
        if n > big_n {
            return Err(Error::DegreeExceedsLevel { degree: n, level: big_n });
        }
        Ok(sign(n) * pochhammer(&-int(big_n as i64), n) * self.shifted_pochhammer(alpha)
            / pochhammer(&self.lambda(), big_n + n)
            * self.hahn(big_n).hahn_h(nu, alpha)?)
    }

    /// `R_{alpha,n} = (kappa+1)_alpha/(lambda)_N sum_{|nu|=n} H_nu(alpha; N)/B_nu(N) P_nu`.
    pub fn projection_in_p(&self, alpha: &[u32], n: u32) -> Result<Expansion> {
        let big_n = self.check_alpha(alpha)?;
        if n > big_n {
            return Err(Error::DegreeExceedsLevel { degree: n, level: big_n });
        }
        let fam = self.hahn(big_n);
        let pre = self.shifted_pochhammer(alpha) / pochhammer(&self.lambda(), big_n);
        let mut out = Expansion::new();
        for nu in multi_indices_of_degree(self.d(), n) {
            let c = &pre * fam.hahn_h(&nu, alpha)? / fam.norm_b(&nu)?;
            if !c.is_zero() {
                out.insert(nu.entries().to_vec(), c);
            }
        }
        Ok(out)
    }

    /// `P_nu = sum_{|alpha|=N} N!/alpha! H_nu(alpha; N) R_{alpha,n}` as a polynomial.
    pub fn p_from_projections(&self, nu: &[u32], big_n: u32) -> Result<SparsePoly> {
        let n = self.check_nu(nu)?;
        if n > big_n {
            return Err(Error::DegreeExceedsLevel { degree: n, level: big_n });
        }
        let fam = self.hahn(big_n);
        let mut out = SparsePoly::zero(self.nvars());
        for alpha in fam.grid() {
            let c = factorial(big_n) / multi_factorial(&alpha) * fam.hahn_h(nu, &alpha)?;
            if c.is_zero() {
                continue;
            }
            out = &out + &self.projection_r_alpha_n(&alpha, n)?.scale(&c);
        }
        Ok(out)
    }

    /// Right side of the tight-frame identity for the degree-`n` kernel
    /// built from all `R_{alpha,n}` with `|alpha| = N`.
    pub fn frame_kernel(&self, n: u32, big_n: u32, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        if n > big_n {
            return Err(Error::DegreeExceedsLevel { degree: n, level: big_n });
        }
        let bx = homogeneous_point(x);
        let by = homogeneous_point(y);
        let mut s = Rational::zero();
        for alpha in enumerate_compositions(self.nvars(), big_n) {
            let r = self.projection_r_alpha_n(&alpha, n)?;
            s += r.eval(&bx)? * r.eval(&by)? / (self.shifted_pochhammer(&alpha) * multi_factorial(&alpha));
        }
        Ok(pochhammer(&self.lambda(), big_n + n) * factorial(big_n)
            / (sign(n) * pochhammer(&-int(big_n as i64), n))
            * s)
    }

    /// Compares the basis-sum kernel with the frame form at one pair of points.
    pub fn frame_identity_check(&self, n: u32, big_n: u32, x: &[Rational], y: &[Rational]) -> Result<bool> {
        Ok(self.kernel_sum(n, x, y)? == self.frame_kernel(n, big_n, x, y)?)
    }

    /// Coefficients of `X^alpha = (kappa+1)_alpha/(lambda)_N sum_{|nu|<=N} H_nu(alpha; N)/B_nu(N) P_nu`.
    pub fn monomial_in_p(&self, alpha: &[u32]) -> Result<Expansion> {
        let big_n = self.check_alpha(alpha)?;
        let fam = self.hahn(big_n);
        let pre = self.shifted_pochhammer(alpha) / pochhammer(&self.lambda(), big_n);
        let mut out = Expansion::new();
        for nu in multi_indices_up_to(self.d(), big_n) {
            let c = &pre * fam.hahn_h(&nu, alpha)? / fam.norm_b(&nu)?;
            if !c.is_zero() {
                out.insert(nu.entries().to_vec(), c);
            }
        }
        Ok(out)
    }

    /// `sum_key c_key * basis(key)` as a polynomial.
    pub fn synthesize<F>(&self, coefficients: &Expansion, basis: F) -> Result<SparsePoly>
    where
        F: Fn(&[u32]) -> Result<SparsePoly>,
    {
        let mut out = SparsePoly::zero(self.nvars());
        for (k, c) in coefficients {
            out = &out + &basis(k)?.scale(c);
        }
        Ok(out)
    }

    /// `X^alpha` as a polynomial.
    pub fn monomial(&self, alpha: &[u32]) -> SparsePoly {
        SparsePoly::monomial(alpha.to_vec(), Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn fam(k: &str) -> SimplexJacobi {
        SimplexJacobi::new(Kappa::parse(k).unwrap())
    }

    #[test]
    fn moment_examples() {
        assert_eq!(fam("0,0").moment(&[0, 0]).unwrap(), int(1));
        assert_eq!(fam("0,0").moment(&[1, 0]).unwrap(), frac(1, 2));
        assert_eq!(fam("0,0,0").moment(&[1, 1, 0]).unwrap(), frac(1, 12));
        let one = SparsePoly::one(3);
        assert_eq!(fam("1/2,0,7/3").inner_product(&one, &one).unwrap(), int(1));
    }

    #[test]
    fn p_basis_examples() {
        let f = fam("0,0");
        assert_eq!(f.p_basis(&[0]).unwrap(), SparsePoly::one(2));
        // 2 x_1 - 1 = X_1 - X_2 on the line
        let p = f.p_basis(&[1]).unwrap();
        assert_eq!(p, &SparsePoly::var(2, 0) - &SparsePoly::var(2, 1));
        assert_eq!(f.p_eval(&[1], &[int(1)]).unwrap(), int(1));
        assert_eq!(f.norm_a(&[1]).unwrap(), frac(1, 3));
        assert_eq!(fam("-1/2,-1/2").norm_a(&[1]).unwrap(), frac(1, 2));
    }

    #[test]
    fn p_eval_matches_polynomial() {
        let f = fam("1/2,-1/2,7/3");
        let x = [frac(1, 5), frac(2, 3)];
        let bx = homogeneous_point(&x);
        for nu in multi_indices_up_to(2, 3) {
            assert_eq!(f.p_eval(&nu, &x).unwrap(), f.p_basis(&nu).unwrap().eval(&bx).unwrap());
        }
        // vanishing tail sum at the vertex x = (1, 0)
        let v = [int(1), int(0)];
        for nu in multi_indices_up_to(2, 3) {
            let p = f.p_basis(&nu).unwrap().eval(&homogeneous_point(&v)).unwrap();
            assert_eq!(f.p_eval(&nu, &v).unwrap(), p);
        }
    }

    #[test]
    fn orthogonality_and_norms() {
        for k in ["0,0", "-1/2,7/3", "1/2,0,1", "-1/2,-1/2,-1/2"] {
            let f = fam(k);
            let nus = multi_indices_up_to(f.d(), 3);
            for nu in &nus {
                let p = f.p_basis(nu).unwrap();
                for mu in &nus {
                    let q = f.p_basis(mu).unwrap();
                    let ip = f.inner_product(&p, &q).unwrap();
                    if nu == mu {
                        assert_eq!(ip, f.norm_a(nu).unwrap(), "kappa={k} nu={nu}");
                    } else {
                        assert_eq!(ip, int(0), "kappa={k} nu={nu} mu={mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn r_monic_is_monic_and_orthogonal() {
        let f = fam("1/2,0,7/3");
        assert_eq!(f.r_monic(&[0, 0, 0]).unwrap(), SparsePoly::one(3));
        for n in 1..=3 {
            for alpha in enumerate_compositions(3, n) {
                let r = f.r_monic(&alpha).unwrap();
                assert_eq!(r.coefficient(&alpha), int(1));
                for low in 0..n {
                    for gamma in enumerate_compositions(3, low) {
                        assert_eq!(f.inner_product(&r, &f.monomial(&gamma)).unwrap(), int(0));
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_in_r_round_trip() {
        let f = fam("-1/2,1");
        for n in 0..=3 {
            for alpha in enumerate_compositions(2, n) {
                let c = f.monomial_in_r(&alpha).unwrap();
                assert_eq!(c[alpha.entries()], int(1));
                let back = f.synthesize(&c, |b| f.r_monic(b)).unwrap();
                assert_eq!(back, f.monomial(&alpha));
            }
        }
    }

    #[test]
    fn projection_examples() {
        let f = fam("0,1/2,1");
        let alpha = [1, 0, 1];
        assert_eq!(f.projection_r_alpha_n(&alpha, 2).unwrap(), f.r_monic(&alpha).unwrap());
        let p0 = f.projection_r_alpha_n(&alpha, 0).unwrap();
        assert_eq!(p0, SparsePoly::constant(3, f.moment(&alpha).unwrap()));
        assert!(f.projection_r_alpha_n(&alpha, 3).is_err());
        let xa = f.monomial(&[2, 1, 0]);
        let r1 = f.projection_r_alpha_n(&[2, 1, 0], 1).unwrap();
        for mu in multi_indices_of_degree(2, 1) {
            let p = f.p_basis(&mu).unwrap();
            assert_eq!(f.inner_product(&r1, &p).unwrap(), f.inner_product(&xa, &p).unwrap());
        }
    }

    #[test]
    fn kernel_examples() {
        let f = fam("1/2,1/2,1/2");
        let x = [frac(1, 3), frac(1, 4)];
        let y = [frac(1, 7), frac(3, 5)];
        assert_eq!(f.kernel_sum(0, &x, &y).unwrap(), int(1));
        assert_eq!(f.kernel_sum(2, &x, &y).unwrap(), f.kernel_sum(2, &y, &x).unwrap());
        let k = f.kernel_sum_poly(2, &x).unwrap();
        for nu in multi_indices_of_degree(2, 2) {
            let p = f.p_basis(&nu).unwrap();
            assert_eq!(f.inner_product(&k, &p).unwrap(), f.p_eval(&nu, &x).unwrap());
        }
        assert!(f.frame_identity_check(0, 2, &x, &y).unwrap());
        assert!(f.frame_identity_check(2, 3, &x, &y).unwrap());
        let g = fam("0,0");
        assert!(g.frame_identity_check(1, 2, &[frac(2, 9)], &[frac(5, 7)]).unwrap());
    }
}
