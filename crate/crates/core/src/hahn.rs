//! Hahn polynomials of several variables on `Z_N^{d+1}`.
//!
//! The weight is `(kappa+1)_x / x!` and the inner product is normalized by
//! `N!/(lambda)_N`, `lambda = |kappa| + d + 1`, so that `<1, 1> = 1`. Three
//! representations of the reproducing kernel are provided: the sum over the
//! mutually orthogonal basis, a double sum through the Jacobi-type Hahn
//! polynomial `Q_n(m; |kappa|+d-1/2, -1/2, N)`, and the closed form in the
//! functions `E_k`. The closed form is the production path.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    binomial, factorial, frac, int, multi_factorial, neg_pochhammer, pochhammer, pow, sign, Rational,
};
use crate::lattice::{
    a_j, bounded_compositions, enumerate_compositions, multi_indices_of_degree, Composition,
};
use crate::params::Kappa;
use crate::table::KernelTable;
use crate::univariate::{hahn_q, scaled_hahn_q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnFamily {
    kappa: Kappa,
    level: u32,
}

/// One Hahn polynomial `H_nu(.; kappa, N)` ready for repeated evaluation.
///
/// Each factor `(-M_j)_{nu_j} Q_{nu_j}(x_j; kappa_j, a_j, M_j)` with
/// `M_j = N - |x_{j-1}| - |nu^{j+1}|` is expanded without dividing by
/// `(-M_j)_k`, since `M_j` may be smaller than `nu_j`.
pub struct HahnBasis<'a> {
    family: &'a HahnFamily,
    nu: Vec<u32>,
    a: Vec<Rational>,
    constant: Rational,
}

impl HahnBasis<'_> {
    pub fn eval(&self, x: &[u32]) -> Result<Rational> {
        let fam = self.family;
        fam.check_point(x)?;
        let kappa = fam.kappa.entries();
        let mut acc = self.constant.clone();
        let mut head = 0i64;
        for j in 0..self.nu.len() {
            if self.nu[j] > 0 {
                let tail_nu: u32 = self.nu[j + 1..].iter().sum();
                let m = int(fam.level as i64 - head - tail_nu as i64);
                acc *= scaled_hahn_q(self.nu[j], &kappa[j], &self.a[j], &m, &int(x[j] as i64))?;
                if acc.is_zero() {
                    return Ok(acc);
                }
            }
            head += x[j] as i64;
        }
        Ok(acc)
    }
}

/// `(|kappa|+d+2n) / (|kappa|+d+n)`, taken as 1 at `n = 0` where it can be `0/0`.
pub(crate) fn degree_ratio(kd: &Rational, n: u32) -> Rational {
    if n == 0 {
        Rational::one()
    } else {
        (kd + int(2 * n as i64)) / (kd + int(n as i64))
    }
}

/// `(c)_{2n} / (c)_n = (c+n)_n`, safe when `c` is zero.
fn double_over_single(c: &Rational, n: u32) -> Rational {
    pochhammer(&(c + int(n as i64)), n)
}

/// Product factor shared by the Jacobi norm `A_nu` and the Hahn norm `B_nu`.
pub(crate) fn norm_product(kappa: &[Rational], nu: &[u32]) -> Result<Rational> {
    let one = Rational::one();
    let mut acc = Rational::one();
    for j in 0..nu.len() {
        let a = a_j(kappa, nu, j + 1)?;
        let n = nu[j];
        acc *= double_over_single(&(&kappa[j] + &a + &one), n)
            * pochhammer(&(&kappa[j] + &one), n)
            * factorial(n)
            / pochhammer(&(&a + &one), n);
    }
    Ok(acc)
}

/// Left side of the alternating-sum identity
/// `sum_m (-1)^m binom(k,m) Q_n(m; -1/2, |kappa|+d-1/2, N)
///   = (-n)_k (n+|kappa|+d)_k / ((1/2)_k (-N)_k)`, with `kd = |kappa| + d`.
pub fn alternating_hahn_sum(kd: &Rational, n: u32, k: u32, level: u32) -> Result<(Rational, Rational)> {
    let half = frac(1, 2);
    let a = -half.clone();
    let b = kd - &half;
    let nn = int(level as i64);
    let mut lhs = Rational::zero();
    for m in 0..=k {
        lhs += sign(m) * binomial(k, m) * hahn_q(n, &a, &b, &nn, &int(m as i64))?;
    }
    let rhs = pochhammer(&-int(n as i64), k) * pochhammer(&(kd + int(n as i64)), k)
        / (pochhammer(&half, k) * pochhammer(&-nn, k));
    Ok((lhs, rhs))
}

impl HahnFamily {
    pub fn new(kappa: Kappa, level: u32) -> Result<Self> {
        Ok(HahnFamily { kappa, level })
    }

    pub fn kappa(&self) -> &Kappa {
        &self.kappa
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn d(&self) -> usize {
        self.kappa.d()
    }

    /// `|kappa| + d + 1`.
    pub fn lambda(&self) -> Rational {
        self.kappa.lambda()
    }

    /// `|kappa| + d`.
    fn kd(&self) -> Rational {
        self.lambda() - Rational::one()
    }

    /// The same parameters on another level.
    pub fn at_level(&self, level: u32) -> HahnFamily {
        HahnFamily { kappa: self.kappa.clone(), level }
    }

    pub fn grid(&self) -> Vec<Composition> {
        enumerate_compositions(self.d() + 1, self.level)
    }

    fn check_point(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.d() + 1 {
            return Err(Error::LengthMismatch { expected: self.d() + 1, found: x.len() });
        }
        let s: u32 = x.iter().sum();
        if s != self.level {
            return Err(Error::LevelMismatch { expected: self.level as u64, found: s as u64 });
        }
        Ok(())
    }

    fn check_degree(&self, nu: &[u32]) -> Result<u32> {
        if nu.len() != self.d() {
            return Err(Error::LengthMismatch { expected: self.d(), found: nu.len() });
        }
        let n: u32 = nu.iter().sum();
        if n > self.level {
            return Err(Error::DegreeExceedsLevel { degree: n, level: self.level });
        }
        Ok(n)
    }

    /// `(kappa+1)_x / x!`.
    pub fn weight(&self, x: &[u32]) -> Result<Rational> {
        self.check_point(x)?;
        let k1 = self.kappa.shifted();
        let mut w = Rational::one();
        for (k, &xi) in k1.iter().zip(x) {
            w *= pochhammer(k, xi) / factorial(xi);
        }
        Ok(w)
    }

    /// `N! / (lambda)_N`, the reciprocal of the total weight.
    pub fn normalizer(&self) -> Rational {
        factorial(self.level) / pochhammer(&self.lambda(), self.level)
    }

    /// Normalized `<f, g>` over the whole grid.
    pub fn inner_product<F, G>(&self, f: F, g: G) -> Result<Rational>
    where
        F: Fn(&Composition) -> Result<Rational>,
        G: Fn(&Composition) -> Result<Rational>,
    {
        let mut s = Rational::zero();
        for x in self.grid() {
            s += f(&x)? * g(&x)? * self.weight(&x)?;
        }
        Ok(s * self.normalizer())
    }

    /// `H_nu(x; kappa, N)` from the product of one-variable Hahn polynomials.
    pub fn hahn_h(&self, nu: &[u32], x: &[u32]) -> Result<Rational> {
        self.basis(nu)?.eval(x)
    }

    /// `H_nu` with its `x`-independent factors computed once.
    pub fn basis(&self, nu: &[u32]) -> Result<HahnBasis<'_>> {
        let n = self.check_degree(nu)?;
        let kappa = self.kappa.entries();
        let one = Rational::one();
        let mut constant = sign(n) / pochhammer(&-int(self.level as i64), n);
        let mut a = Vec::with_capacity(nu.len());
        for j in 0..nu.len() {
            let aj = a_j(kappa, nu, j + 1)?;
            constant *= pochhammer(&(&kappa[j] + &one), nu[j]) / pochhammer(&(&aj + &one), nu[j]);
            a.push(aj);
        }
        Ok(HahnBasis { family: self, nu: nu.to_vec(), a, constant })
    }

    /// `B_nu = <H_nu, H_nu>`.
    pub fn norm_b(&self, nu: &[u32]) -> Result<Rational> {
        let n = self.check_degree(nu)?;
        let lam = self.lambda();
        let nl = self.level;
        Ok(sign(n) * pochhammer(&lam, nl + n)
            / (pochhammer(&-int(nl as i64), n) * pochhammer(&lam, nl) * pochhammer(&lam, 2 * n))
            * norm_product(self.kappa.entries(), nu)?)
    }

    /// `H_nu(0)` at the origin `(0, ..., 0, N)`.
    pub fn hahn_h_at_origin(&self, nu: &[u32]) -> Result<Rational> {
        let n = self.check_degree(nu)?;
        let kappa = self.kappa.entries();
        let one = Rational::one();
        let mut acc = sign(n);
        for j in 0..nu.len() {
            let a = a_j(kappa, nu, j + 1)?;
            acc *= pochhammer(&(&kappa[j] + &one), nu[j]) / pochhammer(&(&a + &one), nu[j]);
        }
        Ok(acc)
    }

    /// `n!/(-N)_n sum_{|alpha|=n} H_nu(alpha; kappa, n) (-x)_alpha / alpha!`.
    pub fn shifted_monomial_expansion(&self, nu: &[u32], x: &[u32]) -> Result<Rational> {
        let n = self.check_degree(nu)?;
        self.check_point(x)?;
        let small = self.at_level(n);
        let mut s = Rational::zero();
        for alpha in bounded_compositions(x, n) {
            let shifted: Rational = x.iter().zip(&alpha).map(|(&xi, &ai)| neg_pochhammer(xi, ai)).product();
            s += small.hahn_h(nu, &alpha)? * shifted / multi_factorial(&alpha);
        }
        Ok(factorial(n) / pochhammer(&-int(self.level as i64), n) * s)
    }

    /// `E_k(x, y)` for `k = 0, ..., N` in one pass over `gamma <= min(x, y)`.
    pub fn cal_e_all(&self, x: &[u32], y: &[u32]) -> Result<Vec<Rational>> {
        self.check_point(x)?;
        self.check_point(y)?;
        let k1 = self.kappa.shifted();
        let bound: Vec<u32> = x.iter().zip(y).map(|(a, b)| *a.min(b)).collect();
        let mut out = vec![Rational::zero(); self.level as usize + 1];
        // per-coordinate factors (-x_i)_g (-y_i)_g / ((kappa_i+1)_g g!)
        let factors: Vec<Vec<Rational>> = (0..bound.len())
            .map(|i| {
                (0..=bound[i])
                    .map(|g| {
                        neg_pochhammer(x[i], g) * neg_pochhammer(y[i], g)
                            / (pochhammer(&k1[i], g) * factorial(g))
                    })
                    .collect()
            })
            .collect();
        let max_k: u32 = bound.iter().sum();
        for k in 0..=max_k.min(self.level) {
            let mut s = Rational::zero();
            for gamma in bounded_compositions(&bound, k) {
                let mut t = Rational::one();
                for (i, &g) in gamma.iter().enumerate() {
                    t *= &factors[i][g as usize];
                }
                s += t;
            }
            out[k as usize] = s;
        }
        Ok(out)
    }

    pub fn cal_e(&self, k: u32, x: &[u32], y: &[u32]) -> Result<Rational> {
        if k > self.level {
            return Err(Error::DegreeExceedsLevel { degree: k, level: self.level });
        }
        Ok(self.cal_e_all(x, y)?.swap_remove(k as usize))
    }

    /// `sum_{|nu|=n} H_nu(x) H_nu(y) / B_nu`.
    pub fn kernel_sum(&self, n: u32, x: &[u32], y: &[u32]) -> Result<Rational> {
        let mut s = Rational::zero();
        for nu in multi_indices_of_degree(self.d(), n) {
            s += self.hahn_h(&nu, x)? * self.hahn_h(&nu, y)? / self.norm_b(&nu)?;
        }
        Ok(s)
    }

    /// Kernel table from the basis sum, with each `H_nu` evaluated once per point.
    pub fn kernel_sum_table(&self, n: u32) -> Result<KernelTable> {
        let grid = self.grid();
        let mut cols: Vec<(Vec<Rational>, Rational)> = Vec::new();
        for nu in multi_indices_of_degree(self.d(), n) {
            let h = self.basis(&nu)?;
            let vals = grid.iter().map(|x| h.eval(x)).collect::<Result<Vec<_>>>()?;
            cols.push((vals, self.norm_b(&nu)?));
        }
        let index = |x: &Composition| grid.iter().position(|p| p == x).unwrap();
        KernelTable::build(self.level, Some(n), grid.clone(), true, |x, y| {
            let (i, j) = (index(x), index(y));
            Ok(cols.iter().map(|(v, b)| &v[i] * &v[j] / b).sum())
        })
    }

    /// Prefactor `(-N)_n (lambda)_N (lambda)_n (|kappa|+d+2n) / (n! (lambda)_{N+n} (|kappa|+d+n))`.
    fn closed_prefactor(&self, n: u32) -> Rational {
        let lam = self.lambda();
        let nl = self.level;
        pochhammer(&-int(nl as i64), n)
            * pochhammer(&lam, nl)
            * pochhammer(&lam, n)
            * degree_ratio(&self.kd(), n)
            / (factorial(n) * pochhammer(&lam, nl + n))
    }

    fn closed_from_e(&self, n: u32, e: &[Rational]) -> Rational {
        let kd = self.kd();
        let mn = -int(self.level as i64);
        let mut s = Rational::zero();
        for k in 0..=n {
            let c = pochhammer(&-int(n as i64), k) * pochhammer(&(&kd + int(n as i64)), k)
                / pow(&pochhammer(&mn, k), 2);
            s += c * &e[k as usize];
        }
        self.closed_prefactor(n) * s
    }

    /// Closed form `prefactor * sum_k (-n)_k (n+|kappa|+d)_k / ((-N)_k)^2 E_k(x, y)`.
    pub fn kernel_closed(&self, n: u32, x: &[u32], y: &[u32]) -> Result<Rational> {
        if n > self.level {
            return Err(Error::DegreeExceedsLevel { degree: n, level: self.level });
        }
        let e = self.cal_e_all(x, y)?;
        Ok(self.closed_from_e(n, &e))
    }

    /// Closed-form kernels for every degree `0..=N` at one pair of points.
    pub fn kernel_closed_all(&self, x: &[u32], y: &[u32]) -> Result<Vec<Rational>> {
        let e = self.cal_e_all(x, y)?;
        Ok((0..=self.level).map(|n| self.closed_from_e(n, &e)).collect())
    }

    pub fn kernel_closed_table(&self, n: u32) -> Result<KernelTable> {
        KernelTable::build(self.level, Some(n), self.grid(), true, |x, y| self.kernel_closed(n, x, y))
    }

    /// `C_n(kappa, N)` of the double-sum representation.
    fn intermediate_constant(&self, n: u32) -> Rational {
        let lam = self.lambda();
        let kd = self.kd();
        let half = frac(1, 2);
        let nl = self.level;
        pochhammer(&lam, nl)
            * pochhammer(&lam, n)
            * pochhammer(&(&kd + &half), n)
            * degree_ratio(&kd, n)
            * pochhammer(&-int(nl as i64), n)
            * sign(n)
            / (pochhammer(&lam, nl + n) * pochhammer(&half, n) * factorial(n) * factorial(nl))
    }

    /// Weights `c_j` with `kernel_intermediate = sum_j c_j E_j`, from
    /// `C_n sum_m (-1)^m binom(N,m) Q_n(m; |kappa|+d-1/2, -1/2, N)
    ///   sum_{k<=m} (1/2)_{N-k} (-m)_k / binom(N,k) E_{N-k}`.
    pub fn intermediate_coefficients(&self, n: u32) -> Result<Vec<Rational>> {
        if n > self.level {
            return Err(Error::DegreeExceedsLevel { degree: n, level: self.level });
        }
        let nl = self.level;
        let half = frac(1, 2);
        let a = self.kd() - &half;
        let b = -half.clone();
        let nn = int(nl as i64);
        let cn = self.intermediate_constant(n);
        let mut out = vec![Rational::zero(); nl as usize + 1];
        for m in 0..=nl {
            let q = hahn_q(n, &a, &b, &nn, &int(m as i64))?;
            if q.is_zero() {
                continue;
            }
            let outer = &cn * sign(m) * binomial(nl, m) * q;
            for k in 0..=m {
                out[(nl - k) as usize] +=
                    &outer * pochhammer(&half, nl - k) * neg_pochhammer(m, k) / binomial(nl, k);
            }
        }
        Ok(out)
    }

    /// The double-sum representation of the kernel through `Q_n(m; |kappa|+d-1/2, -1/2, N)`.
    pub fn kernel_intermediate(&self, n: u32, x: &[u32], y: &[u32]) -> Result<Rational> {
        let c = self.intermediate_coefficients(n)?;
        let e = self.cal_e_all(x, y)?;
        Ok(c.iter().zip(&e).map(|(c, e)| c * e).sum())
    }

    pub fn kernel_intermediate_table(&self, n: u32) -> Result<KernelTable> {
        let c = self.intermediate_coefficients(n)?;
        KernelTable::build(self.level, Some(n), self.grid(), true, |x, y| {
            let e = self.cal_e_all(x, y)?;
            Ok(c.iter().zip(&e).map(|(c, e)| c * e).sum())
        })
    }

    /// Kernel with the second point at the origin: the closed prefactor times
    /// `Q_n(N - |x'|; kappa_{d+1}, |kappa| - kappa_{d+1} + d - 1, N)`.
    pub fn kernel_closed_at_origin(&self, n: u32, x: &[u32]) -> Result<Rational> {
        self.check_point(x)?;
        if n > self.level {
            return Err(Error::DegreeExceedsLevel { degree: n, level: self.level });
        }
        let kappa = self.kappa.entries();
        let last = &kappa[self.d()];
        let head: u32 = x[..self.d()].iter().sum();
        let b = self.kappa.total() - last + int(self.d() as i64 - 1);
        let q = hahn_q(n, last, &b, &int(self.level as i64), &int((self.level - head) as i64))?;
        Ok(self.closed_prefactor(n) * q)
    }

    /// `sum_n P_n(x, y) r^n` for `0 <= r <= 1`.
    pub fn poisson(&self, r: &Rational, x: &[u32], y: &[u32]) -> Result<Rational> {
        Ok(self.poisson_mesh(std::slice::from_ref(r), x, y)?.swap_remove(0))
    }

    /// The Poisson kernel at each `r` in `rs`, sharing one kernel evaluation.
    pub fn poisson_mesh(&self, rs: &[Rational], x: &[u32], y: &[u32]) -> Result<Vec<Rational>> {
        for r in rs {
            check_unit_interval(r)?;
        }
        let kernels = self.kernel_closed_all(x, y)?;
        Ok(rs
            .iter()
            .map(|r| {
                let mut s = Rational::zero();
                let mut rn = Rational::one();
                for k in &kernels {
                    s += k * &rn;
                    rn *= r;
                }
                s
            })
            .collect())
    }

    /// `(lambda)_N / N! E_N(x, y)`, the value of the Poisson kernel at `r = 1`.
    pub fn poisson_at_one(&self, x: &[u32], y: &[u32]) -> Result<Rational> {
        Ok(pochhammer(&self.lambda(), self.level) / factorial(self.level) * self.cal_e(self.level, x, y)?)
    }

    /// `E_kappa(x, y) = (kappa+1)_{x+y} / ((kappa+1)_x (kappa+1)_y)` for any
    /// pair of `(d+1)`-vectors.
    pub fn e_kernel(&self, x: &[u32], y: &[u32]) -> Result<Rational> {
        let k1 = self.kappa.shifted();
        if x.len() != k1.len() || y.len() != k1.len() {
            return Err(Error::LengthMismatch { expected: k1.len(), found: x.len().min(y.len()) });
        }
        let mut acc = Rational::one();
        for i in 0..k1.len() {
            acc *= pochhammer(&k1[i], x[i] + y[i]) / (pochhammer(&k1[i], x[i]) * pochhammer(&k1[i], y[i]));
        }
        Ok(acc)
    }

    /// `E_kappa(x, y)` and its expansion
    /// `(lambda)_{2N}/(lambda)_N sum_n (-1)^n (-N)_n / (lambda)_{N+n} P_n(x, y)`.
    pub fn e_kernel_expansion(&self, x: &[u32], y: &[u32]) -> Result<(Rational, Rational)> {
        let lhs = self.e_kernel(x, y)?;
        let lam = self.lambda();
        let nl = self.level;
        let kernels = self.kernel_closed_all(x, y)?;
        let mut s = Rational::zero();
        for (n, p) in kernels.iter().enumerate() {
            let n = n as u32;
            s += sign(n) * pochhammer(&-int(nl as i64), n) / pochhammer(&lam, nl + n) * p;
        }
        let rhs = pochhammer(&lam, 2 * nl) / pochhammer(&lam, nl) * s;
        Ok((lhs, rhs))
    }

    /// Both sides of
    /// `sum_{|beta|=N} (kappa+1)_{alpha+beta} / (beta! (kappa+1)_alpha) H_nu(beta; N)
    ///   = (-M)_n (lambda)_{N+M} / ((-1)^n N! (lambda)_{n+M}) H_nu(alpha; M)`
    /// for `alpha` on level `M`.
    pub fn shifted_moment_sides(&self, nu: &[u32], alpha: &[u32]) -> Result<(Rational, Rational)> {
        let n = self.check_degree(nu)?;
        let m: u32 = alpha.iter().sum();
        let other = self.at_level(m);
        other.check_degree(nu)?;
        let k1 = self.kappa.shifted();
        let mut lhs = Rational::zero();
        for beta in self.grid() {
            let mut ratio = Rational::one();
            for i in 0..k1.len() {
                ratio *= pochhammer(&(&k1[i] + int(alpha[i] as i64)), beta[i]);
            }
            lhs += ratio / multi_factorial(&beta) * self.hahn_h(nu, &beta)?;
        }
        let lam = self.lambda();
        let nl = self.level;
        let rhs = pochhammer(&-int(m as i64), n) * pochhammer(&lam, nl + m)
            / (sign(n) * factorial(nl) * pochhammer(&lam, n + m))
            * other.hahn_h(nu, alpha)?;
        Ok((lhs, rhs))
    }

    /// Both sides of `<E_kappa(alpha, .), H_nu> = (-M)_n (lambda)_{N+M} /
    /// ((-1)^n (lambda)_N (lambda)_{n+M}) H_nu(alpha; M)`.
    pub fn e_kernel_projection_sides(&self, nu: &[u32], alpha: &[u32]) -> Result<(Rational, Rational)> {
        let n = self.check_degree(nu)?;
        let m: u32 = alpha.iter().sum();
        let other = self.at_level(m);
        other.check_degree(nu)?;
        let lhs = self.inner_product(|b| self.e_kernel(alpha, b), |b| self.hahn_h(nu, b))?;
        let lam = self.lambda();
        let nl = self.level;
        let rhs = pochhammer(&-int(m as i64), n) * pochhammer(&lam, nl + m)
            / (sign(n) * pochhammer(&lam, nl) * pochhammer(&lam, n + m))
            * other.hahn_h(nu, alpha)?;
        Ok((lhs, rhs))
    }

    /// `E_N(x, y)` and `N!/(lambda)_N sum_n P_n(x, y)`.
    pub fn top_e_expansion(&self, x: &[u32], y: &[u32]) -> Result<(Rational, Rational)> {
        let lhs = self.cal_e(self.level, x, y)?;
        let sum: Rational = self.kernel_closed_all(x, y)?.into_iter().sum();
        Ok((lhs, self.normalizer() * sum))
    }
}

pub(crate) fn check_unit_interval(r: &Rational) -> Result<()> {
    if *r < Rational::zero() || *r > Rational::one() {
        return Err(Error::Domain(format!("r = {r} lies outside [0, 1]")));
    }
    Ok(())
}
