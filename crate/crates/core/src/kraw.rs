//! Krawtchouk polynomials of several variables on `Z_N^{d+1}`.
//!
//! The weight is `rho^x / x!` with `rho = (rho_1, ..., rho_d, 1 - |rho|)` and
//! the inner product carries the factor `N!`, so `<1, 1> = 1` by the
//! multinomial theorem. The family is the `t -> infinity` limit of the Hahn
//! family with `kappa = t rho`; [`LimitReport`] measures that convergence at
//! finite `t` in exact arithmetic.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, multi_factorial, neg_pochhammer, pochhammer, pow, sign, Rational};
use crate::hahn::{check_unit_interval, HahnFamily};
use crate::lattice::{bounded_compositions, enumerate_compositions, multi_indices_of_degree, Composition};
use crate::params::Rho;
use crate::table::KernelTable;
use crate::univariate::{kraw_k, scaled_kraw_k};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawFamily {
    rho: Rho,
    level: u32,
}

/// `a^e` for a possibly negative exponent.
fn signed_pow(a: &Rational, e: i64) -> Rational {
    if e >= 0 {
        pow(a, e as u32)
    } else {
        Rational::one() / pow(a, (-e) as u32)
    }
}

/// Exact errors of a quantity at an increasing schedule of `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub schedule: Vec<Rational>,
    pub errors: Vec<Rational>,
}

impl LimitReport {
    /// Every error is exactly zero.
    pub fn is_exact(&self) -> bool {
        self.errors.iter().all(Zero::is_zero)
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }

    /// Ratios of consecutive errors; `None` where the earlier error is zero.
    pub fn ratios(&self) -> Vec<Option<Rational>> {
        self.errors.windows(2).map(|w| if w[0].is_zero() { None } else { Some(&w[1] / &w[0]) }).collect()
    }

    /// Exact, or strictly decreasing with every consecutive ratio in `[lo, hi]`.
    pub fn converges_at_rate(&self, lo: &Rational, hi: &Rational) -> bool {
        if self.is_exact() {
            return true;
        }
        self.is_strictly_decreasing()
            && self.ratios().iter().all(|r| matches!(r, Some(r) if r >= lo && r <= hi))
    }

    /// The largest error, as a float, for reporting.
    pub fn max_error(&self) -> f64 {
        self.errors.iter().map(crate::exact::to_f64).fold(0.0, f64::max)
    }
}

impl KrawFamily {
    pub fn new(rho: Rho, level: u32) -> Self {
        KrawFamily { rho, level }
    }

    pub fn rho(&self) -> &Rho {
        &self.rho
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn d(&self) -> usize {
        self.rho.d()
    }

    pub fn at_level(&self, level: u32) -> KrawFamily {
        KrawFamily { rho: self.rho.clone(), level }
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

    /// `1 - |rho_j|` for `j = 0..=d`.
    fn tails(&self) -> Vec<Rational> {
        let mut out = vec![Rational::one()];
        let mut acc = Rational::one();
        for r in self.rho.entries() {
            acc -= r;
            out.push(acc.clone());
        }
        out
    }

    /// `rho^x / x!`.
    pub fn weight(&self, x: &[u32]) -> Result<Rational> {
        self.check_point(x)?;
        let h = self.rho.homogeneous();
        Ok(h.iter().zip(x).map(|(r, &xi)| pow(r, xi) / factorial(xi)).product())
    }

    /// `N!`, the reciprocal of the total weight.
    pub fn normalizer(&self) -> Rational {
        factorial(self.level)
    }

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

    /// `K_nu(x; rho, N)` from the product of one-variable Krawtchouk polynomials
    /// with parameters `rho_j / (1 - |rho_{j-1}|)` and lengths
    /// `N - |x_{j-1}| - |nu^{j+1}|`.
    pub fn kraw_k(&self, nu: &[u32], x: &[u32]) -> Result<Rational> {
        let n = self.check_degree(nu)?;
        self.check_point(x)?;
        let rho = self.rho.entries();
        let tails = self.tails();
        let mut acc = sign(n) / pochhammer(&-int(self.level as i64), n);
        let mut head = 0i64;
        for j in 0..nu.len() {
            if nu[j] > 0 {
                let tail_nu: u32 = nu[j + 1..].iter().sum();
                let m = int(self.level as i64 - head - tail_nu as i64);
                let p = &rho[j] / &tails[j];
                acc *= pow(&rho[j], nu[j]) / pow(&tails[j + 1], nu[j]);
                acc *= scaled_kraw_k(nu[j], &p, &m, &int(x[j] as i64))?;
                if acc.is_zero() {
                    return Ok(acc);
                }
            }
            head += x[j] as i64;
        }
        Ok(acc)
    }

    /// `K_nu` at the origin `(0, ..., 0, N)`.
    pub fn kraw_k_at_origin(&self, nu: &[u32]) -> Result<Rational> {
        let n = self.check_degree(nu)?;
        let tails = self.tails();
        let mut acc = sign(n);
        for (j, r) in self.rho.entries().iter().enumerate() {
            acc *= pow(r, nu[j]) / pow(&tails[j + 1], nu[j]);
        }
        Ok(acc)
    }

    /// `C_nu = <K_nu, K_nu>`.
    pub fn norm_c(&self, nu: &[u32]) -> Result<Rational> {
        let n = self.check_degree(nu)?;
        let tails = self.tails();
        let mut acc = sign(n) / pochhammer(&-int(self.level as i64), n);
        for (j, r) in self.rho.entries().iter().enumerate() {
            let next = nu.get(j + 1).copied().unwrap_or(0);
            acc *= factorial(nu[j]) * pow(r, nu[j]) / signed_pow(&tails[j + 1], nu[j] as i64 - next as i64);
        }
        Ok(acc)
    }

    /// `n!/(-N)_n sum_{|alpha|=n} K_nu(alpha; rho, n) (-x)_alpha / alpha!`.
    pub fn k_monic_expansion(&self, nu: &[u32], x: &[u32]) -> Result<Rational> {
        let n = self.check_degree(nu)?;
        self.check_point(x)?;
        let small = self.at_level(n);
        let mut s = Rational::zero();
        for alpha in bounded_compositions(x, n) {
            let shifted: Rational = x.iter().zip(&alpha).map(|(&xi, &ai)| neg_pochhammer(xi, ai)).product();
            s += small.kraw_k(nu, &alpha)? * shifted / multi_factorial(&alpha);
        }
        Ok(factorial(n) / pochhammer(&-int(self.level as i64), n) * s)
    }

    /// `F_k(x, y)` for `k = 0, ..., N`.
    pub fn cal_f_all(&self, x: &[u32], y: &[u32]) -> Result<Vec<Rational>> {
        self.check_point(x)?;
        self.check_point(y)?;
        let h = self.rho.homogeneous();
        let bound: Vec<u32> = x.iter().zip(y).map(|(a, b)| *a.min(b)).collect();
        let factors: Vec<Vec<Rational>> = (0..bound.len())
            .map(|i| {
                (0..=bound[i])
                    .map(|g| {
                        neg_pochhammer(x[i], g) * neg_pochhammer(y[i], g) / (pow(&h[i], g) * factorial(g))
                    })
                    .collect()
            })
            .collect();
        let mut out = vec![Rational::zero(); self.level as usize + 1];
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

    pub fn cal_f(&self, k: u32, x: &[u32], y: &[u32]) -> Result<Rational> {
        if k > self.level {
            return Err(Error::DegreeExceedsLevel { degree: k, level: self.level });
        }
        Ok(self.cal_f_all(x, y)?.swap_remove(k as usize))
    }

    /// `sum_{|nu|=n} K_nu(x) K_nu(y) / C_nu`.
    pub fn kernel_sum(&self, n: u32, x: &[u32], y: &[u32]) -> Result<Rational> {
        let mut s = Rational::zero();
        for nu in multi_indices_of_degree(self.d(), n) {
            s += self.kraw_k(&nu, x)? * self.kraw_k(&nu, y)? / self.norm_c(&nu)?;
        }
        Ok(s)
    }

    pub fn kernel_sum_table(&self, n: u32) -> Result<KernelTable> {
        let grid = self.grid();
        let mut cols: Vec<(Vec<Rational>, Rational)> = Vec::new();
        for nu in multi_indices_of_degree(self.d(), n) {
            let vals = grid.iter().map(|x| self.kraw_k(&nu, x)).collect::<Result<Vec<_>>>()?;
            cols.push((vals, self.norm_c(&nu)?));
        }
        let index = |x: &Composition| grid.iter().position(|p| p == x).unwrap();
        KernelTable::build(self.level, Some(n), grid.clone(), true, |x, y| {
            let (i, j) = (index(x), index(y));
            Ok(cols.iter().map(|(v, c)| &v[i] * &v[j] / c).sum())
        })
    }

    fn closed_from_f(&self, n: u32, f: &[Rational]) -> Rational {
        let mn = -int(self.level as i64);
        let mut s = Rational::zero();
        for k in 0..=n {
            s += pochhammer(&-int(n as i64), k) / pow(&pochhammer(&mn, k), 2) * &f[k as usize];
        }
        pochhammer(&mn, n) / factorial(n) * s
    }

    /// `(-N)_n/n! sum_k (-n)_k / ((-N)_k)^2 F_k(x, y)`.
    pub fn kernel_closed(&self, n: u32, x: &[u32], y: &[u32]) -> Result<Rational> {
        if n > self.level {
            return Err(Error::DegreeExceedsLevel { degree: n, level: self.level });
        }
        Ok(self.closed_from_f(n, &self.cal_f_all(x, y)?))
    }

    pub fn kernel_closed_all(&self, x: &[u32], y: &[u32]) -> Result<Vec<Rational>> {
        let f = self.cal_f_all(x, y)?;
        Ok((0..=self.level).map(|n| self.closed_from_f(n, &f)).collect())
    }

    pub fn kernel_closed_table(&self, n: u32) -> Result<KernelTable> {
        KernelTable::build(self.level, Some(n), self.grid(), true, |x, y| self.kernel_closed(n, x, y))
    }

    /// `(-N)_n/n! K_n(N - |x'|; 1 - |rho|, N)`, the kernel with `y` at the origin.
    pub fn kernel_closed_at_origin(&self, n: u32, x: &[u32]) -> Result<Rational> {
        self.check_point(x)?;
        if n > self.level {
            return Err(Error::DegreeExceedsLevel { degree: n, level: self.level });
        }
        let head: u32 = x[..self.d()].iter().sum();
        let nn = int(self.level as i64);
        let q = Rational::one() - self.rho.total();
        Ok(pochhammer(&-nn.clone(), n) / factorial(n) * kraw_k(n, &q, &nn, &int((self.level - head) as i64))?)
    }

    /// Summands `(-1)^k/(-N)_k F_k r^k (1-r)^{N-k}` of the closed Poisson kernel.
    pub fn poisson_terms(&self, r: &Rational, x: &[u32], y: &[u32]) -> Result<Vec<Rational>> {
        Ok(self.poisson_terms_mesh(std::slice::from_ref(r), x, y)?.swap_remove(0))
    }

    /// [`Self::poisson_terms`] at each `r` in `rs`, sharing one `F_k` evaluation.
    pub fn poisson_terms_mesh(&self, rs: &[Rational], x: &[u32], y: &[u32]) -> Result<Vec<Vec<Rational>>> {
        for r in rs {
            check_unit_interval(r)?;
        }
        let mn = -int(self.level as i64);
        let scaled: Vec<Rational> = self
            .cal_f_all(x, y)?
            .into_iter()
            .enumerate()
            .map(|(k, f)| sign(k as u32) / pochhammer(&mn, k as u32) * f)
            .collect();
        Ok(rs
            .iter()
            .map(|r| {
                let one_minus = Rational::one() - r;
                (0..=self.level)
                    .map(|k| &scaled[k as usize] * pow(r, k) * pow(&one_minus, self.level - k))
                    .collect()
            })
            .collect())
    }

    /// Closed-form Poisson kernel.
    pub fn poisson(&self, r: &Rational, x: &[u32], y: &[u32]) -> Result<Rational> {
        Ok(self.poisson_terms(r, x, y)?.into_iter().sum())
    }

    /// `sum_n P_n(x, y) r^n` from the kernels themselves.
    pub fn poisson_series(&self, r: &Rational, x: &[u32], y: &[u32]) -> Result<Rational> {
        check_unit_interval(r)?;
        let mut s = Rational::zero();
        let mut rn = Rational::one();
        for k in self.kernel_closed_all(x, y)? {
            s += k * &rn;
            rn *= r;
        }
        Ok(s)
    }

    /// `(1-r)^{|x'|} (1 + r|rho|/(1-|rho|))^{N-|x'|}`, the Poisson kernel with `y` at the origin.
    pub fn poisson_at_origin(&self, r: &Rational, x: &[u32]) -> Result<Rational> {
        check_unit_interval(r)?;
        self.check_point(x)?;
        let head: u32 = x[..self.d()].iter().sum();
        let s = self.rho.total();
        let one = Rational::one();
        Ok(pow(&(&one - r), head) * pow(&(&one + r * &s / (&one - &s)), self.level - head))
    }

    /// `F_N(x, y)/N!` and `sum_n P_n(x, y)`.
    pub fn top_f_expansion(&self, x: &[u32], y: &[u32]) -> Result<(Rational, Rational)> {
        let lhs = self.cal_f(self.level, x, y)? / factorial(self.level);
        let rhs: Rational = self.kernel_closed_all(x, y)?.into_iter().sum();
        Ok((lhs, rhs))
    }

    /// The Hahn family with `kappa = t rho`.
    pub fn hahn_at(&self, t: &Rational) -> Result<HahnFamily> {
        HahnFamily::new(self.rho.scaled_kappa(t)?, self.level)
    }

    fn limit<F>(&self, schedule: &[Rational], target: &Rational, f: F) -> Result<LimitReport>
    where
        F: Fn(&HahnFamily, &Rational) -> Result<Rational>,
    {
        let mut errors = Vec::with_capacity(schedule.len());
        for t in schedule {
            let fam = self.hahn_at(t)?;
            errors.push((f(&fam, t)? - target).abs());
        }
        Ok(LimitReport { schedule: schedule.to_vec(), errors })
    }

    /// `|H_nu(x; t rho, N) - K_nu(x; rho, N)|` along `schedule`.
    pub fn hahn_to_kraw_limit(&self, nu: &[u32], x: &[u32], schedule: &[Rational]) -> Result<LimitReport> {
        let target = self.kraw_k(nu, x)?;
        self.limit(schedule, &target, |fam, _| fam.hahn_h(nu, x))
    }

    /// `|(t+a)_k E_k(x, y; t rho) - F_k(x, y)|` along `schedule`.
    pub fn e_to_f_limit(
        &self,
        k: u32,
        a: &Rational,
        x: &[u32],
        y: &[u32],
        schedule: &[Rational],
    ) -> Result<LimitReport> {
        let target = self.cal_f(k, x, y)?;
        self.limit(schedule, &target, |fam, t| Ok(pochhammer(&(t + a), k) * fam.cal_e(k, x, y)?))
    }

    /// `|P_n(H_{t rho}; x, y) - P_n(K_rho; x, y)|` along `schedule`.
    pub fn kernel_limit(&self, n: u32, x: &[u32], y: &[u32], schedule: &[Rational]) -> Result<LimitReport> {
        let target = self.kernel_closed(n, x, y)?;
        self.limit(schedule, &target, |fam, _| fam.kernel_closed(n, x, y))
    }
}

/// The decade schedule `10^2, 10^3, 10^4`.
pub fn decade_schedule() -> Vec<Rational> {
    vec![int(100), int(1000), int(10000)]
}

/// Checks the one-variable generating function
/// `(1 - (1-rho)/rho t)^x (1+t)^{N-x} = sum_n binom(N,n) K_n(x; rho, N) t^n`
/// at `t = r rho/(1-rho)` for every `x` in `0..=N`.
pub fn verify_d1_generating(rho: &Rational, level: u32, r: &Rational) -> Result<bool> {
    let t = r * rho / (Rational::one() - rho);
    for x in 0..=level {
        let lhs = crate::univariate::kraw_generating_closed(rho, level, x, &t);
        if lhs != crate::univariate::kraw_generating_sum(rho, level, x, &t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use crate::lattice::multi_indices_up_to;

    fn fam(r: &str, level: u32) -> KrawFamily {
        KrawFamily::new(Rho::parse(r).unwrap(), level)
    }

    #[test]
    fn weight_examples() {
        let f = fam("1/2", 2);
        assert_eq!(f.weight(&[1, 1]).unwrap(), frac(1, 4));
        assert_eq!(f.weight(&[2, 0]).unwrap(), frac(1, 8));
        let g = fam("1/5,1/3", 3);
        assert_eq!(g.inner_product(|_| Ok(int(1)), |_| Ok(int(1))).unwrap(), int(1));
    }

    #[test]
    fn kraw_examples() {
        let f = fam("1/5,1/3", 4);
        assert_eq!(f.kraw_k(&[0, 0], &[1, 1, 2]).unwrap(), int(1));
        for nu in multi_indices_up_to(2, 4) {
            assert_eq!(f.kraw_k(&nu, &[0, 0, 4]).unwrap(), f.kraw_k_at_origin(&nu).unwrap());
        }
        assert_eq!(fam("1/2", 2).kraw_k(&[1], &[0, 2]).unwrap(), int(-1));
        // one variable: (-1)^n rho^n/(1-rho)^n K_n(x_1; rho, N)
        let p = frac(2, 7);
        let g = KrawFamily::new(Rho::new(vec![p.clone()]).unwrap(), 5);
        for n in 0..=5u32 {
            for x1 in 0..=5u32 {
                let expected = sign(n) * pow(&p, n) / pow(&(int(1) - &p), n)
                    * kraw_k(n, &p, &int(5), &int(x1 as i64)).unwrap();
                assert_eq!(g.kraw_k(&[n], &[x1, 5 - x1]).unwrap(), expected);
            }
        }
    }

    #[test]
    fn orthogonality() {
        for r in ["1/2", "1/5,1/3", "1/4,1/4,1/3"] {
            for level in 0..=3 {
                let f = fam(r, level);
                let nus = multi_indices_up_to(f.d(), level);
                for nu in &nus {
                    for mu in &nus {
                        let ip = f.inner_product(|x| f.kraw_k(nu, x), |x| f.kraw_k(mu, x)).unwrap();
                        if nu == mu {
                            let c = f.norm_c(nu).unwrap();
                            assert!(c > Rational::zero());
                            assert_eq!(ip, c, "rho={r} N={level} nu={nu}");
                        } else {
                            assert_eq!(ip, int(0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monic_expansion_matches() {
        let f = fam("1/5,1/3", 3);
        for nu in multi_indices_up_to(2, 3) {
            for x in f.grid() {
                assert_eq!(f.k_monic_expansion(&nu, &x).unwrap(), f.kraw_k(&nu, &x).unwrap());
            }
        }
    }

    #[test]
    fn kernels_and_poisson() {
        let f = fam("1/5,1/3", 3);
        for n in 0..=3 {
            assert_eq!(f.kernel_sum_table(n).unwrap(), f.kernel_closed_table(n).unwrap());
        }
        let o = Composition::origin(3, 3);
        for x in f.grid() {
            assert_eq!(f.cal_f(0, &x, &o).unwrap(), int(1));
            let head = x.head_sum() as i64;
            for k in 0..=3u32 {
                let expected = pochhammer(&int(-3), k) * pochhammer(&int(-3 + head), k)
                    / (pow(&(int(1) - f.rho().total()), k) * factorial(k));
                assert_eq!(f.cal_f(k, &x, &o).unwrap(), expected);
                assert_eq!(f.kernel_closed(k, &x, &o).unwrap(), f.kernel_closed_at_origin(k, &x).unwrap());
            }
            for r in [int(0), frac(1, 3), int(1)] {
                assert_eq!(f.poisson(&r, &x, &o).unwrap(), f.poisson_at_origin(&r, &x).unwrap());
            }
            for y in f.grid() {
                let r = frac(3, 8);
                assert_eq!(f.poisson(&r, &x, &y).unwrap(), f.poisson_series(&r, &x, &y).unwrap());
                assert!(f.poisson_terms(&r, &x, &y).unwrap().iter().all(|t| *t >= Rational::zero()));
                let (l, rr) = f.top_f_expansion(&x, &y).unwrap();
                assert_eq!(l, rr);
            }
        }
        assert_eq!(f.poisson(&int(0), &[1, 1, 1], &[0, 3, 0]).unwrap(), int(1));
        assert!(f.poisson(&frac(5, 4), &[1, 1, 1], &[0, 3, 0]).is_err());
    }

    #[test]
    fn limits() {
        let f = fam("1/2", 2);
        let s = decade_schedule();
        let (lo, hi) = (frac(1, 15), frac(1, 5));
        assert!(f.hahn_to_kraw_limit(&[0], &[1, 1], &s).unwrap().is_exact());
        let rep = f.hahn_to_kraw_limit(&[1], &[1, 1], &s).unwrap();
        assert!(rep.converges_at_rate(&lo, &hi), "{rep:?}");
        let rep = f.e_to_f_limit(2, &int(0), &[2, 0], &[1, 1], &s).unwrap();
        assert!(rep.converges_at_rate(&lo, &hi), "{rep:?}");
        let rep = f.kernel_limit(1, &[2, 0], &[1, 1], &s).unwrap();
        assert!(rep.converges_at_rate(&lo, &hi), "{rep:?}");
    }

    #[test]
    fn generating_function_d1() {
        assert!(verify_d1_generating(&frac(1, 3), 3, &frac(1, 2)).unwrap());
        assert!(verify_d1_generating(&frac(1, 3), 3, &int(0)).unwrap());
        assert!(verify_d1_generating(&frac(3, 4), 4, &int(1)).unwrap());
    }
}
