//! Reference computations written directly from the defining formulas.
//! Nothing here calls into the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse(s: &str) -> Q {
    match s.split_once('/') {
        Some((n, d)) => qf(n.trim().parse().unwrap(), d.trim().parse().unwrap()),
        None => q(s.trim().parse().unwrap()),
    }
}

pub fn f64_of(v: &Q) -> f64 {
    v.numer().to_f64().unwrap() / v.denom().to_f64().unwrap()
}

pub fn poch(a: &Q, k: u32) -> Q {
    let mut p = Q::one();
    for i in 0..k {
        p *= a + q(i as i64);
    }
    p
}

pub fn fact(k: u32) -> Q {
    poch(&Q::one(), k)
}

pub fn powq(a: &Q, k: u32) -> Q {
    let mut p = Q::one();
    for _ in 0..k {
        p *= a;
    }
    p
}

pub fn sgn(k: u32) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `(-x)_k` for a nonnegative integer `x`.
pub fn neg_poch(x: u32, k: u32) -> Q {
    poch(&-q(x as i64), k)
}

pub fn multi_fact(g: &[u32]) -> Q {
    g.iter().map(|&v| fact(v)).product()
}

/// `prod (kappa_i + 1)_{g_i}`.
pub fn shifted_poch(kappa: &[Q], g: &[u32]) -> Q {
    kappa.iter().zip(g).map(|(k, &v)| poch(&(k + Q::one()), v)).product()
}

/// All vectors of `len` nonnegative integers with sum `total`, lexicographic.
pub fn comps(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if len == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for rest in comps(len - 1, total - first) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// All `len`-vectors with sum at most `n`, grouped by sum.
pub fn graded(len: usize, n: u32) -> Vec<Vec<u32>> {
    (0..=n).flat_map(|m| comps(len, m)).collect()
}

pub fn deg(v: &[u32]) -> u32 {
    v.iter().sum()
}

pub fn lambda(kappa: &[Q]) -> Q {
    let d = kappa.len() - 1;
    kappa.iter().sum::<Q>() + q(d as i64 + 1)
}

/// `a_j = |kappa^{j+1}| + 2|nu^{j+1}| + d - j` with `j` 1-based.
pub fn a_j(kappa: &[Q], nu: &[u32], j: usize) -> Q {
    let d = nu.len();
    let ks: Q = kappa[j..].iter().sum();
    let ns: u32 = nu[j..].iter().sum();
    ks + q(2 * ns as i64) + q(d as i64 - j as i64)
}

/// Homogeneous polynomial in `nvars` variables keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Q::one())
    }

    pub fn monomial(e: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, c);
        p
    }

    /// `y_from + ... + y_{nvars-1}` (0-based).
    pub fn tail(nvars: usize, from: usize) -> Self {
        let mut p = Self::zero(nvars);
        for i in from..nvars {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_term(e, Q::one());
        }
        p
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Q) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn coeff(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, pt: &[Q]) -> Q {
        self.terms.iter().map(|(e, c)| c * e.iter().zip(pt).map(|(&k, v)| powq(v, k)).product::<Q>()).sum()
    }

    /// Multiplies every term of degree `m` by `(y_1 + ... + y_nvars)^(degree - m)`.
    pub fn lift(&self, degree: u32) -> Poly {
        let s = Poly::tail(self.nvars, 0);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let m = deg(e);
            assert!(m <= degree, "term degree {m} exceeds {degree}");
            out.add_scaled(&Poly::monomial(e.clone(), c.clone()).mul(&s.pow(degree - m)), &Q::one());
        }
        out
    }

    pub fn from_terms<'a, I>(nvars: usize, it: I) -> Poly
    where
        I: IntoIterator<Item = (&'a [u32], &'a Q)>,
    {
        let mut p = Poly::zero(nvars);
        for (e, c) in it {
            p.add_term(e.to_vec(), c.clone());
        }
        p
    }
}

/// Expansions of `prod_j T_j^{e_j}` with `T_j = y_j + ... + y_{d+1}`.
#[derive(Default)]
pub struct TailProducts {
    cache: HashMap<Vec<u32>, Poly>,
}

impl TailProducts {
    pub fn get(&mut self, e: &[u32]) -> &Poly {
        if !self.cache.contains_key(e) {
            let nvars = e.len();
            let mut p = Poly::one(nvars);
            for (j, &k) in e.iter().enumerate() {
                p = p.mul(&Poly::tail(nvars, j).pow(k));
            }
            self.cache.insert(e.to_vec(), p);
        }
        &self.cache[e]
    }
}

/// `|y|^N P_nu(y'/|y|)` expanded directly: each normalized Jacobi factor is
/// its terminating series in `T_{j+1}/T_j`, and the telescoping powers of the
/// tails are collected before expansion.
pub fn generating(kappa: &[Q], nu: &[u32], level: u32, tails: &mut TailProducts) -> Poly {
    let d = nu.len();
    let n = deg(nu);
    assert!(n <= level);
    let m: Vec<u32> = (0..d).map(|j| nu[j + 1..].iter().sum()).collect();
    let series: Vec<Vec<Q>> = (0..d)
        .map(|j| {
            let a = a_j(kappa, nu, j + 1);
            let b = &kappa[j];
            let nj = nu[j];
            let c = q(nj as i64) + &a + b + Q::one();
            (0..=nj)
                .map(|k| poch(&-q(nj as i64), k) * poch(&c, k) / (poch(&(&a + Q::one()), k) * fact(k)))
                .collect()
        })
        .collect();
    let mut out = Poly::zero(d + 1);
    let mut ks = vec![0u32; d];
    loop {
        let coef: Q = (0..d).map(|j| series[j][ks[j] as usize].clone()).product();
        let mut e = vec![0u32; d + 1];
        e[0] = level - ks[0] - m[0];
        for j in 1..d {
            e[j] = ks[j - 1] + m[j - 1] - ks[j] - m[j];
        }
        e[d] = ks[d - 1] + m[d - 1];
        out.add_scaled(tails.get(&e), &coef);
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            if ks[i] < nu[i] {
                ks[i] += 1;
                break;
            }
            ks[i] = 0;
            i += 1;
        }
    }
}

/// Hahn polynomial values read off the generating polynomial.
pub fn hahn_from_generating(gen: &Poly, alpha: &[u32], level: u32) -> Q {
    gen.coeff(alpha) * multi_fact(alpha) / fact(level)
}

/// Hahn norm as printed, with `(c)_{2n}/(c)_n` kept as a ratio when defined.
pub fn hahn_norm(kappa: &[Q], nu: &[u32], level: u32) -> Q {
    let n = deg(nu);
    let lam = lambda(kappa);
    sgn(n) * poch(&lam, level + n) / (poch(&-q(level as i64), n) * poch(&lam, level) * poch(&lam, 2 * n))
        * jacobi_norm_product(kappa, nu)
}

fn jacobi_norm_product(kappa: &[Q], nu: &[u32]) -> Q {
    let mut p = Q::one();
    for j in 0..nu.len() {
        let a = a_j(kappa, nu, j + 1);
        let c = &kappa[j] + &a + Q::one();
        // (c)_{2v}/(c)_v = (c+v)_v
        p *= poch(&(&c + q(nu[j] as i64)), nu[j]) * poch(&(&kappa[j] + Q::one()), nu[j]) * fact(nu[j])
            / poch(&(&a + Q::one()), nu[j]);
    }
    p
}

pub fn jacobi_norm(kappa: &[Q], nu: &[u32]) -> Q {
    jacobi_norm_product(kappa, nu) / poch(&lambda(kappa), 2 * deg(nu))
}

/// `prod (kappa_i+1)_{x_i}/x_i!`.
pub fn hahn_weight(kappa: &[Q], x: &[u32]) -> Q {
    shifted_poch(kappa, x) / multi_fact(x)
}

pub fn hahn_normalizer(kappa: &[Q], level: u32) -> Q {
    fact(level) / poch(&lambda(kappa), level)
}

/// `rho_bar = (rho, 1 - |rho|)`.
pub fn rho_bar(rho: &[Q]) -> Vec<Q> {
    let mut v = rho.to_vec();
    v.push(Q::one() - rho.iter().sum::<Q>());
    v
}

pub fn kraw_weight(rho: &[Q], x: &[u32]) -> Q {
    rho_bar(rho).iter().zip(x).map(|(r, &k)| powq(r, k) / fact(k)).product()
}

/// Krawtchouk norm under the inner product normalized by `N!`.
pub fn kraw_norm(rho: &[Q], nu: &[u32], level: u32) -> Q {
    let n = deg(nu);
    let d = nu.len();
    let mut p = sgn(n) / poch(&-q(level as i64), n);
    let mut partial = Q::zero();
    for j in 0..d {
        partial += &rho[j];
        let next = if j + 1 < d { nu[j + 1] as i64 } else { 0 };
        let e = nu[j] as i64 - next;
        let tail = Q::one() - &partial;
        let t = if e >= 0 { powq(&tail, e as u32) } else { Q::one() / powq(&tail, (-e) as u32) };
        p *= fact(nu[j]) * powq(&rho[j], nu[j]) / t;
    }
    p
}

/// `sum_{|gamma|=k} (-x)_gamma (-y)_gamma / (c_gamma gamma!)` with a per-slot
/// denominator `c(i, g)`.
fn e_like<F: Fn(usize, u32) -> Q>(x: &[u32], y: &[u32], k: u32, c: F) -> Q {
    let mut s = Q::zero();
    for g in comps(x.len(), k) {
        let mut t = Q::one();
        for i in 0..x.len() {
            t *= neg_poch(x[i], g[i]) * neg_poch(y[i], g[i]) / (c(i, g[i]) * fact(g[i]));
            if t.is_zero() {
                break;
            }
        }
        s += t;
    }
    s
}

pub fn cal_e(kappa: &[Q], k: u32, x: &[u32], y: &[u32]) -> Q {
    e_like(x, y, k, |i, g| poch(&(&kappa[i] + Q::one()), g))
}

pub fn cal_f(rho: &[Q], k: u32, x: &[u32], y: &[u32]) -> Q {
    let rb = rho_bar(rho);
    e_like(x, y, k, |i, g| powq(&rb[i], g))
}

/// One-variable Hahn `3F2(-n, n+a+b+1, -x; a+1, -N; 1)`.
pub fn hahn_q(n: u32, a: &Q, b: &Q, level: u32, x: &Q) -> Q {
    let c = q(n as i64) + a + b + Q::one();
    (0..=n)
        .map(|k| {
            poch(&-q(n as i64), k) * poch(&c, k) * poch(&-x, k)
                / (poch(&(a + Q::one()), k) * poch(&-q(level as i64), k) * fact(k))
        })
        .sum()
}

/// One-variable Krawtchouk `2F1(-n, -x; -N; 1/p)`.
pub fn kraw_q(n: u32, p: &Q, level: u32, x: u32) -> Q {
    (0..=n)
        .map(|k| {
            poch(&-q(n as i64), k) * neg_poch(x, k) / (poch(&-q(level as i64), k) * fact(k)) / powq(p, k)
        })
        .sum()
}

/// Reproducing kernels of a discrete weight on the grid `Z_N^{d+1}`, built by
/// graded Gram-Schmidt on the monomials in the first `d` coordinates.
/// Returns `(grid, kernels)` where `kernels[n][i][j]` is `P_n(grid[i], grid[j])`.
pub fn gram_schmidt_kernels(
    d: usize,
    level: u32,
    weight: impl Fn(&[u32]) -> Q,
    normalizer: &Q,
) -> (Vec<Vec<u32>>, Vec<Vec<Vec<Q>>>) {
    let grid = comps(d + 1, level);
    let w: Vec<Q> = grid.iter().map(|x| weight(x) * normalizer).collect();
    let mons = graded(d, level);
    let ip = |f: &[Q], g: &[Q]| -> Q { (0..f.len()).map(|i| &f[i] * &g[i] * &w[i]).sum() };
    let mut basis: Vec<(u32, Vec<Q>, Q)> = Vec::with_capacity(mons.len());
    for m in &mons {
        let mut v: Vec<Q> =
            grid.iter().map(|x| (0..d).map(|i| powq(&q(x[i] as i64), m[i])).product()).collect();
        let orig = v.clone();
        for (_, b, nb) in &basis {
            let c = ip(&orig, b) / nb;
            if !c.is_zero() {
                for i in 0..v.len() {
                    v[i] -= &c * &b[i];
                }
            }
        }
        let nv = ip(&v, &v);
        assert!(!nv.is_zero(), "degenerate Gram-Schmidt step");
        basis.push((deg(m), v, nv));
    }
    let npts = grid.len();
    let mut kernels = vec![vec![vec![Q::zero(); npts]; npts]; level as usize + 1];
    for (n, v, nv) in &basis {
        for i in 0..npts {
            if v[i].is_zero() {
                continue;
            }
            let vi = &v[i] / nv;
            for j in 0..npts {
                kernels[*n as usize][i][j] += &vi * &v[j];
            }
        }
    }
    (grid, kernels)
}

/// `<f, g>` under the normalized Jacobi weight, for homogeneous `f` and `g`
/// in `X = (x, 1-|x|)`, from the moments `(kappa+1)_gamma/(lambda)_{|gamma|}`.
pub fn jacobi_ip(kappa: &[Q], f: &Poly, g: &Poly) -> Q {
    let lam = lambda(kappa);
    let mut s = Q::zero();
    let mut denom_cache: HashMap<u32, Q> = HashMap::new();
    for (e1, c1) in &f.terms {
        for (e2, c2) in &g.terms {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            let m = deg(&e);
            let den = denom_cache.entry(m).or_insert_with(|| poch(&lam, m)).clone();
            s += c1 * c2 * shifted_poch(kappa, &e) / den;
        }
    }
    s
}

pub fn homogeneous(x: &[Q]) -> Vec<Q> {
    let mut v = x.to_vec();
    v.push(Q::one() - x.iter().sum::<Q>());
    v
}

/// Deterministic pseudo-random rational points of the simplex.
pub struct PointSource(u64);

impl PointSource {
    pub fn new(seed: u64) -> Self {
        PointSource(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1)
    }

    fn next(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn point(&mut self, d: usize) -> Vec<Q> {
        let den = 2 + (self.next() % 11) as i64;
        let mut left = den;
        let mut out = Vec::with_capacity(d);
        for _ in 0..d {
            let v = (self.next() % (left as u64 + 1)) as i64;
            left -= v;
            out.push(qf(v, den));
        }
        out
    }
}

pub fn abs(v: &Q) -> Q {
    v.abs()
}
