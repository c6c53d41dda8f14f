//! Gauss quadrature for `(1 - t^2)^lambda` on `[-1, 1]` and the integral
//! representation of the simplex reproducing kernel.
//!
//! This is the only floating-point module. Rules come from the Golub-Welsch
//! construction: the symmetric tridiagonal Jacobi matrix of the orthonormal
//! Gegenbauer recurrence is diagonalized by implicit QL, its eigenvalues are
//! the nodes and the squared first eigenvector components times the total
//! mass are the weights.

use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Nodes and weights of an `m`-point rule for `(1 - t^2)^lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub lambda: f64,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `int_{-1}^1 (1 - t^2)^lambda dt = sqrt(pi) Gamma(lambda+1) / Gamma(lambda+3/2)`.
pub fn gegenbauer_mass(lambda: f64) -> f64 {
    (0.5 * std::f64::consts::PI.ln() + ln_gamma(lambda + 1.0) - ln_gamma(lambda + 1.5)).exp()
}

/// `int t^k (1 - t^2)^lambda dt`: zero for odd `k`, otherwise the mass times
/// `(1/2)_{k/2} / (lambda + 3/2)_{k/2}`.
pub fn gegenbauer_moment(k: u32, lambda: f64) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let mut v = gegenbauer_mass(lambda);
    for i in 0..k / 2 {
        v *= (0.5 + i as f64) / (lambda + 1.5 + i as f64);
    }
    v
}

/// Squared off-diagonal `beta_k` of the orthonormal recurrence, `k >= 1`.
fn recurrence_beta(k: usize, lambda: f64) -> f64 {
    if k == 1 {
        return 1.0 / (2.0 * lambda + 3.0);
    }
    let k = k as f64;
    k * (k + 2.0 * lambda) / ((2.0 * k + 2.0 * lambda + 1.0) * (2.0 * k + 2.0 * lambda - 1.0))
}

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix by implicit-shift QL. `diag` has length `m`, `off` length `m - 1`.
fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    // only the first row of the eigenvector matrix is needed
    let mut z = vec![0.0; m];
    z[0] = 1.0;
    let budget = 100 * m.max(1);
    for l in 0..m {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < m {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > budget {
                return Err(Error::NoConvergence(budget));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[mm] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = mm;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }
    Ok((d, z))
}

/// `m`-point Gauss rule for `(1 - t^2)^lambda`, `lambda > -1`.
pub fn gauss_gegenbauer_rule(m: usize, lambda: f64) -> Result<QuadRule> {
    if m == 0 {
        return Err(Error::InvalidParameter("a rule needs at least one node".into()));
    }
    if lambda.is_nan() || lambda <= -1.0 {
        return Err(Error::Domain(format!("exponent {lambda} must exceed -1")));
    }
    let diag = vec![0.0; m];
    let off: Vec<f64> = (1..m).map(|k| recurrence_beta(k, lambda).sqrt()).collect();
    let (nodes, first) = tridiagonal_eigen(&diag, &off)?;
    let mass = gegenbauer_mass(lambda);
    let mut pairs: Vec<(f64, f64)> = nodes.into_iter().zip(first.into_iter().map(|v| v * v * mass)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        lambda,
    })
}

/// Standard Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence.
pub fn jacobi_p_f64(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b + (a + b + 2.0) * x);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (a * a - b * b);
        let c3 = (s - 2.0) * (s - 1.0) * s;
        let c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = ((c2 + c3 * x) * p1 - c4 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn rising(a: f64, n: u32) -> f64 {
    (0..n).map(|i| a + i as f64).product()
}

/// The degree-`n` simplex kernel from its integral representation over
/// `[-1,1]^{d+1}`, using `m` nodes per axis. Requires every `kappa_i > -1/2`.
pub fn kernel_w_integral(kappa: &[f64], n: u32, x: &[f64], y: &[f64], m: usize) -> Result<f64> {
    let d = kappa.len().checked_sub(1).ok_or_else(|| Error::InvalidParameter("empty kappa".into()))?;
    if x.len() != d || y.len() != d {
        return Err(Error::LengthMismatch { expected: d, found: x.len().min(y.len()) });
    }
    if let Some(k) = kappa.iter().find(|k| k.is_nan() || **k <= -0.5) {
        return Err(Error::Domain(format!("kappa_i = {k} must exceed -1/2")));
    }
    let homog = |v: &[f64]| {
        let mut out = v.to_vec();
        out.push(1.0 - v.iter().sum::<f64>());
        out
    };
    let (bx, by) = (homog(x), homog(y));
    if bx.iter().chain(&by).any(|v| *v < 0.0) {
        return Err(Error::Domain("points must lie in the simplex".into()));
    }
    let c: Vec<f64> = bx.iter().zip(&by).map(|(a, b)| (a * b).sqrt()).collect();
    let rules = kappa.iter().map(|k| gauss_gegenbauer_rule(m, k - 0.5)).collect::<Result<Vec<_>>>()?;
    let kd = kappa.iter().sum::<f64>() + d as f64;
    let (ja, jb) = (kd - 0.5, -0.5);

    // sum over the trailing axes for a fixed partial z and weight
    fn tail(rules: &[QuadRule], c: &[f64], axis: usize, z: f64, w: f64, f: &dyn Fn(f64) -> f64) -> f64 {
        if axis == rules.len() {
            return w * f(z);
        }
        let r = &rules[axis];
        r.nodes
            .iter()
            .zip(&r.weights)
            .map(|(&t, &wt)| tail(rules, c, axis + 1, z + c[axis] * t, w * wt, f))
            .sum()
    }
    let integrand = |z: f64| jacobi_p_f64(n, ja, jb, 2.0 * z * z - 1.0);
    let first = &rules[0];
    let integral: f64 = first
        .nodes
        .par_iter()
        .zip(first.weights.par_iter())
        .map(|(&t, &w)| tail(&rules, &c, 1, c[0] * t, w, &integrand))
        .sum();
    let mass: f64 = rules.iter().map(QuadRule::total_weight).product();
    let prefactor = if n == 0 {
        1.0
    } else {
        rising(kd + 1.0, n) * (kd + 2.0 * n as f64) / (rising(0.5, n) * (kd + n as f64))
    };
    Ok(prefactor * integral / mass)
}
