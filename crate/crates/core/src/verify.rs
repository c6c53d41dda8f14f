//! Identity sweeps behind the `verify` command.
//!
//! Each suite evaluates both sides of a family of identities over a parameter
//! grid and records every case. Reports are deterministic: parameter sets are
//! enumerated in a fixed order, cases may run in parallel, and failures are
//! sorted before they are emitted.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, frac, int, parse_rational, pochhammer, sign, to_f64, Rational};
use crate::hahn::{alternating_hahn_sum, HahnFamily};
use crate::hypergeom::three_f_two_sides;
use crate::kraw::{decade_schedule, verify_d1_generating, KrawFamily};
use crate::lattice::{enumerate_compositions, multi_indices_of_degree, multi_indices_up_to, Composition};
use crate::params::{Kappa, Rho};
use crate::poly::generating_polynomial;
use crate::quad::{gauss_gegenbauer_rule, gegenbauer_moment, kernel_w_integral};
use crate::simplex::SimplexJacobi;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Hypergeom,
    Hahn,
    Kraw,
    Simplex,
    Quad,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "hypergeom" => Suite::Hypergeom,
            "hahn" => Suite::Hahn,
            "kraw" => Suite::Kraw,
            "simplex" => Suite::Simplex,
            "quad" => Suite::Quad,
            _ => {
                return Err(Error::Parse {
                    input: s.into(),
                    reason: "expected all, hypergeom, hahn, kraw, simplex or quad".into(),
                })
            }
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Run only this dimension; `None` runs `1..=2`.
    pub d: Option<usize>,
    pub n_max: u32,
    pub kappa_grid: Vec<Rational>,
    pub rho_grid: Vec<Rational>,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            d: None,
            n_max: 3,
            kappa_grid: default_kappa_grid(),
            rho_grid: vec![frac(1, 5), frac(1, 3), frac(1, 2)],
            seed: 2024,
        }
    }
}

impl VerifyConfig {
    fn dims(&self) -> Vec<usize> {
        match self.d {
            Some(d) => vec![d],
            None => vec![1, 2],
        }
    }
}

/// `{-1/2, 0, 1/2, 1, 7/3}`.
pub fn default_kappa_grid() -> Vec<Rational> {
    vec![frac(-1, 2), int(0), frac(1, 2), int(1), frac(7, 3)]
}

/// One violated case. Sides are exact strings where the identity is exact.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub params: String,
    pub lhs: String,
    pub rhs: String,
}

/// Float reading of a side, when it parses as a rational or a float.
fn approx(side: &str) -> Option<f64> {
    parse_rational(side).ok().map(|v| to_f64(&v)).or_else(|| side.parse().ok())
}

impl Serialize for Failure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Failure", 5)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("lhs_approx", &approx(&self.lhs))?;
        st.serialize_field("rhs", &self.rhs)?;
        st.serialize_field("rhs_approx", &approx(&self.rhs))?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub suite: String,
    pub identity_tag: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: bool,
    pub identities: Vec<IdentityReport>,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<(&IdentityReport, &Failure)> {
        self.identities.iter().find_map(|r| r.failures.first().map(|f| (r, f)))
    }
}

/// Case tallies keyed by identity tag.
#[derive(Default)]
struct Recorder {
    entries: BTreeMap<String, (usize, Vec<Failure>)>,
}

impl Recorder {
    fn touch(&mut self, tag: &str) -> &mut (usize, Vec<Failure>) {
        self.entries.entry(tag.to_string()).or_default()
    }

    fn eq<P: Display, T: PartialEq + Display>(&mut self, tag: &str, params: P, lhs: T, rhs: T) {
        let e = self.touch(tag);
        e.0 += 1;
        if lhs != rhs {
            e.1.push(Failure { params: params.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }

    fn holds<P: Display, V: Display>(&mut self, tag: &str, params: P, ok: bool, value: V, expected: &str) {
        let e = self.touch(tag);
        e.0 += 1;
        if !ok {
            e.1.push(Failure { params: params.to_string(), lhs: value.to_string(), rhs: expected.into() });
        }
    }

    fn error<P: Display>(&mut self, tag: &str, params: P, err: Error) {
        let e = self.touch(tag);
        e.0 += 1;
        e.1.push(Failure { params: params.to_string(), lhs: format!("error: {err}"), rhs: String::new() });
    }

    fn merge(&mut self, other: Recorder) {
        for (k, (c, f)) in other.entries {
            let e = self.touch(&k);
            e.0 += c;
            e.1.extend(f);
        }
    }

    fn finish(self, suite: &str) -> Vec<IdentityReport> {
        self.entries
            .into_iter()
            .map(|(tag, (cases, mut failures))| {
                failures.sort();
                IdentityReport { suite: suite.into(), identity_tag: tag, cases, failures }
            })
            .collect()
    }
}

/// Runs `body` and records an error under `tag` instead of propagating it.
fn guarded<F>(rec: &mut Recorder, tag: &str, params: &str, body: F)
where
    F: FnOnce(&mut Recorder) -> Result<()>,
{
    let mut local = Recorder::default();
    match body(&mut local) {
        Ok(()) => rec.merge(local),
        Err(e) => {
            rec.merge(local);
            rec.error(tag, params, e);
        }
    }
}

/// All vectors of length `len` over `grid`, or a fixed sample when the full
/// product would exceed `limit`: the constant vectors, every cyclic window of
/// the grid and every reversed window, so each value appears in each slot.
pub fn parameter_vectors(grid: &[Rational], len: usize, limit: usize) -> Vec<Vec<Rational>> {
    let full = grid.len().checked_pow(len as u32).unwrap_or(usize::MAX);
    if full <= limit {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|p: Vec<Rational>| {
                    grid.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        return out;
    }
    let g = grid.len();
    let mut out: Vec<Vec<Rational>> = grid.iter().map(|v| vec![v.clone(); len]).collect();
    for i in 0..g {
        out.push((0..len).map(|j| grid[(i + j) % g].clone()).collect());
        out.push((0..len).map(|j| grid[(i + g * len - j) % g].clone()).collect());
    }
    out.dedup();
    out
}

fn kappas(cfg: &VerifyConfig, d: usize) -> Vec<Kappa> {
    parameter_vectors(&cfg.kappa_grid, d + 1, 125).into_iter().filter_map(|v| Kappa::new(v).ok()).collect()
}

fn rhos(cfg: &VerifyConfig, d: usize) -> Vec<Rho> {
    parameter_vectors(&cfg.rho_grid, d, 125).into_iter().filter_map(|v| Rho::new(v).ok()).collect()
}

/// Random rational points of the simplex with denominators up to 12.
pub fn random_simplex_points(rng: &mut ChaCha8Rng, d: usize, count: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q: i64 = rng.gen_range(2..=12);
        let mut left = q;
        let mut p = Vec::with_capacity(d);
        for _ in 0..d {
            let v = rng.gen_range(0..=left);
            left -= v;
            p.push(frac(v, q));
        }
        out.push(p);
    }
    out
}

fn par_kappas<F>(list: &[Kappa], f: F) -> Recorder
where
    F: Fn(&Kappa, &mut Recorder) + Sync,
{
    let parts: Vec<Recorder> = list
        .par_iter()
        .map(|k| {
            let mut r = Recorder::default();
            f(k, &mut r);
            r
        })
        .collect();
    let mut out = Recorder::default();
    for p in parts {
        out.merge(p);
    }
    out
}

pub fn hypergeom_suite(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut rec = Recorder::default();
    for k1 in &cfg.kappa_grid {
        for k2 in &cfg.kappa_grid {
            for n in 0..=cfg.n_max.max(6) {
                for m in 0..=n {
                    let p = format!("k1={k1} k2={k2} n={n} m={m}");
                    match three_f_two_sides(k1, k2, n, m) {
                        Ok((l, r)) => rec.eq("3F2at1", p, l, r),
                        Err(e) => rec.error("3F2at1", p, e),
                    }
                }
            }
        }
    }
    rec.finish("hypergeom")
}

fn hahn_cases(kappa: &Kappa, cfg: &VerifyConfig, rec: &mut Recorder) {
    let d = kappa.d();
    let kd = kappa.total() + int(d as i64);
    for level in 0..=cfg.n_max {
        let pk = format!("kappa=({kappa}) N={level}");
        guarded(rec, "hahn-evaluation", &pk, |rec| {
            let fam = HahnFamily::new(kappa.clone(), level)?;
            let grid = fam.grid();
            let nus = multi_indices_up_to(d, level);
            let mut cols = Vec::new();
            for nu in &nus {
                let h = fam.basis(nu)?;
                cols.push(grid.iter().map(|x| h.eval(x)).collect::<Result<Vec<_>>>()?);
            }
            let w = grid.iter().map(|x| fam.weight(x)).collect::<Result<Vec<_>>>()?;
            let norm = fam.normalizer();
            for (i, nu) in nus.iter().enumerate() {
                for (j, mu) in nus.iter().enumerate().skip(i) {
                    let ip: Rational =
                        (0..grid.len()).map(|p| &cols[i][p] * &cols[j][p] * &w[p]).sum::<Rational>() * &norm;
                    let expected = if i == j { fam.norm_b(nu)? } else { Rational::zero() };
                    rec.eq("hahn-orthogonality", format!("{pk} nu={nu} mu={mu}"), ip, expected);
                }
                let poly = generating_polynomial(kappa.entries(), level, nu)?;
                for (p, x) in grid.iter().enumerate() {
                    let coef = poly.coefficient(x) * crate::exact::multi_factorial(x) / factorial(level);
                    rec.eq(
                        "generating-function",
                        format!("{pk} nu={nu} alpha={x}"),
                        coef,
                        cols[i][p].clone(),
                    );
                    rec.eq(
                        "shifted-monomial-expansion",
                        format!("{pk} nu={nu} x={x}"),
                        fam.shifted_monomial_expansion(nu, x)?,
                        cols[i][p].clone(),
                    );
                }
            }
            for n in 0..=level {
                let sum = fam.kernel_sum_table(n)?;
                let closed = fam.kernel_closed_table(n)?;
                let mid = fam.kernel_intermediate_table(n)?;
                for i in 0..grid.len() {
                    for j in 0..grid.len() {
                        let p = format!("{pk} n={n} x={} y={}", grid[i], grid[j]);
                        rec.eq("hahn-kernel-closed", &p, closed.get(i, j), sum.get(i, j));
                        rec.eq("hahn-kernel-double-sum", &p, mid.get(i, j), closed.get(i, j));
                    }
                }
                rec.holds(
                    "kernel-symmetry",
                    format!("{pk} n={n}"),
                    closed.is_symmetric(),
                    "asymmetric",
                    "symmetric",
                );
                let origin = Composition::origin(d + 1, level);
                for x in &grid {
                    rec.eq(
                        "hahn-kernel-origin",
                        format!("{pk} n={n} x={x}"),
                        fam.kernel_closed_at_origin(n, x)?,
                        fam.kernel_closed(n, x, &origin)?,
                    );
                }
                for k in 0..=level {
                    let (l, r) = alternating_hahn_sum(&kd, n, k, level)?;
                    rec.eq("alternating-hahn-sum", format!("{pk} n={n} k={k}"), l, r);
                }
            }
            let mesh: Vec<Rational> = (0..=8).map(|i| frac(i, 8)).collect();
            for x in &grid {
                for y in &grid {
                    let pxy = format!("{pk} x={x} y={y}");
                    for r in &mesh {
                        let v = fam.poisson(r, x, y)?;
                        rec.holds(
                            "hahn-poisson-nonnegative",
                            format!("{pxy} r={r}"),
                            v >= Rational::zero(),
                            &v,
                            ">= 0",
                        );
                    }
                    rec.eq(
                        "hahn-poisson-at-one",
                        &pxy,
                        fam.poisson(&Rational::one(), x, y)?,
                        fam.poisson_at_one(x, y)?,
                    );
                    let (l, r) = fam.e_kernel_expansion(x, y)?;
                    rec.eq("e-kernel-expansion", &pxy, l, r);
                    let (l, r) = fam.top_e_expansion(x, y)?;
                    rec.eq("top-e-expansion", &pxy, l, r);
                }
            }
            for m in 0..=cfg.n_max {
                for alpha in enumerate_compositions(d + 1, m) {
                    for n in 0..=level.min(m) {
                        for nu in multi_indices_of_degree(d, n) {
                            let p = format!("{pk} M={m} nu={nu} alpha={alpha}");
                            let (l, r) = fam.shifted_moment_sides(&nu, &alpha)?;
                            rec.eq("shifted-moment", &p, l, r);
                            let (l, r) = fam.e_kernel_projection_sides(&nu, &alpha)?;
                            rec.eq("e-kernel-projection", &p, l, r);
                        }
                    }
                }
            }
            Ok(())
        });
    }
}

pub fn hahn_suite(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut rec = Recorder::default();
    for d in cfg.dims() {
        rec.merge(par_kappas(&kappas(cfg, d), |k, r| hahn_cases(k, cfg, r)));
    }
    rec.finish("hahn")
}

fn kraw_cases(rho: &Rho, cfg: &VerifyConfig, rec: &mut Recorder) {
    let d = rho.d();
    let schedule = decade_schedule();
    let (lo, hi) = (frac(1, 15), frac(1, 5));
    for level in 0..=cfg.n_max {
        let pk = format!("rho=({rho}) N={level}");
        guarded(rec, "kraw-evaluation", &pk, |rec| {
            let fam = KrawFamily::new(rho.clone(), level);
            let grid = fam.grid();
            let nus = multi_indices_up_to(d, level);
            for (i, nu) in nus.iter().enumerate() {
                for mu in nus.iter().skip(i) {
                    let ip = fam.inner_product(|x| fam.kraw_k(nu, x), |x| fam.kraw_k(mu, x))?;
                    let expected = if nu == mu { fam.norm_c(nu)? } else { Rational::zero() };
                    rec.eq("kraw-orthogonality", format!("{pk} nu={nu} mu={mu}"), ip, expected);
                }
                for x in &grid {
                    rec.eq(
                        "kraw-shifted-monomial-expansion",
                        format!("{pk} nu={nu} x={x}"),
                        fam.k_monic_expansion(nu, x)?,
                        fam.kraw_k(nu, x)?,
                    );
                }
            }
            let origin = Composition::origin(d + 1, level);
            for n in 0..=level {
                let sum = fam.kernel_sum_table(n)?;
                let closed = fam.kernel_closed_table(n)?;
                rec.eq(
                    "kraw-kernel-closed",
                    format!("{pk} n={n}"),
                    closed.first_difference(&sum).is_none(),
                    true,
                );
                rec.holds(
                    "kernel-symmetry",
                    format!("{pk} n={n}"),
                    closed.is_symmetric(),
                    "asymmetric",
                    "symmetric",
                );
                for x in &grid {
                    rec.eq(
                        "kraw-kernel-origin",
                        format!("{pk} n={n} x={x}"),
                        fam.kernel_closed_at_origin(n, x)?,
                        fam.kernel_closed(n, x, &origin)?,
                    );
                }
            }
            let mesh: Vec<Rational> = (0..=8).map(|i| frac(i, 8)).collect();
            for x in &grid {
                for r in &mesh {
                    rec.eq(
                        "kraw-poisson-origin",
                        format!("{pk} x={x} r={r}"),
                        fam.poisson(r, x, &origin)?,
                        fam.poisson_at_origin(r, x)?,
                    );
                }
                for y in &grid {
                    let pxy = format!("{pk} x={x} y={y}");
                    for r in &mesh {
                        let terms = fam.poisson_terms(r, x, y)?;
                        let total: Rational = terms.iter().sum();
                        rec.holds(
                            "kraw-poisson-nonnegative",
                            format!("{pxy} r={r}"),
                            terms.iter().all(|t| *t >= Rational::zero()),
                            &total,
                            "every summand >= 0",
                        );
                        rec.eq(
                            "kraw-poisson-closed",
                            format!("{pxy} r={r}"),
                            total,
                            fam.poisson_series(r, x, y)?,
                        );
                    }
                    let (l, r) = fam.top_f_expansion(x, y)?;
                    rec.eq("top-f-expansion", &pxy, l, r);
                }
            }
            if level <= 2 {
                for x in &grid {
                    for nu in multi_indices_up_to(d, level) {
                        let rep = fam.hahn_to_kraw_limit(&nu, x, &schedule)?;
                        rec.holds(
                            "hahn-to-kraw-limit",
                            format!("{pk} nu={nu} x={x}"),
                            rep.converges_at_rate(&lo, &hi),
                            format!("{:?}", rep.ratios()),
                            "exact or ratios in [1/15, 1/5]",
                        );
                    }
                    for y in &grid {
                        for k in 0..=level {
                            for a in [int(0), frac(1, 2)] {
                                let rep = fam.e_to_f_limit(k, &a, x, y, &schedule)?;
                                rec.holds(
                                    "e-to-f-limit",
                                    format!("{pk} k={k} a={a} x={x} y={y}"),
                                    rep.converges_at_rate(&lo, &hi),
                                    format!("{:?}", rep.ratios()),
                                    "exact or ratios in [1/15, 1/5]",
                                );
                            }
                        }
                    }
                }
            }
            Ok(())
        });
    }
}

pub fn kraw_suite(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut rec = Recorder::default();
    for d in cfg.dims() {
        let list = rhos(cfg, d);
        let parts: Vec<Recorder> = list
            .par_iter()
            .map(|r| {
                let mut rr = Recorder::default();
                kraw_cases(r, cfg, &mut rr);
                rr
            })
            .collect();
        for p in parts {
            rec.merge(p);
        }
        if d == 1 {
            for rho in &cfg.rho_grid {
                for level in 0..=cfg.n_max {
                    for r in (0..=4).map(|i| frac(i, 4)) {
                        let p = format!("rho={rho} N={level} r={r}");
                        match verify_d1_generating(rho, level, &r) {
                            Ok(ok) => {
                                rec.holds("one-variable-generating-function", p, ok, "mismatch", "equal")
                            }
                            Err(e) => rec.error("one-variable-generating-function", p, e),
                        }
                    }
                }
            }
        }
    }
    rec.finish("kraw")
}

fn simplex_cases(kappa: &Kappa, cfg: &VerifyConfig, rec: &mut Recorder) {
    let d = kappa.d();
    let s = SimplexJacobi::new(kappa.clone());
    let top = cfg.n_max.min(3);
    let pk = format!("kappa=({kappa})");
    guarded(rec, "simplex-evaluation", &pk, |rec| {
        let nus = multi_indices_up_to(d, top);
        let polys = nus.iter().map(|nu| s.p_basis(nu)).collect::<Result<Vec<_>>>()?;
        for (i, nu) in nus.iter().enumerate() {
            for (j, mu) in nus.iter().enumerate().skip(i) {
                let ip = s.inner_product(&polys[i], &polys[j])?;
                let expected = if i == j { s.norm_a(nu)? } else { Rational::zero() };
                rec.eq("jacobi-orthogonality", format!("{pk} nu={nu} mu={mu}"), ip, expected);
            }
            let n = nu.degree();
            let lam = s.lambda();
            for level in n..=top {
                let b = s.hahn(level).norm_b(nu)?;
                let via_a = sign(n) * pochhammer(&lam, level + n)
                    / (pochhammer(&-int(level as i64), n) * pochhammer(&lam, level))
                    * s.norm_a(nu)?;
                rec.eq("hahn-jacobi-norm-ratio", format!("{pk} N={level} nu={nu}"), b, via_a);
            }
            let back = s.synthesize(&s.connection_p_in_r(nu)?, |a| s.r_monic(a))?;
            rec.eq("p-in-r", format!("{pk} nu={nu}"), back.equal_on_unit_hyperplane(&polys[i])?, true);
        }
        for n in 0..=top {
            let alphas = enumerate_compositions(d + 1, n);
            let rs = alphas.iter().map(|a| s.r_monic(a)).collect::<Result<Vec<_>>>()?;
            for (ai, alpha) in alphas.iter().enumerate() {
                let pa = format!("{pk} alpha={alpha}");
                let back = s.synthesize(&s.connection_r_in_p(alpha)?, |nu| s.p_basis(nu))?;
                rec.eq("r-in-p", &pa, back.equal_on_unit_hyperplane(&rs[ai])?, true);
                let xr = s.synthesize(&s.monomial_in_r(alpha)?, |b| s.r_monic(b))?;
                rec.eq("x-in-r", &pa, xr, s.monomial(alpha));
                let xp = s.synthesize(&s.monomial_in_p(alpha)?, |nu| s.p_basis(nu))?;
                rec.eq("x-in-p", &pa, xp.equal_on_unit_hyperplane(&s.monomial(alpha))?, true);
                for gamma in (0..n).flat_map(|m| enumerate_compositions(d + 1, m)) {
                    rec.eq(
                        "monic-orthogonality",
                        format!("{pa} gamma={gamma}"),
                        s.inner_product(&rs[ai], &s.monomial(&gamma))?,
                        Rational::zero(),
                    );
                }
                for nu in multi_indices_of_degree(d, n) {
                    let p = s.p_basis(&nu)?;
                    rec.eq(
                        "ip-p-r",
                        format!("{pa} nu={nu}"),
                        s.inner_product(&p, &rs[ai])?,
                        s.ip_p_r(&nu, alpha)?,
                    );
                }
                for (bi, beta) in alphas.iter().enumerate() {
                    rec.eq(
                        "ip-r-r",
                        format!("{pa} beta={beta}"),
                        s.inner_product(&rs[ai], &rs[bi])?,
                        s.ip_r_r(alpha, beta)?,
                    );
                }
            }
        }
        for level in 0..=top {
            for alpha in enumerate_compositions(d + 1, level) {
                let xa = s.monomial(&alpha);
                for n in 0..=level {
                    let pa = format!("{pk} alpha={alpha} n={n}");
                    let proj = s.projection_r_alpha_n(&alpha, n)?;
                    let back = s.synthesize(&s.projection_in_p(&alpha, n)?, |nu| s.p_basis(nu))?;
                    rec.eq("projection-in-p", &pa, back.equal_on_unit_hyperplane(&proj)?, true);
                    for nu in multi_indices_of_degree(d, n) {
                        let p = s.p_basis(&nu)?;
                        let closed = s.ip_p_x(&nu, &alpha)?;
                        rec.eq("ip-p-x", format!("{pa} nu={nu}"), s.inner_product(&p, &xa)?, closed.clone());
                        rec.eq(
                            "ip-projection-p",
                            format!("{pa} nu={nu}"),
                            s.inner_product(&proj, &p)?,
                            closed,
                        );
                        let rebuilt = s.p_from_projections(&nu, level)?;
                        rec.eq(
                            "p-from-projections",
                            format!("{pa} nu={nu}"),
                            rebuilt.equal_on_unit_hyperplane(&p)?,
                            true,
                        );
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let pts = random_simplex_points(&mut rng, d, 4);
        for w in pts.chunks(2) {
            let (x, y) = (&w[0], &w[1]);
            for level in 0..=top {
                for n in 0..=level {
                    let p = format!("{pk} n={n} N={level} x={} y={}", point_text(x), point_text(y));
                    rec.eq("tight-frame", &p, s.frame_kernel(n, level, x, y)?, s.kernel_sum(n, x, y)?);
                }
            }
            for n in 0..=top {
                let k = s.kernel_sum_poly(n, x)?;
                for nu in multi_indices_of_degree(d, n) {
                    rec.eq(
                        "jacobi-reproducing",
                        format!("{pk} n={n} nu={nu} x={}", point_text(x)),
                        s.inner_product(&k, &s.p_basis(&nu)?)?,
                        s.p_eval(&nu, x)?,
                    );
                }
            }
        }
        Ok(())
    });
}

pub fn simplex_suite(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut rec = Recorder::default();
    for d in cfg.dims() {
        rec.merge(par_kappas(&kappas(cfg, d), |k, r| simplex_cases(k, cfg, r)));
    }
    rec.finish("simplex")
}

fn point_text(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn float_text(v: f64) -> String {
    format!("{v:.17e}")
}

pub fn quad_suite(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut rec = Recorder::default();
    for lambda in [-0.5, -0.25, 0.0, 0.5, 1.0, 11.0 / 6.0] {
        for m in 1..=12usize {
            let p = format!("lambda={lambda} m={m}");
            match gauss_gegenbauer_rule(m, lambda) {
                Ok(rule) => {
                    for k in 0..2 * m as u32 {
                        let got = rule.integrate(|t| t.powi(k as i32));
                        let want = gegenbauer_moment(k, lambda);
                        let ok = (got - want).abs() <= 1e-13 * want.abs().max(1.0);
                        rec.holds(
                            "gauss-exactness",
                            format!("{p} k={k}"),
                            ok,
                            float_text(got),
                            &float_text(want),
                        );
                    }
                }
                Err(e) => rec.error("gauss-exactness", p, e),
            }
        }
    }
    let grid = [int(0), frac(1, 2), int(1)];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for d in cfg.dims() {
        let pts = random_simplex_points(&mut rng, d, 8);
        for kappa in parameter_vectors(&grid, d + 1, 125) {
            let k = Kappa::new(kappa).expect("grid values exceed -1");
            let s = SimplexJacobi::new(k.clone());
            let kf: Vec<f64> = k.entries().iter().map(to_f64).collect();
            for w in pts.chunks(2) {
                let (x, y) = (&w[0], &w[1]);
                let xf: Vec<f64> = x.iter().map(to_f64).collect();
                let yf: Vec<f64> = y.iter().map(to_f64).collect();
                for n in 0..=cfg.n_max.min(4) {
                    let p = format!("kappa=({k}) n={n} x={} y={}", point_text(x), point_text(y));
                    let res = (|| -> Result<(f64, f64, f64)> {
                        let exact = to_f64(&s.kernel_sum(n, x, y)?);
                        let scale = to_f64(&s.kernel_sum(n, x, x)?).max(to_f64(&s.kernel_sum(n, y, y)?));
                        let q = kernel_w_integral(&kf, n, &xf, &yf, n as usize + 1)?;
                        Ok((exact, scale, q))
                    })();
                    match res {
                        Ok((exact, scale, q)) => {
                            let ok = (q - exact).abs() <= 1e-10 * scale.max(f64::MIN_POSITIVE);
                            rec.holds("kernel-integral", p, ok, float_text(q), &float_text(exact));
                        }
                        Err(e) => rec.error("kernel-integral", p, e),
                    }
                }
            }
        }
    }
    rec.finish("quad")
}

/// Runs the requested suites.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> VerifyReport {
    let mut identities = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Hypergeom) {
        identities.extend(hypergeom_suite(cfg));
    }
    if wants(Suite::Hahn) {
        identities.extend(hahn_suite(cfg));
    }
    if wants(Suite::Kraw) {
        identities.extend(kraw_suite(cfg));
    }
    if wants(Suite::Simplex) {
        identities.extend(simplex_suite(cfg));
    }
    if wants(Suite::Quad) {
        identities.extend(quad_suite(cfg));
    }
    let passed = identities.iter().all(IdentityReport::passed);
    VerifyReport { seed: cfg.seed, passed, identities }
}
