//! Multi-indices, lattice points of `Z_N^{d+1}` and the index sums used by
//! the product formulas.

use std::fmt;
use std::ops::{Add, Deref};

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{int, Rational};

/// A point of `N_0^d`, used for polynomial degrees `nu`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    /// Total degree `|nu|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl Deref for MultiIndex {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bar_separated(f, &self.0)
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A point of `Z_N^{d+1}`: `d+1` nonnegative integers summing to the level `N`.
///
/// These are the homogeneous coordinates of the discrete grid; the first `d`
/// entries are the usual inhomogeneous coordinates `x'`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(entries: Vec<u32>) -> Self {
        Composition(entries)
    }

    /// Builds a composition and checks that it lies on level `level`.
    pub fn with_level(entries: Vec<u32>, level: u32) -> Result<Self> {
        let c = Composition(entries);
        if c.level() != level {
            return Err(Error::LevelMismatch { expected: level as u64, found: c.level() as u64 });
        }
        Ok(c)
    }

    /// Homogeneous completion `(x', level - |x'|)` of an inhomogeneous point.
    pub fn from_inhomogeneous(head: &[u32], level: u32) -> Result<Self> {
        let s: u32 = head.iter().sum();
        if s > level {
            return Err(Error::LevelMismatch { expected: level as u64, found: s as u64 });
        }
        let mut v = head.to_vec();
        v.push(level - s);
        Ok(Composition(v))
    }

    /// The grid origin `x' = 0`, i.e. `(0, ..., 0, level)`.
    pub fn origin(parts: usize, level: u32) -> Self {
        let mut v = vec![0; parts];
        if let Some(last) = v.last_mut() {
            *last = level;
        }
        Composition(v)
    }

    pub fn level(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> usize {
        self.0.len()
    }

    /// `|x'|`, the sum of all but the last entry.
    pub fn head_sum(&self) -> u32 {
        let n = self.0.len();
        self.0[..n.saturating_sub(1)].iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Label used in tables, e.g. `1|0|2`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl Deref for Composition {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl Add for &Composition {
    type Output = Composition;
    fn add(self, other: &Composition) -> Composition {
        assert_eq!(self.parts(), other.parts(), "composition length mismatch");
        Composition(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bar_separated(f, &self.0)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn write_bar_separated(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    for (i, e) in v.iter().enumerate() {
        if i > 0 {
            f.write_str("|")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

fn push_all(parts: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        push_all(parts - 1, total - first, prefix, out);
        prefix.pop();
    }
}

fn all_with_sum(parts: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    push_all(parts, total, &mut Vec::new(), &mut out);
    out
}

/// All of `Z_level^{parts}`, graded-lexicographically ordered on the first
/// `parts - 1` entries: by `|x'|`, then lexicographically.
pub fn enumerate_compositions(parts: usize, level: u32) -> Vec<Composition> {
    let mut v: Vec<Composition> = all_with_sum(parts, level).into_iter().map(Composition).collect();
    v.sort_by(|a, b| (a.head_sum(), &a.0[..parts - 1]).cmp(&(b.head_sum(), &b.0[..parts - 1])));
    v
}

/// All multi-indices of `N_0^d` with `|nu| = degree`, lexicographically ordered.
pub fn multi_indices_of_degree(d: usize, degree: u32) -> Vec<MultiIndex> {
    let mut v: Vec<MultiIndex> = all_with_sum(d, degree).into_iter().map(MultiIndex).collect();
    v.sort();
    v
}

/// All multi-indices with `|nu| <= max_degree`, graded by degree.
pub fn multi_indices_up_to(d: usize, max_degree: u32) -> Vec<MultiIndex> {
    (0..=max_degree).flat_map(|n| multi_indices_of_degree(d, n)).collect()
}

/// All `beta` with `beta <= alpha` componentwise.
pub fn dominated_by(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(alpha.len())];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=a).map(move |b| {
                    let mut p = prefix.clone();
                    p.push(b);
                    p
                })
            })
            .collect();
    }
    out
}

/// Compositions `gamma` of `total` into `bound.len()` parts with `gamma <= bound`.
pub fn bounded_compositions(bound: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(bound: &[u32], total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match bound.len() {
            0 => {
                if total == 0 {
                    out.push(prefix.clone());
                }
            }
            _ => {
                let rest: u32 = bound[1..].iter().sum();
                let lo = total.saturating_sub(rest);
                let hi = bound[0].min(total);
                if lo > hi {
                    return;
                }
                for g in lo..=hi {
                    prefix.push(g);
                    rec(&bound[1..], total - g, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(bound, total, &mut Vec::new(), &mut out);
    out
}

/// `a_j(kappa, nu) = |kappa^{j+1}| + 2|nu^{j+1}| + d - j` for `1 <= j <= d`.
///
/// `kappa` has `d+1` entries and `nu` has `d`. Note `a_d = kappa_{d+1}`.
pub fn a_j(kappa: &[Rational], nu: &[u32], j: usize) -> Result<Rational> {
    let d = nu.len();
    if kappa.len() != d + 1 {
        return Err(Error::LengthMismatch { expected: d + 1, found: kappa.len() });
    }
    if j == 0 || j > d {
        return Err(Error::IndexOutOfRange { index: j, min: 1, max: d });
    }
    let kappa_tail: Rational = kappa[j..].iter().sum();
    let nu_tail: u32 = nu[j..].iter().sum();
    Ok(kappa_tail + int(2 * nu_tail as i64 + (d - j) as i64))
}

/// Head and tail sums `(|y_j|, |y^j|)` with `|y_0| = 0` and an empty tail
/// past the last entry. `j = 0` takes the whole vector as the tail.
pub fn tail_head_sums<T>(y: &[T], j: usize) -> Result<(T, T)>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T>,
{
    let len = y.len();
    if j > len + 1 {
        return Err(Error::IndexOutOfRange { index: j, min: 0, max: len + 1 });
    }
    let head = y[..j.min(len)].iter().fold(T::zero(), |acc, v| acc + v);
    let start = j.saturating_sub(1).min(len);
    let tail = y[start..].iter().fold(T::zero(), |acc, v| acc + v);
    Ok((head, tail))
}
