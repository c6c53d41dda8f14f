//! Parameter vectors of the three weight families.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{int, parse_rational_list, Rational};

/// Jacobi/Hahn parameter `kappa` in `R^{d+1}` with every `kappa_i > -1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Kappa(Vec<Rational>);

impl Kappa {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "kappa needs at least 2 entries (d >= 1), got {}",
                entries.len()
            )));
        }
        let minus_one = -Rational::one();
        if let Some(bad) = entries.iter().find(|k| **k <= minus_one) {
            return Err(Error::InvalidParameter(format!("kappa entries must exceed -1, got {bad}")));
        }
        Ok(Kappa(entries))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Kappa::new(parse_rational_list(s)?)
    }

    /// Constant vector with `d+1` copies of `value`.
    pub fn constant(d: usize, value: Rational) -> Result<Self> {
        Kappa::new(vec![value; d + 1])
    }

    /// Dimension `d` (the vector has `d+1` entries).
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    /// `|kappa|`.
    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `lambda_kappa = |kappa| + d + 1`.
    pub fn lambda(&self) -> Rational {
        self.total() + int(self.d() as i64 + 1)
    }

    /// `kappa + 1`, componentwise.
    pub fn shifted(&self) -> Vec<Rational> {
        self.0.iter().map(|k| k + Rational::one()).collect()
    }

    /// True when every `kappa_i >= -1/2`, the range of the integral
    /// representation of the simplex kernel.
    pub fn all_at_least_minus_half(&self) -> bool {
        let h = -Rational::new(1.into(), 2.into());
        self.0.iter().all(|k| *k >= h)
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

/// Krawtchouk parameter `rho` in `(0,1)^d` with `|rho| < 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rho(Vec<Rational>);

impl Rho {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("rho needs at least one entry".into()));
        }
        let one = Rational::one();
        if let Some(bad) = entries.iter().find(|r| !(r.is_positive() && **r < one)) {
            return Err(Error::InvalidParameter(format!("rho entries must lie in (0,1), got {bad}")));
        }
        let total: Rational = entries.iter().sum();
        if total >= one {
            return Err(Error::InvalidParameter(format!("|rho| must be below 1, got {total}")));
        }
        Ok(Rho(entries))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Rho::new(parse_rational_list(s)?)
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// Homogeneous vector `(rho, 1 - |rho|)`, which sums to one.
    pub fn homogeneous(&self) -> Vec<Rational> {
        let mut v = self.0.clone();
        v.push(Rational::one() - self.total());
        v
    }

    /// The Hahn parameter `t (rho, 1 - |rho|)` whose `t -> infinity` limit
    /// gives this Krawtchouk family.
    pub fn scaled_kappa(&self, t: &Rational) -> Result<Kappa> {
        Kappa::new(self.homogeneous().into_iter().map(|r| r * t).collect())
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[Rational]) -> fmt::Result {
    for (i, e) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}
