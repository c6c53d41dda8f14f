//! Exact multivariate Jacobi, Hahn and Krawtchouk polynomials.
//!
//! The three families live on the simplex `T^d` and on its discrete analogue
//! `Z_N^{d+1}`. For each one the crate evaluates the orthogonal basis, its
//! norms, the reproducing kernels as basis sums and in closed form, and the
//! Poisson kernel. All of this is done over [`exact::Rational`], so identities
//! are checked by equality rather than within a tolerance. [`quad`] is the one
//! floating-point module.
//!
//! ```
//! use simplex_ortho::kraw::KrawFamily;
//! use simplex_ortho::params::Rho;
//!
//! let fam = KrawFamily::new(Rho::parse("1/5,1/3").unwrap(), 2);
//! assert_eq!(fam.kernel_closed_table(1).unwrap(), fam.kernel_sum_table(1).unwrap());
//! ```
//!
//! [`verify`] drives the identity suites behind the `simplex-ortho verify`
//! command.

pub mod error;
pub mod exact;
pub mod hahn;
pub mod hypergeom;
pub mod kraw;
pub mod lattice;
pub mod params;
pub mod poly;
pub mod quad;
pub mod simplex;
pub mod table;
pub mod univariate;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/jacobi.md")]
    mod jacobi {}
    #[doc = include_str!("../../../book/src/hahn.md")]
    mod hahn {}
    #[doc = include_str!("../../../book/src/krawtchouk.md")]
    mod krawtchouk {}
    #[doc = include_str!("../../../book/src/poisson.md")]
    mod poisson {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
