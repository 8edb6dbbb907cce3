//! Exact arithmetic for a four-parameter deformation of the affine Hecke
//! algebra of type A, its discrete Hamiltonian and Bethe wave functions, and
//! the stochastic particle system in which several particles on a site can
//! jump together.
//!
//! All algebra is done over [`Scalar`], an arbitrary-precision rational, so
//! every relation is checked with `==`. Only the simulator uses `f64`.
//!
//! ```
//! use deformed_hecke::hamiltonian::{apply_h, BetheFunction};
//! use deformed_hecke::lattice::LatticePoint;
//! use deformed_hecke::params::Params;
//! use deformed_hecke::scalar::ratio;
//!
//! let p = Params::parse("2/3:-1/2:5/4:3/7", 2).unwrap();
//! let phi = BetheFunction::new(&[ratio(3, 2), ratio(-2, 5)], &p).unwrap();
//! let f = phi.to_function();
//! let x = LatticePoint::from([1, 1]);
//! assert_eq!(apply_h(&f, &p).unwrap().eval(&x), phi.eigenvalue() * f.eval(&x));
//! ```
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doctests of this crate.

pub mod error;
pub mod function;
pub mod hamiltonian;
pub mod identities;
pub mod laurent;
pub mod lattice;
pub mod operators;
pub mod params;
pub mod sampling;
pub mod scalar;
pub mod stochastic;
pub mod verify;

pub use error::{Error, Result};
pub use function::LatticeFunction;
pub use laurent::LaurentPolynomial;
pub use lattice::{LatticePoint, WeylWord};
pub use params::Params;
pub use scalar::Scalar;
pub use stochastic::{ParticleConfig, StochasticParams};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/hamiltonian.md")]
    mod hamiltonian {}
    #[doc = include_str!("../../../book/src/bethe.md")]
    mod bethe {}
    #[doc = include_str!("../../../book/src/stochastic.md")]
    mod stochastic {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
