//! Exact-arithmetic and truncated-series machinery for equivariant fixed-point
//! index formulas of Hamiltonian loop group spaces.
//!
//! * [`rootsys`]: Cartan data, lattices, Weyl groups.
//! * [`charring`]: sparse Laurent polynomials over the weight lattice.
//! * [`tlevel`]: the finite subgroup `T_ℓ = ℓ⁻¹Λ/Π` and its regular orbits.
//! * [`jetcalc`]: truncated power series, torus jets and the flow solver.
//! * [`poisson`]: both sides of the deformed Poisson summation identity.
//! * [`locindex`]: localization bookkeeping and fixed-point index assembly.
//! * [`models`]: coadjoint-orbit toy and Verlinde model with oracles.
//! * [`selftest`]: seeded property sweep used by the CLI.

pub mod charring;
pub mod error;
pub mod jetcalc;
pub mod locindex;
pub mod models;
pub mod poisson;
pub mod random;
pub mod rootsys;
pub mod selftest;
pub mod tlevel;

pub use error::{Error, Result};

/// Absolute tolerance under which complex coefficients are pruned.
pub const PRUNE_TOL: f64 = 1e-12;

/// The character convention `e^λ(exp ξ) = e^{2πi⟨λ,ξ⟩}`.
pub const TWO_PI_I: num_complex::Complex64 = num_complex::Complex64::new(0.0, std::f64::consts::TAU);
