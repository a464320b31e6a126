//! Exact arithmetic for the degree-6 del Pezzo surface and the Burniat
//! surfaces with `K^2 = 6` that cover it.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`]: the Picard lattice `Z^4 = <l, e1, e2, e3>`, its intersection
//!   form, Riemann–Roch, the six `(-1)`-curves and the numeric pullback along
//!   the degree-4 bicanonical map.
//! * [`exact`]: dense matrices over an exact field, generic over the scalar.
//! * [`linear_systems`]: `h^0` by `(-1)`-curve reduction, an interpolation
//!   oracle for it, Serre duality and rank-2 Euler characteristics.
//! * [`covers`]: invariants of double and bidouble covers.
//! * [`burniat`]: the six-line arrangement, Burniat branch data, the 2-torsion
//!   group `G` and the moduli count.
//! * [`case_arith`]: the small Diophantine and inequality checks used in the
//!   classification arguments.
//!
//! All arithmetic is exact. Lattice coefficients are machine integers with
//! checked operations; rational computations go through [`num_rational`].

pub mod burniat;
pub mod case_arith;
pub mod covers;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod linear_systems;

pub use error::{Error, Result};
pub use lattice::{DivClass, Idx, PullbackClass};

/// Arbitrary-precision rationals; the default scalar of the exact linear algebra.
pub type Rational = num_rational::BigRational;

/// Machine-word rationals, for bounds that provably stay small.
pub type SmallRational = num_rational::Ratio<i64>;

/// Dense matrix over [`Rational`].
pub type RationalMatrix = exact::Matrix<Rational>;

/// Dense matrix over [`SmallRational`].
pub type SmallRationalMatrix = exact::Matrix<SmallRational>;

/// Integer 2x2 symmetric matrix, the shape used for intersection matrices of curve pairs.
pub type IntSymMatrix2 = case_arith::SymMatrix2<i64>;
