//! Exact calculus for quotient surface singularities `A^2/G`.
//!
//! * [`exactmath`]: Hirzebruch-Jung continued fractions, continuants, cusp
//!   multiplicity sequences, exact rational matrices.
//! * [`dualgraph`]: weighted dual graphs, intersection pairing, fundamental
//!   cycles, blow-ups and the log canonical correction they induce.
//! * [`quotient`]: resolution graphs, Platonic forks and the standard
//!   `P^1`-fibered completion with its log canonical class.
//! * [`pencil`]: base-point resolution of the pencil `<aS1 + l, aS1 + l0>` on
//!   a Hirzebruch surface and the contraction back to it.
//! * [`equivariant`]: Keller maps, equivariance and the even-order certificate.

pub mod dualgraph;
pub mod equivariant;
pub mod error;
pub mod exactmath;
pub mod pencil;
pub mod quotient;

pub type Rational = num_rational::BigRational;

pub use dualgraph::{BlowupStep, Center, Divisor, DualGraph};
pub use error::{Error, Result};
pub use equivariant::{GroupAction, PolyEndomorphism, SparsePoly};
pub use exactmath::{Fraction, HJChain, MultiplicitySequence};
pub use pencil::{HirzebruchModel, PencilResolution};
pub use quotient::{CyclicQuotientType, ForkSpec, StandardCompletion};
