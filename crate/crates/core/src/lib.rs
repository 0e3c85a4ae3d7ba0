//! Exact tropical algebra over the max-plus semifield of rationals.
//!
//! Values live in logarithmic scale: ⊕ is `max`, ⊗ is `+`, and the
//! semifield identity 𝟙 is the rational 0. Every geometric predicate is
//! decided by an exact rational simplex, so there are no tolerances anywhere.

pub mod cellgeo;
pub mod cornerint;
pub mod error;
pub mod hodecomp;
pub mod kernelalg;
pub mod ratlp;
pub mod skeletons;
pub mod tropexpr;
pub mod tropnum;

pub use cellgeo::Cell;
pub use cornerint::{CiReport, Side, Violation};
pub use error::{Result, TropError};
pub use hodecomp::{Classification, HdimReport, HoComponent};
pub use kernelalg::{KernelGen, Membership};
pub use ratlp::{Affine, LpOutcome, Polyhedron, Sense};
pub use skeletons::SkelSet;
pub use tropexpr::{parse, EvalResult, Expr, Monomial, RatFunc, Term, TropPoly};
pub use tropnum::{Q, TropScalar};
