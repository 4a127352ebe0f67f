//! Exact computations with graded modules over algebras graded by finite abelian groups.
//!
//! Scalars live in cyclotomic fields ℚ(ζ_N); everything is computed exactly. The main
//! constructions are loop and induced modules, maximal graded subfields of centralizers,
//! central images, isotypic decompositions, graded Brauer invariants and graded envelopes
//! of ungraded simple modules.

pub mod abgroup;
pub mod arith;
pub mod central;
pub mod corpus;
pub mod doc;
pub mod envelope;
pub mod error;
pub mod fixtures;
pub mod galg;
pub mod gmod;
pub mod invars;
pub mod loopfun;

pub use abgroup::{Bicharacter, Character, Elem, FinAbGroup, QuotientMap, Subgroup};
pub use arith::{CycScalar, Matrix, Rational};
pub use central::{CentralImage, Decomposition, SubfieldWithAug};
pub use envelope::EnvelopeResult;
pub use error::{Error, Result};
pub use galg::{Cocycle, GradedAlgebra};
pub use gmod::{Centralizer, GradedMap, GradedModule, Simplicity};
pub use invars::{BrauerInvariant, DivisionAlgebraProfile};
pub use loopfun::{InducedModule, LoopModule};
