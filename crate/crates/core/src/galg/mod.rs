//! Graded algebras over finite abelian groups.

pub mod algebra;
pub mod structure;
pub mod twisted;

pub use algebra::{radical_of_pairing, radical_via_trace, span_closure, trace_of_product, AlgebraReport, Composition, GradedAlgebra};
pub use structure::{
    center, commutation_bicharacter, idempotents_from_basis, monomial_basis, normalize_elements, normalize_subfield_basis, primitive_central_idempotents, support_subgroup, GradedSubspace,
};
pub use twisted::{smash_product, twisted_group_algebra, twisted_group_algebra_in, Cocycle};
