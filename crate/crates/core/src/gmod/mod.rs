//! Graded modules, their homomorphisms and simplicity tests.

pub mod hom;
pub mod module;
pub mod simple;

pub use hom::{
    graded_centralizer, intertwiners, intertwiners_ungraded, invertible_in_span, is_isomorphic_graded,
    is_isomorphic_ungraded, solve_intertwining, ungraded_centralizer, Centralizer, IsoOutcome,
};
pub use module::{GradedMap, GradedModule, ModuleReport};
pub use simple::{is_graded_simple, is_simple_ungraded, solve_density, Certificate, Simplicity};
