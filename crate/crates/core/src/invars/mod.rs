//! Classification invariants of graded simple modules: division-algebra profiles, the graded
//! Brauer invariant, inertia groups, Schur indices and explicit simple-module models.

pub mod brauer;
pub mod endo;
pub mod model;
pub mod profile;

pub use brauer::{
    brauer_invariant, brauer_invariant_at, centralizer_profile, division_algebras_isomorphic, inertia_by_search,
    inertia_group, reduced_division_algebra, reduced_profile, rescaling_witness, schur_index, BrauerInvariant,
    InertiaReport,
};
pub use endo::{grade_endomorphism_algebra, EndGrading};
pub use model::{
    default_section, isotropic_complement, model, simple_module_model, smash_model, ModelChecks, ModelKind, SimpleModel,
};
pub use profile::{
    profile, profile_with_checks, random_bilinear_cocycle, random_division_algebra, random_group, reduce_bicharacter,
    DivisionAlgebraProfile, ProfileChecks,
};
