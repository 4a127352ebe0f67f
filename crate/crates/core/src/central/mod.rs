//! Central images of graded modules with respect to maximal graded subfields.

pub mod decompose;
pub mod image;
pub mod subfield;
pub mod twist;

pub use decompose::{
    central_idempotents, central_images_are_twists, decompose, loop_iso_implies_twist, pair_morphism_counts,
    reconstruct_from_isotypic, Decomposition, DecompositionReport, IsotypicClass, IsotypicPiece, PairMorphismCount,
    Reconstruction,
};
pub use image::{central_image, pair_isomorphism, pair_morphisms, CentralImage, CentralImageReport};
pub use subfield::{maximal_graded_subfields, subfields_of, SubfieldWithAug};
pub use twist::{twist_by_character, twist_comparison_map};
