//! Loop and induced modules.

mod induced;
mod looped;

pub use induced::{
    check_loop_induced, induce, induce_default, phi, phi_raw, psi, psi_raw, shifted_transversal, InducedModule,
    LoopInducedReport,
};
pub use looped::{
    adjunction_dims, centralizer_loop_identity, forgetful, is_thin_associated, loop_module, loop_on_morphism,
    loop_to, loop_transitivity_iso, CentralizerLoopReport, LoopModule,
};
