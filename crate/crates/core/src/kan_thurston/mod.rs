//! The Kan–Thurston construction: acyclic kits and the functor `T`.

mod functor;
mod kit;

pub use functor::{
    filtration_check, kt_build, kt_build_with, kt_fixed, kt_map, kt_quotient, processing_order,
    t_dimension_law, t_prime_build, u_dimension_law, FiltrationLevel, FiltrationReport, KtResult,
    TOrigin, UOrigin, UPart, PATH_LENGTH,
};
pub use kit::{aa_pipeline, build_aa_pair, mock_kit, AaPipeline, AcyclicKit, LOOP_LENGTH};
