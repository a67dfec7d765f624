//! Localization at a constant, dilation, unimodular completion and
//! local-global patching.

mod dilation;
mod localized;
mod patch;
mod unimodular;

pub use dilation::{
    difference_exponent, difference_matrix, dilate_difference, dilate_pullback, dilation_exponent,
    pull_back,
};
pub use localized::{common_denominator, injectivity_check, LocRing, LocalizedPoly};
pub use patch::{
    comaximal_powers, commutator_patch, telescoping_patch, ComaximalData, FactorCertificate,
    LocalCommutatorData, PatchFactor, PatchWitness,
};
pub use unimodular::{complete_unimodular, SemilocalInstance};
