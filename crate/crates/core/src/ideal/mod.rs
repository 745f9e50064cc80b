//! Negligible morphisms and the tensor ideal generated by `JW_{ℓ-1}`.

mod gram;
mod truncation;
mod verify;

pub use gram::{
    gram_matrix, negligible_basis, negligible_basis_generic, pairing_loop_matrix, pairing_loops, pairing_matrix, pairing_rank_mod_p, GramMatrix,
    CERT_PRIME,
};
pub use truncation::{ideal_truncation, two_sided_closure, IdealGenerator, IdealSpan, StopReason, TruncationOptions};
pub use verify::{
    cell_seed, constancy_check, find_partner, verify_even_subcategory, verify_main_theorem, CellReport, ConstancyReport, VerificationReport,
    Verdict, VerifyConfig,
};
