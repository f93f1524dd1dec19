//! The doubled curve `Y = 2 C_r` in first-order coordinates: sections as dual
//! numbers `g0 + g1 eps`, the restriction map, the spaces `T_n` and `J_n`, the
//! generation claim in two degrees and the witness that `J` is not finitely
//! generated.

mod dual;
mod spaces;

pub use dual::{dual_product, restrict, tau_bar_matrix, thick_mul, uv_vars, DualFn, ThickSkewElt};
pub use spaces::{
    alpha, alpha_homomorphism_check, alpha_image, cone_monomials, fg_claim2, fg_report, h0m, j_space, j_space_at_r0,
    nonfg_witness, r0_param, restrict_equivariance_check, restrict_ring_map_check, t_space, DeficiencyRow, FgReport,
    FgRow, GapRow, SectionSpace, ThickSpaces, Witness,
};
