//! The skew polynomial ring over the function field of the cone, the map
//! `rho` from U(W+), and the graded pieces `V_n` of its image.

mod generators;
mod hilbert;
mod modp;
mod ring;

pub use generators::{
    check_birational, eval_fpoly, fun0, fun1, fun2, fun2_alternative, fun3, generator_check, routine_a2,
    BirationalCheck, FPoly, GeneratorCheck,
};
pub use hilbert::{
    gk_slope, sample_points, slope_from_dims, vn_dim, vn_dim_with, vn_eval_rank, vn_eval_rank_exact, vn_monomials,
    vn_upper_bound, DimMethod, HilbertOptions, HilbertRow, HilbertTable, SlopeEstimate, SpanSpace,
};
pub use ring::{
    relation_as_rat, rho, rho_by_products, rho_linear, rho_relation5, rho_relation7, skew_equal, skew_mul,
    verify_rho_relations, word_indices, FTable, SkewElt,
};
