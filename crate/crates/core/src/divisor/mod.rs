//! Named divisors on the cone, the lines `L_i`, the special points `r_i` and
//! `s_i`, base loci of the spaces `V_{2n}`, and the `tau`-invariant curves.

mod base;
mod curves;
mod expr;
mod lines;

pub use base::{
    base_locus, c_form, c_product, cleared_monomial, cleared_section, section_vanishes, BaseLocus, Transversality,
};
pub use curves::{
    curve_intersection, div_f_factored, double_line_identity, fixed_points_p1, invariance_scalar, invariant_curve,
    orbit_geometry_report, OrbitGeometryReport,
};
pub use expr::{div_f, div_monomial, lline, DivisorExpr, PrimeName};
pub use lines::{
    binary_quadratic_roots, d_form, line_base_point, line_index_of, meet_line_form, meet_line_hyperplane, on_line, r0,
    s1, special_points, LineMeet, LineParam, SpecialPoints, D_FORM, R_FORM, S_FORM,
};
