//! The quadric cone `xz = y^2` in `P^3`: its coordinate ring, rational
//! functions, the automorphism `tau`, points and orbits.

mod point;
mod rat;
mod ring;

pub use point::{orbit, project_pi, sigma_matrix, sigma_pow, tau_point, Orbit, OrbitAction, ProjPoint1, ProjPoint3};
pub use rat::{base_f, eval, f_index, rat_equal, tau_pullback, ConeRat};
pub use ring::{cone_vars, param, param_vars, reduce, tau_matrix, tau_matrix_pow, ConePoly, ParamForm};
