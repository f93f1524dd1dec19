use proptest::prelude::*;
use witt_core::cone::{project_pi, tau_point};
use witt_core::divisor::{
    base_locus, div_f, div_f_factored, div_monomial, line_base_point, lline, on_line, special_points, LineParam,
    PrimeName,
};
use witt_core::exact::{ri, rq};
use witt_core::skew::vn_monomials;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tau_inverse_moves_lines_forward(i in -12i64..=12, a in -30i64..=30, b in 1i64..=9, d in 1i64..=7) {
        let q = LineParam::new(i).point_at(&rq(a, d), &ri(b)).unwrap();
        let moved = tau_point(-1, &q);
        prop_assert!(on_line(i + 1, &moved));
        prop_assert_eq!(project_pi(&moved).unwrap(), line_base_point(i + 1));
        prop_assert!(!on_line(i + 2, &moved));
    }

    #[test]
    fn translation_is_additive(i in -6i64..=6, j in -6i64..=6, k in -4i64..=4) {
        let sum = &div_f(i) + &div_f(j);
        prop_assert_eq!(sum.translate(k), &div_f(i + k) + &div_f(j + k));
        prop_assert!((&sum - &sum).is_zero());
    }
}

#[test]
fn special_points_project_to_line_points() {
    for i in -10..=10 {
        let sp = special_points(i);
        assert_eq!(project_pi(&sp.r).unwrap(), line_base_point(i));
        assert_eq!(project_pi(&sp.s).unwrap(), line_base_point(i));
        assert!(sp.check());
    }
}

#[test]
fn divisors_of_generators_two_ways() {
    for i in -6..=6 {
        assert_eq!(div_f_factored(i).unwrap(), div_f(i), "f_{i}");
    }
}

#[test]
fn spanning_monomials_give_effective_divisors() {
    for n in 1..=6 {
        let ll = lline(n);
        for seq in vn_monomials(2 * n) {
            let (div, effective) = div_monomial(&seq, n).unwrap();
            assert!(effective, "{seq:?}");
            assert!((&div + &ll).is_effective());
        }
    }
}

#[test]
fn base_points_avoid_the_vertex_and_sit_on_known_curves() {
    for n in 1..=4 {
        let b = base_locus(n).unwrap();
        assert!(!b.contains_vertex());
        for q in &b.points {
            let on_a_line = (0..2 * n as i64).any(|i| PrimeName::Line(i).contains(q));
            let on_a_translate = (-2 * n as i64..=2 * n as i64).any(|j| PrimeName::TauD(j).contains(q));
            assert!(on_a_line || on_a_translate, "{q:?}");
        }
    }
}
