use proptest::prelude::*;
use witt_core::cone::{cone_vars, reduce, ConePoly};
use witt_core::exact::{ri, Mono, MultiPoly, MAX_VARS};
use witt_core::thick::{dual_product, j_space_at_r0, restrict, thick_mul, DualFn, ThickSkewElt, ThickSpaces};

fn form(degree: u16) -> impl Strategy<Value = ConePoly> {
    prop::collection::vec((0u16..=degree, 0u16..=degree, 0u16..=degree, -5i64..=5), 1..6).prop_map(move |terms| {
        let mut p = MultiPoly::zero(&cone_vars());
        for (a, b, c, k) in terms {
            let a = a.min(degree);
            let b = b.min(degree - a);
            let c = c.min(degree - a - b);
            let mut m: Mono = [0; MAX_VARS];
            m[0] = a;
            m[1] = b;
            m[2] = c;
            m[3] = degree - a - b - c;
            p.add_term(m, ri(k));
        }
        reduce(&p)
    })
}

fn nonzero_form() -> impl Strategy<Value = ConePoly> {
    (0u16..=4).prop_flat_map(form).prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn restriction_is_a_ring_map(g in nonzero_form(), h in nonzero_form()) {
        let lhs = restrict(&(&g * &h)).unwrap();
        let rhs = dual_product(&restrict(&g).unwrap(), &restrict(&h).unwrap());
        prop_assert_eq!(lhs.coords(), rhs.coords());
    }

    #[test]
    fn restriction_commutes_with_tau(g in nonzero_form(), k in -3i64..=3) {
        let lhs = restrict(&g.pullback(k)).unwrap();
        let rhs = restrict(&g).unwrap().pullback(k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn thick_product_is_associative(a in nonzero_form(), b in nonzero_form(), c in nonzero_form()) {
        let (a, b, c) = (restrict(&a).unwrap(), restrict(&b).unwrap(), restrict(&c).unwrap());
        let left = thick_mul(&thick_mul(&a, &b).unwrap(), &c).unwrap();
        let right = thick_mul(&a, &thick_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn skew_product_matches_restricted_product(g in nonzero_form(), h in nonzero_form()) {
        let n = g.homogeneous_degree().unwrap().unwrap_or(0);
        let product = &g * &h.pullback(2 * n as i64);
        let a = ThickSkewElt::monomial(restrict(&g).unwrap());
        let b = ThickSkewElt::monomial(restrict(&h).unwrap());
        let ab = a.mul(&b).unwrap();
        let expected = restrict(&product).unwrap();
        prop_assert_eq!(ab.coeff(expected.twist()).coords(), expected.coords());
    }
}

#[test]
fn j_is_a_left_ideal_inside_the_r0_part() {
    let s = ThickSpaces::new(8).unwrap();
    for n in 0..=7u32 {
        for k in 1..=8 - n {
            let target = &s.j[(n + k) as usize];
            let at_r0 = j_space_at_r0(n + k).unwrap();
            for a in &s.t[n as usize].basis {
                for b in &s.j[k as usize].basis {
                    let p = thick_mul(a, b).unwrap();
                    assert!(p.g0().is_zero());
                    assert!(target.contains(&p), "T_{n} J_{k}");
                    assert!(n == 0 || at_r0.contains(&p), "T_{n} J_{k} at r0");
                }
            }
        }
    }
}

#[test]
fn epsilon_is_nilpotent_and_fixed() {
    let e = DualFn::epsilon();
    assert!(dual_product(&e, &e).is_zero());
    for k in -4..=4 {
        assert_eq!(e.pullback(k), e);
    }
    assert_eq!(restrict(&ConePoly::linear([1, 0, 4, 2])).unwrap(), e);
}
