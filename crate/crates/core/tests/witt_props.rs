use proptest::prelude::*;
use witt_core::exact::{mat_rank, ri, QMatrix, Rational};
use witt_core::witt::{
    env_dim, ideal_membership, lie_bracket, pbw_basis, pbw_product, rel5, rel7, straighten, words_of_degree, FreeNC,
    FreeWord, LieElement,
};

fn word(max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(1u8..=2, 0..=max_len).prop_map(FreeWord::new)
}

fn free_poly(max_len: usize) -> impl Strategy<Value = FreeNC> {
    prop::collection::vec((word(max_len), -3i64..=3), 1..4).prop_map(|terms| {
        let mut p = FreeNC::zero();
        for (w, c) in terms {
            p.add_term(w, ri(c));
        }
        p
    })
}

fn lie_elt() -> impl Strategy<Value = LieElement> {
    prop::collection::vec((-8i64..=8, -4i64..=4), 1..4)
        .prop_map(|terms| terms.iter().fold(LieElement::zero(), |acc, &(n, c)| &acc + &LieElement::term(n, ri(c))))
}

#[test]
fn basis_antisymmetry_and_jacobi() {
    for virasoro in [false, true] {
        let b = |x: &LieElement, y: &LieElement| lie_bracket(x, y, virasoro);
        for i in -8..=8 {
            for j in -8..=8 {
                let (a, c) = (LieElement::e(i), LieElement::e(j));
                assert!((&b(&a, &c) + &b(&c, &a)).is_zero());
                for k in -8..=8 {
                    let e = LieElement::e(k);
                    let jac = &(&b(&a, &b(&c, &e)) + &b(&c, &b(&e, &a))) + &b(&e, &b(&a, &c));
                    assert!(jac.is_zero(), "({i},{j},{k}) virasoro={virasoro}");
                }
            }
        }
    }
}

#[test]
fn straightened_words_span_the_pbw_space() {
    for n in 1..=10u32 {
        let basis = pbw_basis(n);
        let rows: Vec<Vec<Rational>> = words_of_degree(n)
            .into_iter()
            .map(|w| {
                let s = straighten(&FreeNC::word(w));
                basis.iter().map(|m| s.coeff(m)).collect()
            })
            .collect();
        let rank = mat_rank(&QMatrix::from_rows(&rows).unwrap(), false).unwrap();
        assert_eq!(rank as u64, env_dim(n), "degree {n}");
    }
}

/// Partitions of `n` counted by direct recursion on the largest part.
fn partitions(n: u32, max: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|k| partitions(n - k, k)).sum()
}

#[test]
fn env_dim_counts_partitions() {
    for n in 0..=30 {
        assert_eq!(env_dim(n), partitions(n, n));
        assert_eq!(pbw_basis(n).len() as u64, env_dim(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(a in lie_elt(), b in lie_elt(), c in lie_elt(), virasoro in any::<bool>()) {
        let br = |x: &LieElement, y: &LieElement| lie_bracket(x, y, virasoro);
        prop_assert!((&br(&a, &b) + &br(&b, &a)).is_zero());
        let jac = &(&br(&a, &br(&b, &c)) + &br(&b, &br(&c, &a))) + &br(&c, &br(&a, &b));
        prop_assert!(jac.is_zero());
        prop_assert_eq!(br(&(&a + &b), &c), &br(&a, &c) + &br(&b, &c));
    }

    #[test]
    fn straighten_is_multiplicative(p in free_poly(4), q in free_poly(4)) {
        let lhs = straighten(&(&p * &q));
        let rhs = pbw_product(&straighten(&p), &straighten(&q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn relations_straighten_to_zero_in_context(x in word(2), y in word(2)) {
        for rel in [rel5(), rel7()] {
            let wrapped = &(&FreeNC::word(x.clone()) * &rel) * &FreeNC::word(y.clone());
            prop_assert!(straighten(&wrapped).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn two_sided_multiples_lie_in_the_ideal(x in word(3), y in word(3)) {
        let extra = x.degree() + y.degree();
        prop_assume!(extra <= 3);
        let g = rel5();
        let target = &(&FreeNC::word(x) * &g) * &FreeNC::word(y);
        prop_assert!(ideal_membership(&target, &g, 5 + extra).unwrap());
    }
}
