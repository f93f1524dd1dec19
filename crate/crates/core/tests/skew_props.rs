use std::collections::HashMap;

use proptest::prelude::*;
use witt_core::skew::{
    rho, rho_by_products, rho_linear, skew_equal, skew_mul, vn_dim, vn_eval_rank_exact, FTable, SkewElt,
};
use witt_core::witt::{env_dim, rel5, rel7, straighten, words_of_degree, FreeNC, FreeWord};

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn rho_is_multiplicative_on_word_pairs() {
    let words: Vec<FreeWord> = (0..=10).flat_map(words_of_degree).collect();
    let images: HashMap<FreeWord, SkewElt> = words.iter().map(|w| (w.clone(), rho(w))).collect();
    let mut checked = 0;
    for a in &words {
        for b in &words {
            if a.degree() + b.degree() > 10 {
                continue;
            }
            let lhs = &images[&a.concat(b)];
            let rhs = skew_mul(&images[a], &images[b]);
            assert!(skew_equal(lhs, &rhs), "{a} * {b}");
            assert!(rhs.degrees().all(|(n, _)| *n == a.degree() + b.degree()));
            checked += 1;
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn relations_map_to_zero() {
    let zero = SkewElt::zero();
    assert!(skew_equal(&rho_linear(&rel5()), &zero));
    assert!(skew_equal(&rho_linear(&rel7()), &zero));
}

#[test]
fn dimensions_respect_both_bounds() {
    for n in 0..=12u32 {
        let d = vn_dim(n as usize, false).unwrap().dim;
        assert!(d as u64 <= env_dim(n), "n={n}");
    }
    for n in 0..=6i64 {
        let cone_hilbert = binom(n + 3, 3) - binom(n + 1, 3);
        assert_eq!(cone_hilbert, (n + 1) * (n + 1));
        let d = vn_dim(2 * n as usize, false).unwrap().dim as i64;
        assert!(d <= cone_hilbert, "n={n}");
    }
}

#[test]
fn symbolic_rank_matches_exact_evaluation() {
    let ft = FTable::new(8);
    for n in 0..=8 {
        assert_eq!(vn_dim(n, true).unwrap().dim, vn_eval_rank_exact(&ft, n, 17 + n as u64).unwrap(), "n={n}");
    }
}

fn word(max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(1u8..=2, 0..=max_len).prop_map(FreeWord::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn kernel_contains_wrapped_relations(a in word(3), b in word(3), seven in any::<bool>()) {
        let (rel, deg) = if seven { (rel7(), 7) } else { (rel5(), 5) };
        prop_assume!(a.degree() + b.degree() + deg <= 10);
        let p = &(&FreeNC::word(a) * &rel) * &FreeNC::word(b);
        prop_assert!(straighten(&p).is_zero());
        prop_assert!(skew_equal(&rho_linear(&p), &SkewElt::zero()));
    }

    #[test]
    fn closed_form_matches_letter_products(w in word(8)) {
        prop_assert!(skew_equal(&rho(&w), &rho_by_products(&w)));
    }
}
