use std::collections::BTreeMap;
use std::fmt;

use crate::cone::{base_f, rat_equal, ConePoly, ConeRat};
use crate::witt::{FreeNC, FreeWord};

/// The pullbacks `f_0, ..., f_{len-1}`, computed once by repeated `tau`.
#[derive(Clone, Debug)]
pub struct FTable {
    fs: Vec<ConeRat>,
}

impl FTable {
    pub fn new(len: usize) -> Self {
        let mut fs = Vec::with_capacity(len);
        let mut cur = base_f();
        for _ in 0..len {
            let next = cur.pullback(1);
            fs.push(cur);
            cur = next;
        }
        FTable { fs }
    }

    pub fn len(&self) -> usize {
        self.fs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fs.is_empty()
    }

    pub fn f(&self, i: usize) -> &ConeRat {
        &self.fs[i]
    }

    pub fn num(&self, i: usize) -> &ConePoly {
        self.fs[i].num()
    }

    pub fn den(&self, i: usize) -> &ConePoly {
        self.fs[i].den()
    }

    /// `f_{i_1} ... f_{i_k}` as a fraction.
    pub fn product(&self, idx: &[usize]) -> ConeRat {
        idx.iter().fold(ConeRat::one(), |acc, &i| &acc * &self.fs[i])
    }

    /// Numerator of `sum_S c_S f_S` over the common denominator
    /// `D_0 D_1 ... D_{top}`, where `D_i` is the denominator of `f_i`.
    pub fn common_numerator(&self, terms: &[(i64, Vec<usize>)], top: usize) -> ConePoly {
        let mut acc = ConePoly::zero();
        for (c, idx) in terms {
            let mut p = ConePoly::constant(crate::exact::ri(*c));
            for i in 0..=top {
                let factor = if idx.contains(&i) { self.num(i) } else { self.den(i) };
                p = &p * factor;
            }
            acc = &acc + &p;
        }
        acc
    }

    /// The common denominator `D_0 ... D_{top}`.
    pub fn common_denominator(&self, top: usize) -> ConePoly {
        (0..=top).fold(ConePoly::one(), |acc, i| &acc * self.den(i))
    }
}

/// Element `sum_n g_n t^n` of the skew polynomial ring over the function
/// field of the cone, with `t g = (g o tau) t`.
#[derive(Clone, Default)]
pub struct SkewElt {
    coeffs: BTreeMap<u32, ConeRat>,
}

impl SkewElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(ConeRat::one(), 0)
    }

    pub fn t() -> Self {
        Self::monomial(ConeRat::one(), 1)
    }

    /// `g t^n`.
    pub fn monomial(g: ConeRat, n: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(n, g);
        out
    }

    pub fn coeff(&self, n: u32) -> ConeRat {
        self.coeffs.get(&n).cloned().unwrap_or_else(ConeRat::zero)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&u32, &ConeRat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, n: u32, g: ConeRat) {
        if g.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&n) {
            Some(old) => &old + &g,
            None => g,
        };
        if !sum.is_zero() {
            self.coeffs.insert(n, sum);
        }
    }
}

impl std::ops::Add for &SkewElt {
    type Output = SkewElt;
    fn add(self, rhs: &SkewElt) -> SkewElt {
        let mut out = self.clone();
        for (n, g) in &rhs.coeffs {
            out.add_term(*n, g.clone());
        }
        out
    }
}

/// Product in the skew ring: `(a_n t^n)(b_m t^m) = a_n (b_m o tau^n) t^{n+m}`.
pub fn skew_mul(a: &SkewElt, b: &SkewElt) -> SkewElt {
    let mut out = SkewElt::zero();
    for (n, an) in &a.coeffs {
        for (m, bm) in &b.coeffs {
            out.add_term(n + m, an * &bm.pullback(*n as i64));
        }
    }
    out
}

/// Equality with coefficients compared as functions on the cone.
pub fn skew_equal(a: &SkewElt, b: &SkewElt) -> bool {
    let degrees: std::collections::BTreeSet<u32> = a.coeffs.keys().chain(b.coeffs.keys()).copied().collect();
    degrees.into_iter().all(|n| rat_equal(&a.coeff(n), &b.coeff(n)))
}

impl fmt::Display for SkewElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(n, g)| format!("[{g}]*t^{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SkewElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElt({self})")
    }
}

/// Positions of the letters `e2` in the expansion `rho(word) = f_{i_1} ... f_{i_k} t^n`:
/// a letter `e2` preceded by letters of total degree `i` contributes `f_i`.
pub fn word_indices(word: &FreeWord) -> Vec<usize> {
    let mut pos = 0usize;
    let mut out = Vec::new();
    for &l in word.letters() {
        if l == 2 {
            out.push(pos);
        }
        pos += l as usize;
    }
    out
}

/// `rho(e1) = t`, `rho(e2) = f t^2`, extended multiplicatively.
pub fn rho(word: &FreeWord) -> SkewElt {
    let n = word.degree();
    let idx = word_indices(word);
    let ft = FTable::new(idx.last().map_or(0, |&i| i + 1));
    SkewElt::monomial(ft.product(&idx), n)
}

/// `rho` applied by multiplying the letter images one at a time.
pub fn rho_by_products(word: &FreeWord) -> SkewElt {
    let e2 = SkewElt::monomial(base_f(), 2);
    word.letters().iter().fold(SkewElt::one(), |acc, &l| {
        let img = if l == 1 { SkewElt::t() } else { e2.clone() };
        skew_mul(&acc, &img)
    })
}

/// `rho` extended linearly to the free algebra.
pub fn rho_linear(p: &FreeNC) -> SkewElt {
    let mut out = SkewElt::zero();
    for (w, c) in p.terms() {
        let r = rho(w);
        for (n, g) in r.degrees() {
            out.add_term(*n, g.scale(c));
        }
    }
    out
}

/// Coefficients of the degree-5 identity as `(c, S)` pairs for `sum c f_S`.
pub fn rho_relation5(six: i64) -> Vec<(i64, Vec<usize>)> {
    vec![
        (1, vec![3]),
        (-3, vec![2]),
        (3, vec![1]),
        (-1, vec![0]),
        (six, vec![0, 2]),
        (-2 * six, vec![0, 3]),
        (six, vec![1, 3]),
    ]
}

/// Coefficients of the degree-7 identity.
pub fn rho_relation7(forty: i64) -> Vec<(i64, Vec<usize>)> {
    vec![
        (1, vec![5]),
        (-5, vec![4]),
        (10, vec![3]),
        (-10, vec![2]),
        (5, vec![1]),
        (-1, vec![0]),
        (forty, vec![0, 2, 4]),
        (-3 * forty, vec![0, 2, 5]),
        (3 * forty, vec![0, 3, 5]),
        (-forty, vec![1, 3, 5]),
    ]
}

/// The identity `sum c_S f_S` as a single fraction over `D_0 ... D_top`.
pub fn relation_as_rat(ft: &FTable, terms: &[(i64, Vec<usize>)]) -> ConeRat {
    let top = terms.iter().flat_map(|(_, s)| s.iter().copied()).max().unwrap_or(0);
    let num = ft.common_numerator(terms, top);
    ConeRat::new(num, ft.common_denominator(top)).expect("denominators are nonzero")
}

/// Both identities satisfied by `f_0, ..., f_5` that make `rho` well defined.
pub fn verify_rho_relations() -> bool {
    let ft = FTable::new(6);
    let zero = ConeRat::zero();
    rat_equal(&relation_as_rat(&ft, &rho_relation5(6)), &zero)
        && rat_equal(&relation_as_rat(&ft, &rho_relation7(40)), &zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{f_index, ProjPoint3};
    use crate::witt::{rel5, rel7};

    fn w(s: &str) -> FreeWord {
        FreeWord::from_digits(s)
    }

    #[test]
    fn skew_mul_examples() {
        let f = base_f();
        let tf = skew_mul(&SkewElt::t(), &SkewElt::monomial(f.clone(), 0));
        assert!(skew_equal(&tf, &SkewElt::monomial(f_index(1), 1)));
        let ft2 = SkewElt::monomial(f.clone(), 2);
        let sq = skew_mul(&ft2, &ft2);
        assert!(skew_equal(&sq, &SkewElt::monomial(&f * &f_index(2), 4)));
        assert!(skew_equal(&skew_mul(&ft2, &SkewElt::one()), &ft2));
    }

    #[test]
    fn rho_examples() {
        for i in 0..3 {
            for j in 0..3 {
                let digits = format!("{}2{}", "1".repeat(i), "1".repeat(j));
                let r = rho(&w(&digits));
                let expected = SkewElt::monomial(f_index(i as i64), (i + j + 2) as u32);
                assert!(skew_equal(&r, &expected));
            }
        }
        let r = rho(&w("221"));
        assert!(skew_equal(&r, &SkewElt::monomial(&f_index(0) * &f_index(2), 5)));
        assert!(skew_equal(&rho(&FreeWord::empty()), &SkewElt::one()));
    }

    #[test]
    fn direct_rho_matches_letter_products() {
        for d in 0..=6 {
            for word in crate::witt::words_of_degree(d) {
                assert!(skew_equal(&rho(&word), &rho_by_products(&word)), "{word}");
            }
        }
    }

    #[test]
    fn relations_hold() {
        assert!(verify_rho_relations());
        assert!(rho_linear(&rel5()).is_zero());
        assert!(rho_linear(&rel7()).is_zero());
    }

    #[test]
    fn perturbed_relation_is_detected() {
        let ft = FTable::new(6);
        let bad = relation_as_rat(&ft, &rho_relation5(7));
        let p = ProjPoint3::from_i64([1, 1, 1, 1]).unwrap();
        assert_ne!(bad.eval(&p).unwrap(), crate::exact::ri(0));
    }
}
