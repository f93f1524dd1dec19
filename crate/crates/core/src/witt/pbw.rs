use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::free::FreeNC;
use crate::exact::{fmt_rational, ri, Rational};

/// PBW monomial `e_{k1} e_{k2} ... e_{kr}` stored as its nondecreasing index
/// sequence, so `e_1^2 e_3` is `[1, 1, 3]`.
pub type PbwMonomial = Vec<u32>;

/// Element of U(W+) written in the PBW basis.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EnvElement {
    terms: BTreeMap<PbwMonomial, Rational>,
}

impl EnvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: PbwMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `(k_i, alpha_i)` exponent form of a stored monomial.
    pub fn exponent_form(m: &[u32]) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &k in m {
            match out.last_mut() {
                Some((j, a)) if *j == k => *a += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = EnvElement::exponent_form(m)
                    .into_iter()
                    .map(|(k, a)| if a == 1 { format!("e{k}") } else { format!("e{k}^{a}") })
                    .collect();
                let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
                format!("{}*{}", fmt_rational(c), mono)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnvElement({self})")
    }
}

/// Rewrites a linear combination of words in the `e_k` (k >= 1) into PBW
/// normal form by repeatedly replacing the leftmost inversion
/// `e_j e_i` (j > i) with `e_i e_j + (i - j) e_{i+j}`.
pub fn straighten_words(input: BTreeMap<Vec<u32>, Rational>) -> EnvElement {
    let mut pending = input;
    let mut out = EnvElement::zero();
    while let Some((w, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        let Some(p) = w.windows(2).position(|pair| pair[0] > pair[1]) else {
            out.add_term(w, c);
            continue;
        };
        let (j, i) = (w[p], w[p + 1]);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        *pending.entry(swapped).or_insert_with(Rational::zero) += &c;
        let mut merged = Vec::with_capacity(w.len() - 1);
        merged.extend_from_slice(&w[..p]);
        merged.push(i + j);
        merged.extend_from_slice(&w[p + 2..]);
        *pending.entry(merged).or_insert_with(Rational::zero) += c * ri(i as i64 - j as i64);
    }
    out
}

/// Image of a noncommutative polynomial in `e1, e2` in U(W+), in PBW form.
pub fn straighten(p: &FreeNC) -> EnvElement {
    let input: BTreeMap<Vec<u32>, Rational> =
        p.terms().map(|(w, c)| (w.letters().iter().map(|&l| l as u32).collect(), c.clone())).collect();
    straighten_words(input)
}

/// Product in U(W+): concatenate and re-straighten.
pub fn pbw_product(a: &EnvElement, b: &EnvElement) -> EnvElement {
    let mut input: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let mut w = ma.clone();
            w.extend_from_slice(mb);
            *input.entry(w).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    straighten_words(input)
}

/// Dimension of the degree-`n` part of U(W+): the number of partitions of `n`.
pub fn env_dim(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p[n]
}

/// All PBW monomials of degree `n`, i.e. partitions of `n` written as
/// nondecreasing sequences.
pub fn pbw_basis(n: u32) -> Vec<PbwMonomial> {
    fn go(rem: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<PbwMonomial>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for k in min..=rem {
            cur.push(k);
            go(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}
