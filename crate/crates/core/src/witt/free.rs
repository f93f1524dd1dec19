use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, primitive_integer_vector, ri, Echelon, Rational};

/// A word in the letters `e1`, `e2`; letter `i` stands for `e_i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeWord(Vec<u8>);

impl FreeWord {
    pub fn new(letters: Vec<u8>) -> Self {
        assert!(letters.iter().all(|&l| l == 1 || l == 2), "letters must be 1 or 2");
        FreeWord(letters)
    }

    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    /// Parses a digit string such as `"1121"`.
    pub fn from_digits(s: &str) -> Self {
        Self::new(s.bytes().map(|b| b - b'0').collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&l| l as u32).sum()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "e{l}")?;
            } else {
                write!(f, "e{l}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All words of the given degree, in lexicographic order of letters.
pub fn words_of_degree(d: u32) -> Vec<FreeWord> {
    fn go(rem: u32, cur: &mut Vec<u8>, out: &mut Vec<FreeWord>) {
        if rem == 0 {
            out.push(FreeWord(cur.clone()));
            return;
        }
        for l in [1u8, 2] {
            if l as u32 <= rem {
                cur.push(l);
                go(rem - l as u32, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut out);
    out
}

/// Noncommutative polynomial in `e1`, `e2` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeNC {
    terms: BTreeMap<FreeWord, Rational>,
}

impl FreeNC {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: FreeWord) -> Self {
        Self::term(w, ri(1))
    }

    pub fn term(w: FreeWord, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn one() -> Self {
        Self::word(FreeWord::empty())
    }

    /// Builds a polynomial from `(coefficient, digit word)` pairs.
    pub fn from_pairs(pairs: &[(i64, &str)]) -> Self {
        let mut out = Self::zero();
        for (c, w) in pairs {
            out.add_term(FreeWord::from_digits(w), ri(*c));
        }
        out
    }

    pub fn add_term(&mut self, w: FreeWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &FreeWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common degree of all words, `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for w in self.terms.keys() {
            match deg {
                None => deg = Some(w.degree()),
                Some(d) if d != w.degree() => return Err(Error::InhomogeneousInput),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn scale(&self, s: &Rational) -> FreeNC {
        let mut out = FreeNC::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }
}

impl std::ops::Add for &FreeNC {
    type Output = FreeNC;
    fn add(self, rhs: &FreeNC) -> FreeNC {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &FreeNC {
    type Output = FreeNC;
    fn sub(self, rhs: &FreeNC) -> FreeNC {
        self + &rhs.scale(&ri(-1))
    }
}

impl std::ops::Mul for &FreeNC {
    type Output = FreeNC;
    fn mul(self, rhs: &FreeNC) -> FreeNC {
        let mut out = FreeNC::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for FreeNC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if c.is_one() { w.to_string() } else { format!("{}*{}", fmt_rational(c), w) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FreeNC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeNC({self})")
    }
}

/// The degree-5 defining relation of U(W+) in the generators e1, e2.
pub fn rel5() -> FreeNC {
    FreeNC::from_pairs(&[(1, "1112"), (-3, "1121"), (3, "1211"), (-1, "2111"), (6, "221"), (-12, "212"), (6, "122")])
}

/// The degree-7 defining relation of U(W+) in the generators e1, e2.
pub fn rel7() -> FreeNC {
    FreeNC::from_pairs(&[
        (1, "111112"),
        (-5, "111121"),
        (10, "111211"),
        (-10, "112111"),
        (5, "121111"),
        (-1, "211111"),
        (40, "2221"),
        (-120, "2212"),
        (120, "2122"),
        (-40, "1222"),
    ])
}

/// Commutator `ab - ba` in the free algebra.
pub fn commutator(a: &FreeNC, b: &FreeNC) -> FreeNC {
    &(a * b) - &(b * a)
}

/// Coordinates of a homogeneous element against the word basis of its degree.
fn word_coordinates(p: &FreeNC, index: &BTreeMap<FreeWord, usize>) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); index.len()];
    for (w, c) in p.terms() {
        v[index[w]] = c.clone();
    }
    v
}

/// Degree-`degree` component of the two-sided ideal generated by
/// `generators` in the free algebra, as an echelon form over the word basis.
pub struct IdealComponent {
    pub degree: u32,
    pub words: Vec<FreeWord>,
    index: BTreeMap<FreeWord, usize>,
    echelon: Echelon,
}

impl IdealComponent {
    pub fn build(generators: &[FreeNC], degree: u32) -> Result<Self> {
        let words = words_of_degree(degree);
        let index: BTreeMap<FreeWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut echelon = Echelon::new(words.len());
        for g in generators {
            let Some(gd) = g.homogeneous_degree()? else { continue };
            if gd > degree {
                continue;
            }
            let rest = degree - gd;
            for left_deg in 0..=rest {
                for a in words_of_degree(left_deg) {
                    for b in words_of_degree(rest - left_deg) {
                        let prod = &(&FreeNC::word(a.clone()) * g) * &FreeNC::word(b);
                        let v = word_coordinates(&prod, &index);
                        echelon.insert(primitive_integer_vector(&v));
                    }
                }
            }
        }
        Ok(IdealComponent { degree, words, index, echelon })
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.words.len()
    }

    pub fn contains(&self, p: &FreeNC) -> Result<bool> {
        match p.homogeneous_degree()? {
            None => Ok(true),
            Some(d) if d != self.degree => Err(Error::InhomogeneousInput),
            Some(_) => {
                let v = word_coordinates(p, &self.index);
                Ok(self.echelon.contains_rational(&v))
            }
        }
    }
}

/// Whether `target` lies in the two-sided ideal of the free algebra
/// generated by `generator`, decided in the given degree.
pub fn ideal_membership(target: &FreeNC, generator: &FreeNC, degree: u32) -> Result<bool> {
    let gd = generator.homogeneous_degree()?;
    if let Some(gd) = gd {
        if gd > degree {
            return Err(Error::InhomogeneousInput);
        }
    }
    match target.homogeneous_degree()? {
        Some(d) if d != degree => return Err(Error::InhomogeneousInput),
        None => return Ok(true),
        _ => {}
    }
    IdealComponent::build(std::slice::from_ref(generator), degree)?.contains(target)
}
