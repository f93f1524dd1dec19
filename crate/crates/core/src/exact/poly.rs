use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QMatrix, Rational};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// Exponent vector. Unused trailing slots stay zero, so the derived ordering
/// is lexicographic with the first variable largest.
pub type Mono = [u16; MAX_VARS];

/// An ordered sequence of variable names shared between polynomials.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new(names: &[&str]) -> Self {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables supported");
        VarSet(Arc::new(names.iter().map(|s| s.to_string()).collect()))
    }

    /// `x1, ..., xn`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Self::new(&refs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse multivariate polynomial with rational coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Mono, Rational>,
}

pub enum PolyOp<'a> {
    Add(&'a MultiPoly),
    Mul(&'a MultiPoly),
    /// Substitute variable `i` by the linear form `sum_j m[i][j] * var_j`.
    ComposeLinear(&'a QMatrix),
}

pub fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    let mut out = [0u16; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i] + b[i];
    }
    out
}

fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    let mut out = [0u16; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i].checked_sub(b[i])?;
    }
    Some(out)
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert([0; MAX_VARS], c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        assert!(i < vars.len());
        let mut m = [0u16; MAX_VARS];
        m[i] = 1;
        Self::monomial(vars, m, Rational::one())
    }

    pub fn monomial(vars: &VarSet, m: Mono, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds `sum_i coeffs[i] * var_i`.
    pub fn linear(vars: &VarSet, coeffs: &[Rational]) -> Self {
        assert_eq!(coeffs.len(), vars.len());
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = [0u16; MAX_VARS];
                m[i] = 1;
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rational)>>(vars: &VarSet, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&[0; MAX_VARS])
    }

    /// Returns the constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (mono_degree(m) == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(mono_degree).max()
    }

    /// The common degree of all terms; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = mono_degree(m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::InhomogeneousInput),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// Leading term for degree-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().max_by(|a, b| mono_degree(a.0).cmp(&mono_degree(b.0)).then_with(|| a.0.cmp(b.0)))
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = mono_add(ma, mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { vars: self.vars.clone(), terms: acc })
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes variable `i` by `images[i]`; the result lives in the
    /// variable set of the images.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone());
        // powers[i][k] = images[i]^k, grown on demand
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|_| vec![MultiPoly::one(&target)]).collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for i in 0..self.nvars() {
                let e = m[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    /// Substitutes each variable `i` by `sum_j m[i][j] var_j`.
    pub fn compose_linear(&self, m: &QMatrix) -> Result<MultiPoly> {
        let n = self.nvars();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.rows().max(m.cols()) });
        }
        let images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::linear(&self.vars, m.row(i))).collect();
        Ok(self.substitute(&images))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|_| vec![Rational::one()]).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars() {
                let e = m[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                t *= &powers[i][e];
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut dm = *m;
            dm[i] -= 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(m[i])));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if self.vars != d.vars || d.is_zero() {
            return None;
        }
        let (dm, dc) = d.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))?;
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(&self.vars);
        while let Some((rm, rc)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let qm = mono_div(&rm, &dm)?;
            let qc = rc / &dc;
            for (m, c) in &d.terms {
                rem.add_term(mono_add(m, &qm), -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// The positive rational `s` such that `s * self` has coprime integer
    /// coefficients. Returns one for the zero polynomial.
    pub fn content_scale(&self) -> Rational {
        joint_content_scale(&[self])
    }

    /// Coefficients listed against an explicit monomial basis. Terms outside
    /// the basis are reported as `Err`.
    pub fn coefficient_vector(&self, basis: &[Mono]) -> Result<Vec<Rational>> {
        let mut found = 0;
        let v: Vec<Rational> = basis
            .iter()
            .map(|m| {
                let c = self.coeff(m);
                if !c.is_zero() {
                    found += 1;
                }
                c
            })
            .collect();
        if found != self.terms.len() {
            return Err(Error::DimensionMismatch { expected: found, found: self.terms.len() });
        }
        Ok(v)
    }

    /// Moves the polynomial into a different variable set with the same
    /// number of variables (exponent vectors are kept verbatim).
    pub fn rename(&self, vars: &VarSet) -> MultiPoly {
        assert_eq!(vars.len(), self.nvars());
        MultiPoly { vars: vars.clone(), terms: self.terms.clone() }
    }
}

/// Positive rational `s` such that every `s * p` has integer coefficients
/// and the coefficients of all polynomials together are coprime.
pub fn joint_content_scale(polys: &[&MultiPoly]) -> Rational {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for p in polys {
        for c in p.terms.values() {
            l = l.lcm(c.denom());
        }
    }
    for p in polys {
        for c in p.terms.values() {
            let v = (c * Rational::from_integer(l.clone())).to_integer();
            g = g.gcd(&v);
        }
    }
    if g.is_zero() {
        return Rational::one();
    }
    Rational::new(l, g.abs())
}

pub fn poly_arith(a: &MultiPoly, op: PolyOp<'_>) -> Result<MultiPoly> {
    match op {
        PolyOp::Add(b) => a.checked_add(b),
        PolyOp::Mul(b) => a.checked_mul(b),
        PolyOp::ComposeLinear(m) => a.compose_linear(m),
    }
}

impl MultiPoly {
    pub fn arith(&self, op: PolyOp<'_>) -> Result<MultiPoly> {
        poly_arith(self, op)
    }
}

impl<'a> std::ops::Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("variable mismatch in polynomial addition")
    }
}

impl<'a> std::ops::Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("variable mismatch in polynomial subtraction")
    }
}

impl<'a> std::ops::Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("variable mismatch in polynomial product")
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ts: Vec<(&Mono, &Rational)> = self.terms.iter().collect();
        ts.sort_by(|a, b| mono_degree(b.0).cmp(&mono_degree(a.0)).then_with(|| b.0.cmp(a.0)));
        for (k, (m, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for i in 0..self.nvars() {
                match m[i] {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    e => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            let coeff = super::fmt_rational(&a);
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// Parses expressions such as `2*x^2 - 3/4*y*z + 1`. Only used to keep tests
/// and fixed data readable.
impl MultiPoly {
    pub fn parse(vars: &VarSet, s: &str) -> Result<MultiPoly> {
        let bad = |msg: &str| Error::BadParams(format!("cannot parse polynomial `{s}`: {msg}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = MultiPoly::zero(vars);
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = true;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push((sign, std::mem::take(&mut cur)));
                sign = ch == '+';
            } else if ch == '-' && i == 0 {
                sign = false;
            } else if ch == '+' && i == 0 {
            } else {
                cur.push(ch);
            }
        }
        pieces.push((sign, cur));
        for (positive, term) in pieces {
            if term.is_empty() {
                return Err(bad("dangling sign"));
            }
            let mut coeff = Rational::one();
            let mut mono = [0u16; MAX_VARS];
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u16>().map_err(|_| bad("exponent"))?),
                    None => (factor, 1),
                };
                if let Some(i) = vars.names().iter().position(|n| n == base) {
                    mono[i] += exp;
                } else {
                    let r = match base.split_once('/') {
                        Some((n, d)) => Rational::new(
                            n.parse::<BigInt>().map_err(|_| bad("numerator"))?,
                            d.parse::<BigInt>().map_err(|_| bad("denominator"))?,
                        ),
                        None => Rational::from_integer(base.parse::<BigInt>().map_err(|_| bad("unknown symbol"))?),
                    };
                    let mut p = Rational::one();
                    for _ in 0..exp {
                        p *= &r;
                    }
                    coeff *= p;
                }
            }
            out.add_term(mono, if positive { coeff } else { -coeff });
        }
        Ok(out)
    }
}
