use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::cone::{ConePoly, ProjPoint3};
use crate::error::{Error, Result};
use crate::exact::{primitive_integer_vector, Rational};

use super::lines::{d_form, on_line, R_FORM, S_FORM};

/// A prime divisor on the cone, identified by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeName {
    /// The line `L_i` through the vertex.
    Line(i64),
    /// The translate `tau^{-j}(D)` of `D = V(w + 12x + 22y + 8z)`.
    TauD(i64),
    CurveR,
    CurveS,
    /// A hyperplane cut not through the vertex, by primitive integer coefficients.
    Hyperplane([i64; 4]),
}

impl PrimeName {
    /// Normalized name of the hyperplane cut by a linear form.
    pub fn hyperplane(form: [i64; 4]) -> Result<PrimeName> {
        if form[0] == 0 {
            return Err(Error::BadParams("hyperplane passes through the vertex".into()));
        }
        let v: Vec<Rational> = form.iter().map(|&c| Rational::from_integer(c.into())).collect();
        let p = primitive_integer_vector(&v);
        let mut out = [0i64; 4];
        for (o, c) in out.iter_mut().zip(&p) {
            *o = i64::try_from(c).map_err(|_| Error::BadParams("coefficient overflow".into()))?;
        }
        Ok(PrimeName::Hyperplane(out))
    }

    /// The defining linear form, for the primes cut out by a hyperplane.
    pub fn form(&self) -> Option<ConePoly> {
        match self {
            PrimeName::Line(_) => None,
            PrimeName::TauD(j) => Some(d_form().pullback(*j)),
            PrimeName::CurveR => Some(ConePoly::linear(R_FORM)),
            PrimeName::CurveS => Some(ConePoly::linear(S_FORM)),
            PrimeName::Hyperplane(c) => Some(ConePoly::linear(*c)),
        }
    }

    pub fn contains(&self, q: &ProjPoint3) -> bool {
        match self {
            PrimeName::Line(i) => on_line(*i, q),
            _ => self.form().expect("hyperplane prime").eval(q.coords()).is_zero(),
        }
    }

    /// Relabelling under `tau^{-k}`.
    pub fn translate(&self, k: i64) -> PrimeName {
        match self {
            PrimeName::Line(i) => PrimeName::Line(i + k),
            PrimeName::TauD(j) => PrimeName::TauD(j + k),
            PrimeName::CurveR => PrimeName::CurveR,
            PrimeName::CurveS => PrimeName::CurveS,
            PrimeName::Hyperplane(c) => {
                let f = ConePoly::linear(*c).pullback(k);
                let coeffs: Vec<Rational> = (0..4)
                    .map(|i| {
                        let mut m = [0u16; crate::exact::MAX_VARS];
                        m[i] = 1;
                        f.poly().coeff(&m)
                    })
                    .collect();
                let p = primitive_integer_vector(&coeffs);
                let mut out = [0i64; 4];
                for (o, c) in out.iter_mut().zip(&p) {
                    *o = i64::try_from(c).expect("small coefficients");
                }
                PrimeName::Hyperplane(out)
            }
        }
    }
}

impl fmt::Display for PrimeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeName::Line(i) => write!(f, "L{i}"),
            PrimeName::TauD(0) => write!(f, "D"),
            PrimeName::TauD(j) => write!(f, "tau^{}(D)", -j),
            PrimeName::CurveR => write!(f, "C_r"),
            PrimeName::CurveS => write!(f, "C_s"),
            PrimeName::Hyperplane(c) => write!(f, "H[{},{},{},{}]", c[0], c[1], c[2], c[3]),
        }
    }
}

/// Finite integer combination of prime divisors.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct DivisorExpr {
    terms: BTreeMap<PrimeName, i64>,
}

impl DivisorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn prime(p: PrimeName) -> Self {
        Self::term(p, 1)
    }

    pub fn term(p: PrimeName, m: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(p, m);
        out
    }

    pub fn add_term(&mut self, p: PrimeName, m: i64) {
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn multiplicity(&self, p: &PrimeName) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PrimeName, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m >= 0)
    }

    /// `self >= other` coefficientwise.
    pub fn dominates(&self, other: &DivisorExpr) -> bool {
        (self - other).is_effective()
    }

    /// Primes with positive multiplicity.
    pub fn support(&self) -> impl Iterator<Item = &PrimeName> {
        self.terms.iter().filter(|(_, &m)| m > 0).map(|(p, _)| p)
    }

    /// Whether `q` lies on the support.
    pub fn support_contains(&self, q: &ProjPoint3) -> bool {
        self.support().any(|p| p.contains(q))
    }

    /// Image under `tau^{-k}`.
    pub fn translate(&self, k: i64) -> DivisorExpr {
        let mut out = DivisorExpr::zero();
        for (p, m) in &self.terms {
            out.add_term(p.translate(k), *m);
        }
        out
    }
}

impl Add for &DivisorExpr {
    type Output = DivisorExpr;
    fn add(self, rhs: &DivisorExpr) -> DivisorExpr {
        let mut out = self.clone();
        for (p, m) in &rhs.terms {
            out.add_term(p.clone(), *m);
        }
        out
    }
}

impl Neg for &DivisorExpr {
    type Output = DivisorExpr;
    fn neg(self) -> DivisorExpr {
        DivisorExpr { terms: self.terms.iter().map(|(p, m)| (p.clone(), -m)).collect() }
    }
}

impl Sub for &DivisorExpr {
    type Output = DivisorExpr;
    fn sub(self, rhs: &DivisorExpr) -> DivisorExpr {
        self + &(-rhs)
    }
}

impl fmt::Display for DivisorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, &m) in &self.terms {
            let sign = if m < 0 { "-" } else { "+" };
            if first {
                if m < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.abs() != 1 {
                write!(f, "{}", m.abs())?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorExpr({self})")
    }
}

/// `Div(f_i) = tau^{-i}(D) - L_i - L_{i+1}`.
pub fn div_f(i: i64) -> DivisorExpr {
    let mut out = DivisorExpr::prime(PrimeName::TauD(i));
    out.add_term(PrimeName::Line(i), -1);
    out.add_term(PrimeName::Line(i + 1), -1);
    out
}

/// `L_0 + L_1 + ... + L_{2n-1}`.
pub fn lline(n: usize) -> DivisorExpr {
    let mut out = DivisorExpr::zero();
    for i in 0..2 * n as i64 {
        out.add_term(PrimeName::Line(i), 1);
    }
    out
}

fn check_sequence(seq: &[usize], n: usize) -> Result<()> {
    for w in seq.windows(2) {
        if w[1] < w[0] + 2 {
            return Err(Error::ConstraintViolation(format!("{} follows {}", w[1], w[0])));
        }
    }
    if let Some(&last) = seq.last() {
        if n == 0 || last + 2 > 2 * n {
            return Err(Error::ConstraintViolation(format!("index {last} exceeds {}", 2 * n as i64 - 2)));
        }
    }
    Ok(())
}

/// `Div(f_{i_1} ... f_{i_k})` for a spanning monomial of `V_{2n}`, together
/// with whether `Div(m) + LL_n` is effective.
pub fn div_monomial(seq: &[usize], n: usize) -> Result<(DivisorExpr, bool)> {
    check_sequence(seq, n)?;
    let mut div = DivisorExpr::zero();
    for &i in seq {
        div = &div + &div_f(i as i64);
    }
    let effective = (&div + &lline(n)).is_effective();
    Ok((div, effective))
}
