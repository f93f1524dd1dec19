use std::fmt;

use num_traits::{Signed, Zero};

use super::point::ProjPoint3;
use super::ring::{tau_matrix_pow, ConePoly};
use crate::error::{Error, Result};
use crate::exact::{joint_content_scale, ri, Rational};

/// Rational function on the cone, stored as a fraction of normal forms.
///
/// Fractions are canonical up to common factors that the exact-division
/// checks do not detect; compare with [`rat_equal`] rather than `==` when
/// representatives may differ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConeRat {
    num: ConePoly,
    den: ConePoly,
}

impl ConeRat {
    pub fn new(num: ConePoly, den: ConePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn parse(num: &str, den: &str) -> Result<Self> {
        Self::new(ConePoly::parse(num)?, ConePoly::parse(den)?)
    }

    pub fn from_poly(p: ConePoly) -> Self {
        Self::canonical(p, ConePoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(ConePoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(ri(1))
    }

    pub fn num(&self) -> &ConePoly {
        &self.num
    }

    pub fn den(&self) -> &ConePoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels exact polynomial quotients, clears integer content and makes
    /// the leading denominator coefficient positive.
    fn canonical(num: ConePoly, den: ConePoly) -> Self {
        if num.is_zero() {
            return ConeRat { num, den: ConePoly::one() };
        }
        let (mut num, mut den) = if let Some(q) = num.div_exact(&den) {
            (q, ConePoly::one())
        } else if let Some(q) = den.div_exact(&num) {
            (ConePoly::one(), q)
        } else {
            (num, den)
        };
        let s = joint_content_scale(&[num.poly(), den.poly()]);
        let negative = den.poly().leading_term().is_some_and(|(_, c)| c.is_negative());
        let s = if negative { -s } else { s };
        num = num.scale(&s);
        den = den.scale(&s);
        ConeRat { num, den }
    }

    pub fn inv(&self) -> Result<ConeRat> {
        ConeRat::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &ConeRat) -> Result<ConeRat> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> ConeRat {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    /// Degree of numerator minus degree of denominator, when both are
    /// homogeneous.
    pub fn degree(&self) -> Result<i64> {
        let n = self.num.homogeneous_degree()?;
        let d = self.den.homogeneous_degree()?.expect("nonzero denominator");
        Ok(n.map_or(0, |n| n as i64 - d as i64))
    }

    /// `self o tau^k`.
    pub fn pullback(&self, k: i64) -> ConeRat {
        tau_pullback(self, k)
    }

    pub fn eval(&self, p: &ProjPoint3) -> Result<Rational> {
        eval(self, p)
    }
}

impl std::ops::Add for &ConeRat {
    type Output = ConeRat;
    fn add(self, rhs: &ConeRat) -> ConeRat {
        if self.den == rhs.den {
            return ConeRat::canonical(&self.num + &rhs.num, self.den.clone());
        }
        if let Some(q) = self.den.div_exact(&rhs.den) {
            return ConeRat::canonical(&self.num + &(&rhs.num * &q), self.den.clone());
        }
        if let Some(q) = rhs.den.div_exact(&self.den) {
            return ConeRat::canonical(&(&self.num * &q) + &rhs.num, rhs.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ConeRat::canonical(num, &self.den * &rhs.den)
    }
}

impl std::ops::Neg for &ConeRat {
    type Output = ConeRat;
    fn neg(self) -> ConeRat {
        ConeRat { num: -&self.num, den: self.den.clone() }
    }
}

impl std::ops::Sub for &ConeRat {
    type Output = ConeRat;
    fn sub(self, rhs: &ConeRat) -> ConeRat {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &ConeRat {
    type Output = ConeRat;
    fn mul(self, rhs: &ConeRat) -> ConeRat {
        ConeRat::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for ConeRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == ConePoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ConeRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConeRat({self})")
    }
}

/// `g o tau^k`.
pub fn tau_pullback(g: &ConeRat, k: i64) -> ConeRat {
    if k == 0 {
        return g.clone();
    }
    let m = tau_matrix_pow(k);
    ConeRat::canonical(g.num.compose(&m), g.den.compose(&m))
}

/// The function `f = (w + 12x + 22y + 8z) / (12x + 6y)`.
pub fn base_f() -> ConeRat {
    ConeRat::parse("w + 12*x + 22*y + 8*z", "12*x + 6*y").expect("fixed data")
}

/// `f_i = f o tau^i`.
pub fn f_index(i: i64) -> ConeRat {
    tau_pullback(&base_f(), i)
}

/// Equality of rational functions on the cone via cross multiplication.
pub fn rat_equal(g: &ConeRat, h: &ConeRat) -> bool {
    (&(&g.num * &h.den) - &(&h.num * &g.den)).is_zero()
}

/// Value of a degree-zero rational function at a point of the cone.
pub fn eval(g: &ConeRat, p: &ProjPoint3) -> Result<Rational> {
    let nd = g.num.homogeneous_degree()?;
    let dd = g.den.homogeneous_degree()?;
    if nd.is_some() && nd != dd {
        return Err(Error::InhomogeneousInput);
    }
    let n = g.num.eval(p.coords());
    let d = g.den.eval(p.coords());
    match (n.is_zero(), d.is_zero()) {
        (true, true) => Err(Error::Indeterminate),
        (false, true) => Err(Error::Pole),
        _ => Ok(n / d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rq;

    fn q(num: &str, den: &str) -> ConeRat {
        ConeRat::parse(num, den).unwrap()
    }

    #[test]
    fn f_one_is_the_tau_pullback() {
        let f1 = f_index(1);
        assert!(rat_equal(&f1, &q("w + 6*x + 10*y + 2*z", "-6*y")));
        assert_eq!(f1.den(), &ConePoly::parse("6*y").unwrap());
    }

    #[test]
    fn pullback_round_trip() {
        let f = base_f();
        assert_eq!(tau_pullback(&f, 0), f);
        assert!(rat_equal(&tau_pullback(&tau_pullback(&f, 3), -3), &f));
    }

    #[test]
    fn rat_equal_examples() {
        assert!(rat_equal(&q("y", "z"), &q("x", "y")));
        let f = base_f();
        assert!(!rat_equal(&f, &(&f + &ConeRat::one())));
    }

    #[test]
    fn combination_of_three_pullbacks_is_y_over_z() {
        let (a, b, c) = (f_index(0), f_index(1), f_index(2));
        let k = |n: i64| ConeRat::constant(ri(n));
        let num = &(&(&k(8) * &(&a * &c)) + &(&k(4) * &a)) - &(&k(4) * &c);
        let den =
            &(&(&(&(&k(-4) * &(&a * &b)) - &(&k(4) * &(&a * &c))) - &(&k(6) * &a)) + &(&k(4) * &b)) + &(&k(2) * &c);
        let lhs = num.checked_div(&den).unwrap();
        assert!(rat_equal(&lhs, &q("y", "z")));
    }

    #[test]
    fn evaluation() {
        let f = base_f();
        let r0 = ProjPoint3::from_i64([0, 1, -2, 4]).unwrap();
        assert_eq!(eval(&f, &r0), Err(Error::Indeterminate));
        let p = ProjPoint3::from_i64([1, 1, 1, 1]).unwrap();
        assert_eq!(eval(&f, &p).unwrap(), rq(43, 18));
        assert_eq!(eval(&q("y", "z"), &r0).unwrap(), rq(-1, 2));
        let pole = ProjPoint3::from_i64([1, 0, 0, 1]).unwrap();
        assert_eq!(eval(&f, &pole), Err(Error::Pole));
    }
}
