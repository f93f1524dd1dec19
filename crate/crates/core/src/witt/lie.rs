use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exact::{fmt_rational, ri, rq, Rational};

/// Element of the Witt algebra (basis `e_n`, `n` any integer) or of the
/// Virasoro algebra, which adds the central element `c`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    coeffs: BTreeMap<i64, Rational>,
    central: Rational,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `e_n`.
    pub fn e(n: i64) -> Self {
        Self::term(n, ri(1))
    }

    pub fn term(n: i64, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_e(n, c);
        out
    }

    /// The central element `c`.
    pub fn c() -> Self {
        LieElement { coeffs: BTreeMap::new(), central: ri(1) }
    }

    pub fn with_central(mut self, c: Rational) -> Self {
        self.central = c;
        self
    }

    pub fn coeff(&self, n: i64) -> Rational {
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn central(&self) -> &Rational {
        &self.central
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.central.is_zero()
    }

    pub fn support(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    fn add_e(&mut self, n: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(n).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (n, c) in &self.coeffs {
            out.add_e(*n, c * s);
        }
        out.central = &self.central * s;
        out
    }
}

impl std::ops::Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (n, c) in &rhs.coeffs {
            out.add_e(*n, c.clone());
        }
        out.central = &self.central + &rhs.central;
        out
    }
}

impl std::ops::Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&ri(-1))
    }
}

/// `[e_n, e_m] = (m - n) e_{n+m}`, plus `c/12 (m^3 - m) delta_{n+m,0}` when
/// `virasoro` is set. The central element brackets to zero with everything.
pub fn lie_bracket(a: &LieElement, b: &LieElement, virasoro: bool) -> LieElement {
    let mut out = LieElement::zero();
    for (n, ca) in &a.coeffs {
        for (m, cb) in &b.coeffs {
            let s = ca * cb;
            out.add_e(n + m, &s * ri(m - n));
            if virasoro && n + m == 0 {
                out.central += s * rq(m * m * m - m, 12);
            }
        }
    }
    out
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.coeffs.iter().map(|(n, c)| format!("{}*e[{}]", fmt_rational(c), n)).collect();
        if !self.central.is_zero() {
            parts.push(format!("{}*c", fmt_rational(&self.central)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(a: &LieElement, b: &LieElement) -> LieElement {
        lie_bracket(a, b, false)
    }

    #[test]
    fn e1_e2_gives_e3() {
        assert_eq!(br(&LieElement::e(1), &LieElement::e(2)), LieElement::e(3));
    }

    #[test]
    fn nested_brackets_from_presentation() {
        let e1 = LieElement::e(1);
        let e2 = LieElement::e(2);
        let lhs = br(&e1, &br(&e1, &br(&e1, &e2)));
        assert_eq!(lhs, LieElement::term(5, ri(6)));
        assert_eq!(br(&e2, &br(&e2, &e1)), LieElement::term(5, ri(-1)));
        let mut five = br(&e1, &e2);
        for _ in 0..4 {
            five = br(&e1, &five);
        }
        assert_eq!(five, LieElement::term(7, ri(120)));
        let three = br(&e2, &br(&e2, &br(&e2, &e1)));
        assert_eq!(three, LieElement::term(7, ri(-3)));
        // the combinations in the two defining relations vanish in W+
        let rel5 = &lhs + &br(&e2, &br(&e2, &e1)).scale(&ri(6));
        assert!(rel5.is_zero());
        let rel7 = &five + &three.scale(&ri(40));
        assert!(rel7.is_zero());
    }

    #[test]
    fn virasoro_central_terms() {
        let b = lie_bracket(&LieElement::e(-1), &LieElement::e(1), true);
        assert_eq!(b, LieElement::term(0, ri(2)));
        assert!(b.central().is_zero());
        let b = lie_bracket(&LieElement::e(-2), &LieElement::e(2), true);
        assert_eq!(b, LieElement::term(0, ri(4)).with_central(rq(1, 2)));
        // witt bracket drops the cocycle
        let b = lie_bracket(&LieElement::e(-2), &LieElement::e(2), false);
        assert_eq!(b, LieElement::term(0, ri(4)));
    }

    #[test]
    fn central_element_is_central() {
        for n in -4..=4 {
            assert!(lie_bracket(&LieElement::c(), &LieElement::e(n), true).is_zero());
            assert!(lie_bracket(&LieElement::e(n), &LieElement::c(), true).is_zero());
        }
    }
}
