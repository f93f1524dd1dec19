use std::fmt;
use std::sync::OnceLock;

use crate::error::Result;
use crate::exact::{ri, MultiPoly, QMatrix, Rational, VarSet, MAX_VARS};

/// Variables `w, x, y, z` of the ambient projective space.
pub fn cone_vars() -> VarSet {
    static V: OnceLock<VarSet> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["w", "x", "y", "z"])).clone()
}

/// Variables `w, u, v` of the parametrization `[w : u^2 : uv : v^2]`.
pub fn param_vars() -> VarSet {
    static V: OnceLock<VarSet> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["w", "u", "v"])).clone()
}

/// The matrix of `tau` acting on column vectors `(w, x, y, z)`.
pub fn tau_matrix() -> QMatrix {
    QMatrix::from_i64(4, 4, &[1, -2, 0, 2, 0, 0, 0, 1, 0, 0, -1, -2, 0, 1, 4, 4])
}

/// `tau^k` as a matrix; negative powers are exact inverses.
pub fn tau_matrix_pow(k: i64) -> QMatrix {
    tau_matrix().pow(k).expect("tau is invertible")
}

/// Element of the homogeneous coordinate ring of the cone, kept in the normal
/// form where no monomial contains `y^2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConePoly(MultiPoly);

/// Normal form of a polynomial in `w, x, y, z` modulo `xz - y^2`.
///
/// Panics if `p` does not have exactly four variables.
pub fn reduce(p: &MultiPoly) -> ConePoly {
    assert_eq!(p.nvars(), 4, "cone polynomials have four variables");
    let vars = cone_vars();
    let mut out = MultiPoly::zero(&vars);
    for (m, c) in p.terms() {
        let half = m[2] / 2;
        let mut n = [0u16; MAX_VARS];
        n[0] = m[0];
        n[1] = m[1] + half;
        n[2] = m[2] % 2;
        n[3] = m[3] + half;
        out.add_term(n, c.clone());
    }
    ConePoly(out)
}

impl ConePoly {
    pub fn zero() -> Self {
        ConePoly(MultiPoly::zero(&cone_vars()))
    }

    pub fn one() -> Self {
        Self::constant(ri(1))
    }

    pub fn constant(c: Rational) -> Self {
        ConePoly(MultiPoly::constant(&cone_vars(), c))
    }

    /// Linear form `a w + b x + c y + d z`.
    pub fn linear(c: [i64; 4]) -> Self {
        let coeffs: Vec<Rational> = c.iter().map(|&v| ri(v)).collect();
        ConePoly(MultiPoly::linear(&cone_vars(), &coeffs))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(reduce(&MultiPoly::parse(&cone_vars(), s)?))
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        self.0.homogeneous_degree()
    }

    pub fn scale(&self, c: &Rational) -> ConePoly {
        ConePoly(self.0.scale(c))
    }

    pub fn pow(&self, e: u32) -> ConePoly {
        let mut acc = ConePoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(M p)`, reduced.
    pub fn compose(&self, m: &QMatrix) -> ConePoly {
        reduce(&self.0.compose_linear(m).expect("4x4 matrix"))
    }

    /// `self o tau^k`.
    pub fn pullback(&self, k: i64) -> ConePoly {
        if k == 0 {
            return self.clone();
        }
        self.compose(&tau_matrix_pow(k))
    }

    pub fn eval(&self, p: &[Rational]) -> Rational {
        self.0.eval(p)
    }

    pub fn param(&self) -> ParamForm {
        param(self)
    }

    /// Exact quotient in the coordinate ring, if `d` divides `self` there.
    pub fn div_exact(&self, d: &ConePoly) -> Option<ConePoly> {
        let q = self.param().0.div_exact(&d.param().0)?;
        ParamForm(q).unparam()
    }
}

impl std::ops::Add for &ConePoly {
    type Output = ConePoly;
    fn add(self, rhs: &ConePoly) -> ConePoly {
        ConePoly(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &ConePoly {
    type Output = ConePoly;
    fn sub(self, rhs: &ConePoly) -> ConePoly {
        ConePoly(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &ConePoly {
    type Output = ConePoly;
    fn mul(self, rhs: &ConePoly) -> ConePoly {
        reduce(&(&self.0 * &rhs.0))
    }
}

impl std::ops::Neg for &ConePoly {
    type Output = ConePoly;
    fn neg(self) -> ConePoly {
        ConePoly(-&self.0)
    }
}

impl fmt::Display for ConePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for ConePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConePoly({})", self.0)
    }
}

/// Polynomial in `w, u, v` obtained by substituting `x = u^2, y = uv, z = v^2`.
/// Images of cone polynomials are exactly the forms whose monomials all have
/// even `u,v`-degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamForm(pub MultiPoly);

pub fn param(p: &ConePoly) -> ParamForm {
    let pv = param_vars();
    let w = MultiPoly::var(&pv, 0);
    let u = MultiPoly::var(&pv, 1);
    let v = MultiPoly::var(&pv, 2);
    let images = [w, &u * &u, &u * &v, &v * &v];
    ParamForm(p.0.substitute(&images))
}

impl ParamForm {
    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Degree with `w` of weight 2 and `u, v` of weight 1, if homogeneous.
    pub fn weighted_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (m, _) in self.0.terms() {
            let d = 2 * m[0] as u32 + m[1] as u32 + m[2] as u32;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// The cone polynomial with this parametrization, when every monomial has
    /// even `u,v`-degree.
    pub fn unparam(&self) -> Option<ConePoly> {
        let mut out = MultiPoly::zero(&cone_vars());
        for (m, c) in self.0.terms() {
            let (a, b) = (m[1], m[2]);
            if (a + b) % 2 != 0 {
                return None;
            }
            let e = a % 2;
            let mut n = [0u16; MAX_VARS];
            n[0] = m[0];
            n[1] = (a - e) / 2;
            n[2] = e;
            n[3] = (b - e) / 2;
            out.add_term(n, c.clone());
        }
        Some(ConePoly(out))
    }

    pub fn eval(&self, w: &Rational, u: &Rational, v: &Rational) -> Rational {
        self.0.eval(&[w.clone(), u.clone(), v.clone()])
    }
}

impl fmt::Display for ParamForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for ParamForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamForm({})", self.0)
    }
}
