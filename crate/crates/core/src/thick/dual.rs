use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::cone::{param, ConePoly};
use crate::error::{Error, Result};
use crate::exact::{ri, MultiPoly, QMatrix, Rational, VarSet, MAX_VARS};

/// Variables `u, v` of the parametrized curve `C_r`.
pub fn uv_vars() -> VarSet {
    static V: OnceLock<VarSet> = OnceLock::new();
    V.get_or_init(|| VarSet::new(&["u", "v"])).clone()
}

/// The action `(u, v) -> (-v, u + 2v)` of `tau` on the parameters of `C_r`.
pub fn tau_bar_matrix() -> QMatrix {
    QMatrix::from_i64(2, 2, &[0, -1, 1, 2])
}

fn uv_mono(a: u32, b: u32) -> [u16; MAX_VARS] {
    let mut m = [0u16; MAX_VARS];
    m[0] = a as u16;
    m[1] = b as u16;
    m
}

fn binary_coeffs(p: &MultiPoly, degree: i64) -> Vec<Rational> {
    if degree < 0 {
        return Vec::new();
    }
    let d = degree as u32;
    (0..=d).map(|a| p.coeff(&uv_mono(a, d - a))).collect()
}

fn binary_from_coeffs(c: &[Rational]) -> MultiPoly {
    let vars = uv_vars();
    let d = c.len().saturating_sub(1) as u32;
    MultiPoly::from_terms(&vars, c.iter().enumerate().map(|(a, x)| (uv_mono(a as u32, d - a as u32), x.clone())))
}

fn has_degree(p: &MultiPoly, d: i64) -> bool {
    p.is_zero() || (d >= 0 && p.homogeneous_degree().ok().flatten() == Some(d as u32))
}

/// `g0 + g1 eps` on the doubled curve `2 C_r`, where `eps` is the class of
/// `h = w + 4y + 2z`. In twist `n`, `g0` is a binary form of degree `2n` and
/// `g1` one of degree `2n - 2`.
#[derive(Clone, PartialEq, Eq)]
pub struct DualFn {
    g0: MultiPoly,
    g1: MultiPoly,
    twist: u32,
}

impl DualFn {
    pub fn new(g0: MultiPoly, g1: MultiPoly, twist: u32) -> Result<Self> {
        let names = uv_vars();
        if g0.vars().names() != names.names() || g1.vars().names() != names.names() {
            return Err(Error::VariableMismatch);
        }
        let d = 2 * twist as i64;
        if !has_degree(&g0, d) || !has_degree(&g1, d - 2) {
            return Err(Error::TwistMismatch(format!("components do not have degrees {d} and {}", d - 2)));
        }
        Ok(DualFn { g0, g1, twist })
    }

    pub fn zero(twist: u32) -> Self {
        let z = MultiPoly::zero(&uv_vars());
        DualFn { g0: z.clone(), g1: z, twist }
    }

    pub fn one() -> Self {
        DualFn { g0: MultiPoly::one(&uv_vars()), g1: MultiPoly::zero(&uv_vars()), twist: 0 }
    }

    /// `eps` itself, in twist 1.
    pub fn epsilon() -> Self {
        DualFn { g0: MultiPoly::zero(&uv_vars()), g1: MultiPoly::one(&uv_vars()), twist: 1 }
    }

    pub fn g0(&self) -> &MultiPoly {
        &self.g0
    }

    pub fn g1(&self) -> &MultiPoly {
        &self.g1
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn is_zero(&self) -> bool {
        self.g0.is_zero() && self.g1.is_zero()
    }

    /// Length of the coordinate vector in twist `n`.
    pub fn coord_len(twist: u32) -> usize {
        if twist == 0 {
            1
        } else {
            4 * twist as usize
        }
    }

    /// Coefficients of `g0` then `g1`, indexed by the exponent of `u`.
    pub fn coords(&self) -> Vec<Rational> {
        let d = 2 * self.twist as i64;
        let mut out = binary_coeffs(&self.g0, d);
        out.extend(binary_coeffs(&self.g1, d - 2));
        out
    }

    pub fn from_coords(twist: u32, c: &[Rational]) -> Result<Self> {
        let len = Self::coord_len(twist);
        if c.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: c.len() });
        }
        let k = 2 * twist as usize + 1;
        let g1 = if twist == 0 { MultiPoly::zero(&uv_vars()) } else { binary_from_coeffs(&c[k..]) };
        Ok(DualFn { g0: binary_from_coeffs(&c[..k]), g1, twist })
    }

    pub fn scale(&self, c: &Rational) -> DualFn {
        DualFn { g0: self.g0.scale(c), g1: self.g1.scale(c), twist: self.twist }
    }

    pub fn checked_add(&self, other: &DualFn) -> Result<DualFn> {
        if self.twist != other.twist {
            return Err(Error::TwistMismatch(format!("{} vs {}", self.twist, other.twist)));
        }
        Ok(DualFn { g0: &self.g0 + &other.g0, g1: &self.g1 + &other.g1, twist: self.twist })
    }

    /// `self o tau_bar^k`; `eps` is fixed.
    pub fn pullback(&self, k: i64) -> DualFn {
        let m = tau_bar_matrix().pow(k).expect("invertible");
        let c = |p: &MultiPoly| p.compose_linear(&m).expect("2x2 matrix");
        DualFn { g0: c(&self.g0), g1: c(&self.g1), twist: self.twist }
    }

    pub fn g0_at(&self, u: &Rational, v: &Rational) -> Rational {
        self.g0.eval(&[u.clone(), v.clone()])
    }

    pub fn g1_at(&self, u: &Rational, v: &Rational) -> Rational {
        self.g1.eval(&[u.clone(), v.clone()])
    }

    /// Whether the underlying function vanishes at the point `(u:v)` of `C_r`.
    pub fn vanishes_at(&self, u: &Rational, v: &Rational) -> bool {
        self.g0_at(u, v).is_zero()
    }
}

impl fmt::Display for DualFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*eps [twist {}]", self.g0, self.g1, self.twist)
    }
}

impl fmt::Debug for DualFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualFn{self}")
    }
}

/// Product in the dual numbers with twists added, without any translation.
pub fn dual_product(a: &DualFn, b: &DualFn) -> DualFn {
    DualFn { g0: &a.g0 * &b.g0, g1: &(&a.g0 * &b.g1) + &(&a.g1 * &b.g0), twist: a.twist + b.twist }
}

fn check(a: &DualFn) -> Result<()> {
    DualFn::new(a.g0.clone(), a.g1.clone(), a.twist).map(|_| ())
}

/// Product in `k(Y)[t^2; tau_bar^2]`: `a (b o tau_bar^{2n})` for `a` in twist `n`.
pub fn thick_mul(a: &DualFn, b: &DualFn) -> Result<DualFn> {
    check(a)?;
    check(b)?;
    Ok(dual_product(a, &b.pullback(2 * a.twist as i64)))
}

/// The restriction of a form of degree `d` on the cone to `2 C_r`, in twist `d`:
/// substitute `w = -4uv - 2v^2 + eps` and drop `eps^2`.
pub fn restrict(g: &ConePoly) -> Result<DualFn> {
    let d = g.homogeneous_degree()?.unwrap_or(0);
    let vars = uv_vars();
    let u = MultiPoly::var(&vars, 0);
    let v = MultiPoly::var(&vars, 1);
    let w0 = &(&u * &v).scale(&ri(-4)) + &(&v * &v).scale(&ri(-2));
    let images = [w0, u, v];
    let p = param(g).0;
    let g0 = p.substitute(&images);
    let g1 = p.derivative(0).substitute(&images);
    DualFn::new(g0, g1, d)
}

/// Element `sum_n a_n t^{2n}` with `a_n` in twist `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThickSkewElt {
    coeffs: BTreeMap<u32, DualFn>,
}

impl ThickSkewElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(a: DualFn) -> Self {
        let mut out = Self::zero();
        out.add_term(a).expect("single term");
        out
    }

    pub fn coeff(&self, n: u32) -> DualFn {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| DualFn::zero(n))
    }

    pub fn add_term(&mut self, a: DualFn) -> Result<()> {
        let n = a.twist;
        let sum = match self.coeffs.remove(&n) {
            Some(old) => old.checked_add(&a)?,
            None => a,
        };
        if !sum.is_zero() {
            self.coeffs.insert(n, sum);
        }
        Ok(())
    }

    pub fn mul(&self, other: &ThickSkewElt) -> Result<ThickSkewElt> {
        let mut out = ThickSkewElt::zero();
        for a in self.coeffs.values() {
            for b in other.coeffs.values() {
                out.add_term(thick_mul(a, b)?)?;
            }
        }
        Ok(out)
    }
}
