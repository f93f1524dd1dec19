use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cone::{project_pi, sigma_pow, tau_matrix_pow, tau_point, ConePoly, ProjPoint1, ProjPoint3};
use crate::error::{Error, Result};
use crate::exact::{ri, Rational};

/// `w + 12x + 22y + 8z`, cutting out `D`.
pub const D_FORM: [i64; 4] = [1, 12, 22, 8];
/// `w + 4y + 2z`, cutting out `C_r`.
pub const R_FORM: [i64; 4] = [1, 0, 4, 2];
/// `w + 6x + 16y + 8z`, cutting out `C_s`.
pub const S_FORM: [i64; 4] = [1, 6, 16, 8];

pub fn d_form() -> ConePoly {
    ConePoly::linear(D_FORM)
}

/// `p_i = sigma^{-i}([1:-2])`, the image of `L_i` under the projection.
pub fn line_base_point(i: i64) -> ProjPoint1 {
    sigma_pow(-i, &ProjPoint1::from_i64(1, -2).expect("nonzero"))
}

/// Whether `q` lies on `L_i`.
pub fn on_line(i: i64, q: &ProjPoint3) -> bool {
    match project_pi(q) {
        Err(_) => true,
        Ok(p) => p == line_base_point(i),
    }
}

/// The index `i` with `p_i = q`, searched over `|i| <= bound`.
pub fn line_index_of(q: &ProjPoint1, bound: i64) -> Option<i64> {
    (0..=bound).flat_map(|k| [k, -k]).find(|&i| line_base_point(i) == *q)
}

/// The line `L_i` traced as `[a:b] -> a P + b B_i`, where `P` is the vertex and
/// `B_i` is the image of `[0:1:-2:4]` (even `i`) or `[0:0:0:1]` (odd `i`)
/// under the matching even power of `tau^{-1}`.
#[derive(Clone, Debug)]
pub struct LineParam {
    pub i: i64,
    base: [Rational; 4],
}

impl LineParam {
    pub fn new(i: i64) -> Self {
        let (start, shift) = if i.rem_euclid(2) == 0 { ([0, 1, -2, 4], i) } else { ([0, 0, 0, 1], i - 1) };
        let v: Vec<Rational> = start.iter().map(|&c| ri(c)).collect();
        let img = tau_matrix_pow(-shift).mul_vec(&v);
        LineParam { i, base: [img[0].clone(), img[1].clone(), img[2].clone(), img[3].clone()] }
    }

    pub fn base(&self) -> &[Rational; 4] {
        &self.base
    }

    pub fn point_at(&self, a: &Rational, b: &Rational) -> Result<ProjPoint3> {
        let mut c = self.base.clone().map(|x| &x * b);
        c[0] = &c[0] + a;
        ProjPoint3::new(c)
    }

    /// Coefficients `(F(P), F(B_i))` of a linear form restricted to the line.
    pub fn restrict_linear(&self, form: &ConePoly) -> [Rational; 2] {
        let vertex = [ri(1), ri(0), ri(0), ri(0)];
        [form.eval(&vertex), form.eval(&self.base)]
    }
}

/// The points `r_i = tau^{-i}(r_0)` and `s_i = tau^{-i+1}(s_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPoints {
    pub i: i64,
    pub r: ProjPoint3,
    pub s: ProjPoint3,
}

impl SpecialPoints {
    /// `r_i` on `L_i` and `C_r`, `s_i` on `L_i` and `C_s`.
    pub fn check(&self) -> bool {
        let on = |form: [i64; 4], q: &ProjPoint3| ConePoly::linear(form).eval(q.coords()).is_zero();
        on_line(self.i, &self.r) && on(R_FORM, &self.r) && on_line(self.i, &self.s) && on(S_FORM, &self.s)
    }
}

pub fn r0() -> ProjPoint3 {
    ProjPoint3::from_i64([0, 1, -2, 4]).expect("on the cone")
}

pub fn s1() -> ProjPoint3 {
    ProjPoint3::from_i64([8, 0, 0, -1]).expect("on the cone")
}

pub fn special_points(i: i64) -> SpecialPoints {
    SpecialPoints { i, r: tau_point(-i, &r0()), s: tau_point(1 - i, &s1()) }
}

/// Intersection of a line with a hyperplane cut, with the restricted linear
/// form as a certificate that the root is simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineMeet {
    pub line: i64,
    pub point: ProjPoint3,
    /// The restriction `alpha a + beta b` of the form to the line.
    pub restriction: [Rational; 2],
}

impl LineMeet {
    pub fn simple_root(&self) -> bool {
        !(self.restriction[0].is_zero() && self.restriction[1].is_zero())
    }
}

/// `L_i` meets the hyperplane `form = 0` in one point unless contained in it.
pub fn meet_line_form(i: i64, form: &ConePoly) -> Result<LineMeet> {
    let line = LineParam::new(i);
    let [alpha, beta] = line.restrict_linear(form);
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::LineContained { line: i });
    }
    let point = line.point_at(&-&beta, &alpha)?;
    Ok(LineMeet { line: i, point, restriction: [alpha, beta] })
}

/// `L_i` meets `tau^{-j}(D)`.
pub fn meet_line_hyperplane(i: i64, j: i64) -> Result<LineMeet> {
    meet_line_form(i, &d_form().pullback(j))
}

pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Rational roots in `P^1` of `a u^2 + b uv + c v^2`, with multiplicities.
/// Returns `None` for the zero form.
pub fn binary_quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Option<Vec<(ProjPoint1, u32)>> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return None;
    }
    let p1 = |u: Rational, v: Rational| ProjPoint1::new([u, v]).expect("nonzero");
    if a.is_zero() {
        // v (b u + c v)
        if b.is_zero() {
            return Some(vec![(p1(ri(1), ri(0)), 2)]);
        }
        let other = p1(-c.clone(), b.clone());
        let inf = p1(ri(1), ri(0));
        return Some(if other == inf { vec![(inf, 2)] } else { vec![(inf, 1), (other, 1)] });
    }
    let disc = b * b - Rational::from_integer(BigInt::from(4)) * a * c;
    let two_a = a * ri(2);
    if disc.is_zero() {
        return Some(vec![(p1(-b / &two_a, ri(1)), 2)]);
    }
    let Some(s) = rational_sqrt(&disc) else {
        return Some(Vec::new());
    };
    let mut roots = vec![(p1((-b + &s) / &two_a, ri(1)), 1), (p1((-b - &s) / &two_a, ri(1)), 1)];
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rq;

    fn p3(c: [i64; 4]) -> ProjPoint3 {
        ProjPoint3::from_i64(c).unwrap()
    }

    #[test]
    fn line_parametrizations() {
        for i in -6..=6 {
            let line = LineParam::new(i);
            assert_eq!(line.point_at(&ri(1), &ri(0)).unwrap(), ProjPoint3::vertex());
            for (a, b) in [(0, 1), (1, 1), (-3, 2), (5, -7)] {
                let q = line.point_at(&ri(a), &ri(b)).unwrap();
                assert!(!q.is_vertex());
                assert_eq!(project_pi(&q).unwrap(), line_base_point(i), "L{i}");
            }
        }
        let l0 = LineParam::new(0).point_at(&ri(3), &ri(1)).unwrap();
        assert_eq!(l0, p3([3, 1, -2, 4]));
        assert!(ConePoly::parse("2*x + y").unwrap().eval(l0.coords()).is_zero());
        let l1 = LineParam::new(1).point_at(&ri(3), &ri(1)).unwrap();
        assert_eq!(l1, p3([3, 0, 0, 1]));
    }

    #[test]
    fn tau_inverse_shifts_lines() {
        for i in -4..=4 {
            let line = LineParam::new(i);
            for k in 1..=20 {
                let q = line.point_at(&rq(k, 3), &ri(1)).unwrap();
                assert!(on_line(i + 1, &tau_point(-1, &q)));
            }
        }
    }

    #[test]
    fn special_point_values() {
        assert_eq!(special_points(0).r, p3([0, 1, -2, 4]));
        assert_eq!(special_points(1).s, p3([8, 0, 0, -1]));
        for i in -10..=10 {
            let sp = special_points(i);
            assert!(sp.check(), "{i}");
            assert_eq!(project_pi(&sp.r).unwrap(), line_base_point(i));
        }
    }

    #[test]
    fn meets() {
        assert_eq!(meet_line_hyperplane(0, 0).unwrap().point, r0());
        assert_eq!(meet_line_hyperplane(1, 0).unwrap().point, s1());
        for i in 0..=6 {
            let m = meet_line_hyperplane(i, i).unwrap();
            assert_eq!(m.point, special_points(i).r);
            assert!(m.simple_root());
            assert_eq!(meet_line_hyperplane(i + 1, i).unwrap().point, special_points(i + 1).s);
        }
        let contained = ConePoly::parse("2*x + y").unwrap();
        assert_eq!(meet_line_form(0, &contained), Err(Error::LineContained { line: 0 }));
    }

    #[test]
    fn line_indices() {
        for i in -8..=8 {
            assert_eq!(line_index_of(&line_base_point(i), 10), Some(i));
        }
        assert_eq!(line_index_of(&ProjPoint1::from_i64(-1, 1).unwrap(), 10), None);
    }

    #[test]
    fn quadratic_roots() {
        let r = binary_quadratic_roots(&ri(1), &ri(2), &ri(1)).unwrap();
        assert_eq!(r, vec![(ProjPoint1::from_i64(-1, 1).unwrap(), 2)]);
        let r = binary_quadratic_roots(&ri(1), &ri(0), &ri(1)).unwrap();
        assert!(r.is_empty());
        let r = binary_quadratic_roots(&ri(0), &ri(1), &ri(0)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(binary_quadratic_roots(&ri(0), &ri(0), &ri(0)).is_none());
        assert_eq!(rational_sqrt(&rq(9, 4)), Some(rq(3, 2)));
        assert_eq!(rational_sqrt(&ri(2)), None);
    }
}
