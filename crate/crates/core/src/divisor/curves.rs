use std::collections::BTreeSet;

use num_traits::Zero;

use super::expr::{DivisorExpr, PrimeName};
use super::lines::{binary_quadratic_roots, d_form, line_index_of, r0, s1, R_FORM, S_FORM};
use crate::cone::{f_index, orbit, param, param_vars, project_pi, sigma_matrix, ConePoly, ProjPoint1, ProjPoint3};
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, QMatrix, Rational, MAX_VARS};

fn linear_coeffs(form: &ConePoly) -> Result<[Rational; 4]> {
    if form.homogeneous_degree()? != Some(1) {
        return Err(Error::BadParams("expected a linear form".into()));
    }
    Ok(std::array::from_fn(|i| {
        let mut m = [0u16; MAX_VARS];
        m[i] = 1;
        form.poly().coeff(&m)
    }))
}

/// The scalar `lambda` with `reduce(form o tau) = lambda form`, if any.
pub fn invariance_scalar(form: &ConePoly) -> Option<Rational> {
    let (m, c) = form.poly().leading_term()?;
    let image = form.pullback(1);
    let lambda = image.poly().coeff(m) / c;
    (image == form.scale(&lambda)).then_some(lambda)
}

/// Whether the hyperplane section `form = 0` is carried to itself by `tau`.
pub fn invariant_curve(form: &ConePoly) -> bool {
    invariance_scalar(form).is_some()
}

/// Intersection of two hyperplane sections of the cone that avoid the vertex,
/// as points with multiplicities.
pub fn curve_intersection(f1: &ConePoly, f2: &ConePoly) -> Result<Vec<(ProjPoint3, u32)>> {
    let a = linear_coeffs(f1)?;
    let b = linear_coeffs(f2)?;
    if a[0].is_zero() || b[0].is_zero() {
        return Err(Error::AtVertex);
    }
    // eliminate w: a0 f2 - b0 f1 is a binary quadratic in (u, v)
    let q: Vec<Rational> = (1..4).map(|i| &b[0] * &a[i] - &a[0] * &b[i]).collect();
    let roots = binary_quadratic_roots(&q[0], &q[1], &q[2])
        .ok_or_else(|| Error::BadParams("the two curves coincide".into()))?;
    roots
        .into_iter()
        .map(|(p, mult)| {
            let (u, v) = (p.u().clone(), p.v().clone());
            let w = -(&a[1] * &u * &u + &a[2] * &u * &v + &a[3] * &v * &v) / &a[0];
            Ok((ProjPoint3::from_param(&w, &u, &v)?, mult))
        })
        .collect()
}

/// Fixed points of the projective transformation of `P^1` with matrix `m`.
pub fn fixed_points_p1(m: &QMatrix) -> Result<Vec<(ProjPoint1, u32)>> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: m.rows() });
    }
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    binary_quadratic_roots(&-c, &(a - d), b).ok_or_else(|| Error::BadParams("scalar matrix fixes every point".into()))
}

/// `param(4x + 4y + z) = (2u + v)^2`: the plane `4x + 4y + z` cuts `2 L_0`.
pub fn double_line_identity() -> bool {
    let pv = param_vars();
    let u = MultiPoly::var(&pv, 1);
    let v = MultiPoly::var(&pv, 2);
    let lin = &(&u + &u) + &v;
    param(&ConePoly::linear([0, 4, 4, 1])).0 == &lin * &lin
}

/// `Div(f_i)` read off from the factors of the numerator and denominator of
/// `f_i`: the numerator is matched against translates of `D` and the
/// denominator, which has no `w`, splits into two lines through the vertex.
pub fn div_f_factored(i: i64) -> Result<DivisorExpr> {
    let f = f_index(i);
    let window = i.abs() + 4;
    let num = f.num();
    let j = (-window..=window)
        .find(|&j| {
            let d = d_form().pullback(j);
            invariance_ratio(num, &d).is_some()
        })
        .ok_or(Error::NotASection)?;
    let mut out = DivisorExpr::prime(PrimeName::TauD(j));
    let den = linear_coeffs(f.den())?;
    if !den[0].is_zero() {
        return Err(Error::NotASection);
    }
    let roots = binary_quadratic_roots(&den[1], &den[2], &den[3]).ok_or(Error::NotASection)?;
    for (p, mult) in roots {
        let k = line_index_of(&p, window).ok_or(Error::NotASection)?;
        out.add_term(PrimeName::Line(k), -(mult as i64));
    }
    Ok(out)
}

fn invariance_ratio(f: &ConePoly, g: &ConePoly) -> Option<Rational> {
    let (m, c) = g.poly().leading_term()?;
    let lambda = f.poly().coeff(m) / c;
    (!lambda.is_zero() && *f == g.scale(&lambda)).then_some(lambda)
}

/// The orbit facts about `r_0`, `s_1` and the curves `C_r`, `C_s`.
#[derive(Clone, Debug)]
pub struct OrbitGeometryReport {
    pub orbit_n: u32,
    pub cr_scalar: Option<Rational>,
    pub cs_scalar: Option<Rational>,
    pub cr_cs: Vec<(ProjPoint3, u32)>,
    pub sigma_fixed: Vec<(ProjPoint1, u32)>,
    pub r0_orbit_distinct: bool,
    pub s1_orbit_distinct: bool,
    pub orbits_disjoint: bool,
    pub r0_orbit_on_cr: bool,
    pub s1_orbit_on_cs: bool,
    /// Neither `pi(r_0)` nor `pi(s_1)` is fixed by `sigma`.
    pub infinite_order: bool,
    pub double_line: bool,
}

impl OrbitGeometryReport {
    pub fn ok(&self) -> bool {
        let one = Rational::from_integer(1.into());
        let meet = ProjPoint3::from_i64([2, 1, -1, 1]).expect("on the cone");
        let fixed = ProjPoint1::from_i64(-1, 1).expect("nonzero");
        self.cr_scalar.as_ref() == Some(&one)
            && self.cs_scalar.as_ref() == Some(&one)
            && self.cr_cs.len() == 1
            && self.cr_cs[0].0 == meet
            && self.sigma_fixed.len() == 1
            && self.sigma_fixed[0].0 == fixed
            && self.r0_orbit_distinct
            && self.s1_orbit_distinct
            && self.orbits_disjoint
            && self.r0_orbit_on_cr
            && self.s1_orbit_on_cs
            && self.infinite_order
            && self.double_line
    }
}

pub fn orbit_geometry_report(orbit_n: u32) -> Result<OrbitGeometryReport> {
    let cr = ConePoly::linear(R_FORM);
    let cs = ConePoly::linear(S_FORM);
    let or = orbit(&r0(), orbit_n);
    let os = orbit(&s1(), orbit_n);
    let set_r: BTreeSet<&ProjPoint3> = or.points.iter().collect();
    let orbits_disjoint = os.points.iter().all(|q| !set_r.contains(q));
    let on = |form: &ConePoly, pts: &[ProjPoint3]| pts.iter().all(|q| form.eval(q.coords()).is_zero());
    let sigma_fixed = fixed_points_p1(&sigma_matrix())?;
    let fixed: Vec<&ProjPoint1> = sigma_fixed.iter().map(|(p, _)| p).collect();
    let infinite_order = [r0(), s1()].iter().all(|q| match project_pi(q) {
        Ok(p) => !fixed.contains(&&p),
        Err(_) => false,
    });
    Ok(OrbitGeometryReport {
        orbit_n,
        cr_scalar: invariance_scalar(&cr),
        cs_scalar: invariance_scalar(&cs),
        cr_cs: curve_intersection(&cr, &cs)?,
        r0_orbit_distinct: or.all_distinct,
        s1_orbit_distinct: os.all_distinct,
        orbits_disjoint,
        r0_orbit_on_cr: on(&cr, &or.points),
        s1_orbit_on_cs: on(&cs, &os.points),
        sigma_fixed,
        infinite_order,
        double_line: double_line_identity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::expr::div_f;
    use crate::exact::ri;

    #[test]
    fn invariant_curves() {
        assert_eq!(invariance_scalar(&ConePoly::linear(R_FORM)), Some(ri(1)));
        assert_eq!(invariance_scalar(&ConePoly::linear(S_FORM)), Some(ri(1)));
        assert!(!invariant_curve(&ConePoly::parse("w").unwrap()));
        assert!(!invariant_curve(&d_form()));
    }

    #[test]
    fn cr_meets_cs_once() {
        let pts = curve_intersection(&ConePoly::linear(R_FORM), &ConePoly::linear(S_FORM)).unwrap();
        assert_eq!(pts, vec![(ProjPoint3::from_i64([2, 1, -1, 1]).unwrap(), 2)]);
    }

    #[test]
    fn sigma_has_one_fixed_point() {
        let f = fixed_points_p1(&sigma_matrix()).unwrap();
        assert_eq!(f, vec![(ProjPoint1::from_i64(-1, 1).unwrap(), 2)]);
        assert!(fixed_points_p1(&QMatrix::identity(2)).is_err());
    }

    #[test]
    fn report_at_fifty() {
        let r = orbit_geometry_report(50).unwrap();
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn div_f_two_ways() {
        for i in -6..=6 {
            assert_eq!(div_f_factored(i).unwrap(), div_f(i), "{i}");
            assert_eq!(div_f(0).translate(i), div_f(i));
        }
    }
}
