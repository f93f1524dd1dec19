use std::collections::BTreeSet;

use num_traits::Zero;

use super::expr::{div_monomial, lline, DivisorExpr, PrimeName};
use super::lines::{meet_line_form, special_points, LineParam};
use crate::cone::{ConePoly, ConeRat, ProjPoint3};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::skew::{vn_monomials, FTable};

/// `c_j = (2x + y) o tau^{2j}`, a local equation of `L_{2j} + L_{2j+1}`.
pub fn c_form(j: usize) -> ConePoly {
    ConePoly::linear([0, 2, 1, 0]).pullback(2 * j as i64)
}

/// `c_0 c_1 ... c_{n-1}`.
pub fn c_product(n: usize) -> ConePoly {
    (0..n).fold(ConePoly::one(), |acc, j| &acc * &c_form(j))
}

/// The regular representative `g c_0 ... c_{n-1}` of a section of `L_n`.
pub fn cleared_section(g: &ConeRat, n: usize) -> Result<ConePoly> {
    let top = g.num() * &c_product(n);
    top.div_exact(g.den()).ok_or(Error::NotASection)
}

/// The regular representative of the product `f_{i_1} ... f_{i_k}` as a
/// section of `L_n`, dividing the numerators times `c_0 ... c_{n-1}` by the
/// denominators in one step.
pub fn cleared_monomial(ft: &FTable, seq: &[usize], n: usize) -> Result<ConePoly> {
    let mut top = c_product(n);
    let mut den = ConePoly::one();
    for &i in seq {
        top = &top * ft.num(i);
        den = &den * ft.den(i);
    }
    top.div_exact(&den).ok_or(Error::NotASection)
}

/// Whether the section `g` of `L_n` vanishes at `q`.
pub fn section_vanishes(g: &ConeRat, n: usize, q: &ProjPoint3) -> Result<bool> {
    if q.is_vertex() {
        return Err(Error::AtVertex);
    }
    let rep = cleared_section(g, n)?;
    Ok(rep.eval(q.coords()).is_zero())
}

/// Evidence that a base point on `L_line` is a reduced point: `L_line`
/// occurs once in `LL_n`, and some member divisor avoiding `L_line` meets it
/// at the point through hyperplane components whose restrictions to the line
/// have total vanishing order one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversality {
    pub point: ProjPoint3,
    pub line: i64,
    pub line_multiplicity: i64,
    /// The hyperplane component through the point in the witnessing divisor.
    pub prime: PrimeName,
    /// Restriction `alpha a + beta b` of its form to the line.
    pub restriction: [Rational; 2],
    pub order: i64,
}

impl Transversality {
    pub fn simple(&self) -> bool {
        self.line_multiplicity == 1 && self.order == 1
    }
}

/// The set-theoretic base locus of the spanning monomials of `V_{2n}`.
#[derive(Clone, Debug)]
pub struct BaseLocus {
    pub n: usize,
    pub points: Vec<ProjPoint3>,
    /// Lines contained in every member divisor.
    pub line_components: Vec<i64>,
    pub certificates: Vec<Transversality>,
    /// Number of member divisors `Div(m) + LL_n`.
    pub members: usize,
    /// Whether every member divisor was effective.
    pub all_effective: bool,
}

impl BaseLocus {
    /// `{r_0, s_{2n-1}}`.
    pub fn expected(n: usize) -> Vec<ProjPoint3> {
        let mut v = vec![special_points(0).r, special_points(2 * n as i64 - 1).s];
        v.sort();
        v
    }

    pub fn matches_expected(&self) -> bool {
        self.line_components.is_empty() && self.points == Self::expected(self.n)
    }

    pub fn certified(&self) -> bool {
        self.certificates.len() == self.points.len() && self.certificates.iter().all(Transversality::simple)
    }

    pub fn contains_vertex(&self) -> bool {
        self.points.iter().any(ProjPoint3::is_vertex)
    }
}

fn line_of(q: &ProjPoint3, lines: &[i64]) -> Option<i64> {
    lines.iter().copied().find(|&i| PrimeName::Line(i).contains(q))
}

pub fn base_locus(n: usize) -> Result<BaseLocus> {
    if n == 0 {
        return Err(Error::BadParams("base locus needs n >= 1".into()));
    }
    let ll = lline(n);
    let mut members: Vec<DivisorExpr> = Vec::new();
    let mut all_effective = true;
    for seq in vn_monomials(2 * n) {
        let (div, effective) = div_monomial(&seq, n)?;
        all_effective &= effective;
        members.push(&div + &ll);
    }

    let lines: Vec<i64> =
        ll.support().filter_map(|p| if let PrimeName::Line(i) = p { Some(*i) } else { None }).collect();
    let hyperplanes: BTreeSet<PrimeName> =
        members.iter().flat_map(|m| m.support().cloned().collect::<Vec<_>>()).filter(|p| p.form().is_some()).collect();

    let mut line_components = Vec::new();
    let mut candidates: BTreeSet<ProjPoint3> = BTreeSet::new();
    candidates.insert(ProjPoint3::vertex());
    for &i in &lines {
        let line = PrimeName::Line(i);
        if members.iter().all(|m| m.multiplicity(&line) > 0) {
            line_components.push(i);
            continue;
        }
        for h in &hyperplanes {
            match meet_line_form(i, &h.form().expect("hyperplane prime")) {
                Ok(m) => {
                    candidates.insert(m.point);
                }
                Err(Error::LineContained { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let points: Vec<ProjPoint3> =
        candidates.into_iter().filter(|q| members.iter().all(|m| m.support_contains(q))).collect();

    let mut certificates = Vec::new();
    for q in points.iter().filter(|q| !q.is_vertex()) {
        let Some(i) = line_of(q, &lines) else { continue };
        let line = PrimeName::Line(i);
        let param = LineParam::new(i);
        let best = members
            .iter()
            .filter(|m| m.multiplicity(&line) == 0)
            .filter_map(|m| {
                let through: Vec<(&PrimeName, i64)> = m
                    .support()
                    .filter(|p| p.form().is_some() && p.contains(q))
                    .map(|p| (p, m.multiplicity(p)))
                    .collect();
                let order: i64 = through.iter().map(|(_, k)| k).sum();
                through.first().map(|(p, _)| ((*p).clone(), order))
            })
            .min_by_key(|(_, order)| *order);
        if let Some((prime, order)) = best {
            let restriction = param.restrict_linear(&prime.form().expect("hyperplane prime"));
            let simple_root = !(restriction[0].is_zero() && restriction[1].is_zero());
            certificates.push(Transversality {
                point: q.clone(),
                line: i,
                line_multiplicity: ll.multiplicity(&line),
                prime,
                restriction,
                order: if simple_root { order } else { 0 },
            });
        }
    }

    Ok(BaseLocus { n, points, line_components, certificates, members: members.len(), all_effective })
}
