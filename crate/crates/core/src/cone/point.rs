use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ring::tau_matrix_pow;
use crate::error::{Error, Result};
use crate::exact::{primitive_integer_vector, ri, QMatrix, Rational};

fn normalize(coords: &mut [Rational]) -> bool {
    let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
        return false;
    };
    if !lead.is_one() {
        for c in coords.iter_mut() {
            *c = &*c / &lead;
        }
    }
    true
}

fn fmt_integer_coords(f: &mut fmt::Formatter<'_>, coords: &[Rational]) -> fmt::Result {
    let ints: Vec<String> = primitive_integer_vector(coords).iter().map(|c| c.to_string()).collect();
    write!(f, "[{}]", ints.join(":"))
}

/// Point of the cone in `P^3`, scaled so that its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint3 {
    coords: [Rational; 4],
}

impl ProjPoint3 {
    pub fn new(mut coords: [Rational; 4]) -> Result<Self> {
        if !normalize(&mut coords) {
            return Err(Error::BadParams("all coordinates are zero".into()));
        }
        let [_, x, y, z] = &coords;
        if x * z != y * y {
            return Err(Error::OffCone);
        }
        Ok(ProjPoint3 { coords })
    }

    pub fn from_i64(c: [i64; 4]) -> Result<Self> {
        Self::new(c.map(ri))
    }

    /// The cone vertex `[1:0:0:0]`.
    pub fn vertex() -> Self {
        ProjPoint3 { coords: [ri(1), ri(0), ri(0), ri(0)] }
    }

    /// The point `[w : u^2 : uv : v^2]`.
    pub fn from_param(w: &Rational, u: &Rational, v: &Rational) -> Result<Self> {
        Self::new([w.clone(), u * u, u * v, v * v])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_vertex(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Coprime integer coordinates with the first nonzero entry positive.
    pub fn integer_coords(&self) -> Vec<BigInt> {
        primitive_integer_vector(&self.coords)
    }

    pub fn apply(&self, m: &QMatrix) -> Result<ProjPoint3> {
        let v = m.mul_vec(&self.coords);
        Self::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
    }
}

impl fmt::Display for ProjPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_integer_coords(f, &self.coords)
    }
}

impl fmt::Debug for ProjPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint3{self}")
    }
}

/// Point of `P^1` with coordinates `[u:v]`, scaled so its first nonzero
/// coordinate is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint1 {
    coords: [Rational; 2],
}

impl ProjPoint1 {
    pub fn new(mut coords: [Rational; 2]) -> Result<Self> {
        if !normalize(&mut coords) {
            return Err(Error::BadParams("both coordinates are zero".into()));
        }
        Ok(ProjPoint1 { coords })
    }

    pub fn from_i64(u: i64, v: i64) -> Result<Self> {
        Self::new([ri(u), ri(v)])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn u(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn v(&self) -> &Rational {
        &self.coords[1]
    }

    pub fn integer_coords(&self) -> Vec<BigInt> {
        primitive_integer_vector(&self.coords)
    }

    pub fn apply(&self, m: &QMatrix) -> Result<ProjPoint1> {
        let v = m.mul_vec(&self.coords);
        Self::new([v[0].clone(), v[1].clone()])
    }
}

impl fmt::Display for ProjPoint1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_integer_coords(f, &self.coords)
    }
}

impl fmt::Debug for ProjPoint1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint1{self}")
    }
}

/// The matrix of `sigma: [u:v] -> [v : -u-2v]`.
pub fn sigma_matrix() -> QMatrix {
    QMatrix::from_i64(2, 2, &[0, 1, -1, -2])
}

pub fn sigma_pow(k: i64, q: &ProjPoint1) -> ProjPoint1 {
    let m = sigma_matrix().pow(k).expect("sigma is invertible");
    q.apply(&m).expect("invertible map keeps points nonzero")
}

/// `tau^k(P)`.
pub fn tau_point(k: i64, p: &ProjPoint3) -> ProjPoint3 {
    p.apply(&tau_matrix_pow(k)).expect("tau preserves the cone")
}

/// The projection from the vertex onto the conic base, `[x:y]` or `[y:z]`.
pub fn project_pi(p: &ProjPoint3) -> Result<ProjPoint1> {
    let [_, x, y, z] = &p.coords;
    if !x.is_zero() {
        ProjPoint1::new([x.clone(), y.clone()])
    } else if !z.is_zero() {
        ProjPoint1::new([y.clone(), z.clone()])
    } else {
        Err(Error::AtVertex)
    }
}

/// Points carrying the `tau` (on the cone) or `sigma` (on the line) action.
pub trait OrbitAction: Clone + Ord {
    fn act(&self, k: i64) -> Self;
}

impl OrbitAction for ProjPoint3 {
    fn act(&self, k: i64) -> Self {
        tau_point(k, self)
    }
}

impl OrbitAction for ProjPoint1 {
    fn act(&self, k: i64) -> Self {
        sigma_pow(k, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<P> {
    /// `points[n + N]` is the image under the `n`-th power, `-N <= n <= N`.
    pub points: Vec<P>,
    pub all_distinct: bool,
}

pub fn orbit<P: OrbitAction>(p: &P, n: u32) -> Orbit<P> {
    let n = n as i64;
    let points: Vec<P> = (-n..=n).map(|k| p.act(k)).collect();
    let distinct: BTreeSet<&P> = points.iter().collect();
    let all_distinct = distinct.len() == points.len();
    Orbit { points, all_distinct }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(c: [i64; 4]) -> ProjPoint3 {
        ProjPoint3::from_i64(c).unwrap()
    }

    fn p1(u: i64, v: i64) -> ProjPoint1 {
        ProjPoint1::from_i64(u, v).unwrap()
    }

    #[test]
    fn points_are_canonical_and_on_cone() {
        assert_eq!(p3([0, 2, -4, 8]), p3([0, 1, -2, 4]));
        assert_eq!(ProjPoint3::from_i64([1, 1, 0, 1]), Err(Error::OffCone));
        assert_eq!(p3([8, 0, 0, -1]).to_string(), "[8:0:0:-1]");
        assert_eq!(p3([-8, 0, 0, 1]).to_string(), "[8:0:0:-1]");
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project_pi(&p3([0, 1, -2, 4])).unwrap(), p1(1, -2));
        assert_eq!(project_pi(&p3([8, 0, 0, -1])).unwrap(), p1(0, 1));
        assert_eq!(project_pi(&ProjPoint3::vertex()), Err(Error::AtVertex));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_pow(1, &p1(1, -2)), p1(-2, 3));
        assert_eq!(sigma_pow(-1, &p1(1, -2)), p1(0, 1));
        assert_eq!(sigma_pow(1, &p1(-1, 1)), p1(-1, 1));
    }

    #[test]
    fn orbits() {
        let o = orbit(&ProjPoint3::vertex(), 5);
        assert_eq!(o.points.len(), 11);
        assert!(!o.all_distinct);
        let o = orbit(&p3([0, 1, -2, 4]), 25);
        assert_eq!(o.points.len(), 51);
        assert!(o.all_distinct);
        let o = orbit(&p1(-1, 1), 10);
        assert!(!o.all_distinct);
        assert!(o.points.iter().all(|q| *q == p1(-1, 1)));
    }

    #[test]
    fn tau_intertwines_with_sigma() {
        let p = p3([3, 1, -2, 4]);
        for k in -3..=3 {
            let lhs = project_pi(&tau_point(k, &p)).unwrap();
            assert_eq!(lhs, sigma_pow(k, &project_pi(&p).unwrap()));
        }
    }
}
