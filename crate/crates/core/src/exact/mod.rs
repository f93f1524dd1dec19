//! Exact arithmetic over the rationals: numbers, sparse polynomials and
//! dense matrices with fraction-free elimination.

mod matrix;
mod poly;

pub use matrix::{mat_rank, nullspace, rank_fraction_free, rank_shuffled, span_contains, Echelon, QMatrix};
pub use poly::{joint_content_scale, mono_degree, poly_arith, Mono, MultiPoly, PolyOp, VarSet, MAX_VARS};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn ri(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive. The zero vector maps to zeros.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    make_primitive(&mut out);
    out
}

/// Divides an integer vector by the gcd of its entries and fixes the sign so
/// that the first nonzero entry is positive.
pub fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    if neg {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}
