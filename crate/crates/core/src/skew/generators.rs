use super::ring::FTable;
use crate::cone::{rat_equal, ConePoly, ConeRat, ProjPoint3};
use crate::exact::{ri, MultiPoly, VarSet};

/// A polynomial in `a = f_0, b = f_1, c = f_2` given as `(coeff, [ea, eb, ec])`.
pub type FPoly = Vec<(i64, [u32; 3])>;

pub fn eval_fpoly(ft: &FTable, p: &FPoly) -> ConeRat {
    let mut acc = ConeRat::zero();
    for (c, e) in p {
        let mut t = ConeRat::constant(ri(*c));
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = &t * ft.f(i);
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// `4(2ac + a - c)`.
pub fn fun0() -> FPoly {
    vec![(8, [1, 0, 1]), (4, [1, 0, 0]), (-4, [0, 0, 1])]
}

/// `-4ab - 4ac - 6a + 4b + 2c`.
pub fn fun1() -> FPoly {
    vec![(-4, [1, 1, 0]), (-4, [1, 0, 1]), (-6, [1, 0, 0]), (4, [0, 1, 0]), (2, [0, 0, 1])]
}

/// `ab + a - b`.
pub fn fun2() -> FPoly {
    vec![(1, [1, 1, 0]), (1, [1, 0, 0]), (-1, [0, 1, 0])]
}

/// `ab - a - b`.
pub fn fun2_alternative() -> FPoly {
    vec![(1, [1, 1, 0]), (-1, [1, 0, 0]), (-1, [0, 1, 0])]
}

/// `-(6a^2c + 3a^2 + 4ab - 5ac + 3a - 4b + c)`.
pub fn fun3() -> FPoly {
    vec![
        (-6, [2, 0, 1]),
        (-3, [2, 0, 0]),
        (-4, [1, 1, 0]),
        (5, [1, 0, 1]),
        (-3, [1, 0, 0]),
        (4, [0, 1, 0]),
        (-1, [0, 0, 1]),
    ]
}

/// The two quotients of polynomials in `f_0, f_1, f_2` that recover the
/// function field generators `y/z` and `(2x + 5y + 2z)/w`.
#[derive(Clone, Debug)]
pub struct GeneratorCheck {
    pub first: ConeRat,
    pub second: ConeRat,
    pub first_ok: bool,
    pub second_ok: bool,
    /// Whether the alternative numerator `f_0 f_1 - f_0 - f_1` also works.
    pub alternative_ok: bool,
}

pub fn generator_check() -> GeneratorCheck {
    let ft = FTable::new(3);
    let quotient = |n: &FPoly, d: &FPoly| {
        eval_fpoly(&ft, n).checked_div(&eval_fpoly(&ft, d)).expect("denominator is a nonzero function")
    };
    let first = quotient(&fun0(), &fun1());
    let second = quotient(&fun2(), &fun3());
    let alternative = quotient(&fun2_alternative(), &fun3());
    let y_over_z = ConeRat::parse("y", "z").expect("fixed data");
    let target = ConeRat::parse("2*x + 5*y + 2*z", "w").expect("fixed data");
    GeneratorCheck {
        first_ok: rat_equal(&first, &y_over_z),
        second_ok: rat_equal(&second, &target),
        alternative_ok: rat_equal(&alternative, &target),
        first,
        second,
    }
}

pub fn routine_a2() -> bool {
    let c = generator_check();
    c.first_ok && c.second_ok
}

/// Result of composing `alpha: X -> P^1 x P^1` and `beta: P^1 x P^1 -> X`.
#[derive(Clone, Debug)]
pub struct BirationalCheck {
    /// `beta(alpha(p)) = lambda p` on the cone with `lambda = z(2x + 5y + 2z)`.
    pub beta_alpha: bool,
    /// `alpha(beta(q)) = (cb q_1, q(a,b) q_2)` with `q = 2a^2 + 5ab + 2b^2`.
    pub alpha_beta: bool,
    /// Round trip at the sample point `[1:1:1:1]`.
    pub sample: bool,
}

impl BirationalCheck {
    pub fn ok(&self) -> bool {
        self.beta_alpha && self.alpha_beta && self.sample
    }
}

fn beta_alpha_coords() -> [ConePoly; 4] {
    let cp = |s: &str| ConePoly::parse(s).expect("fixed data");
    let (a, b, c, d) = (cp("y"), cp("z"), cp("2*x + 5*y + 2*z"), cp("w"));
    let q = &(&(&a * &a).scale(&ri(2)) + &(&a * &b).scale(&ri(5))) + &(&b * &b).scale(&ri(2));
    [&d * &q, &c * &(&a * &a), &c * &(&a * &b), &c * &(&b * &b)]
}

pub fn check_birational() -> BirationalCheck {
    let cp = |s: &str| ConePoly::parse(s).expect("fixed data");
    let lambda = &cp("z") * &cp("2*x + 5*y + 2*z");
    let coords = beta_alpha_coords();
    let originals = [cp("w"), cp("x"), cp("y"), cp("z")];
    let beta_alpha = coords.iter().zip(&originals).all(|(c, o)| *c == &lambda * o);

    let vars = VarSet::new(&["a", "b", "c", "d"]);
    let mp = |s: &str| MultiPoly::parse(&vars, s).expect("fixed data");
    let (a, b, c, d) = (mp("a"), mp("b"), mp("c"), mp("d"));
    let q = mp("2*a^2 + 5*a*b + 2*b^2");
    let big_w = &d * &q;
    let big_x = &c * &(&a * &a);
    let big_y = &c * &(&a * &b);
    let big_z = &c * &(&b * &b);
    let cb = &c * &b;
    let first_factor = big_y == &cb * &a && big_z == &cb * &b;
    let lin = &(&big_x.scale(&ri(2)) + &big_y.scale(&ri(5))) + &big_z.scale(&ri(2));
    let second_factor = lin == &q * &c && big_w == &q * &d;
    let alpha_beta = first_factor && second_factor;

    let p = ProjPoint3::from_i64([1, 1, 1, 1]).expect("on the cone");
    let image: Vec<_> = coords.iter().map(|c| c.eval(p.coords())).collect();
    let sample = ProjPoint3::new([image[0].clone(), image[1].clone(), image[2].clone(), image[3].clone()])
        .is_ok_and(|q| q == p);

    BirationalCheck { beta_alpha, alpha_beta, sample }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_quotient_is_y_over_z() {
        assert!(generator_check().first_ok);
    }

    #[test]
    fn fun2_numerator_gives_second_generator() {
        let c = generator_check();
        assert!(c.second_ok, "{}", c.second);
        assert!(!c.alternative_ok);
        assert!(routine_a2());
    }

    #[test]
    fn perturbed_numerator_fails() {
        let ft = FTable::new(3);
        let mut bad = fun0();
        bad[0].0 = 9;
        let q = eval_fpoly(&ft, &bad).checked_div(&eval_fpoly(&ft, &fun1())).unwrap();
        let target = ConeRat::parse("y", "z").unwrap();
        assert!(!rat_equal(&q, &target));
    }

    #[test]
    fn birational_pair() {
        let c = check_birational();
        assert!(c.beta_alpha && c.alpha_beta && c.sample);
    }
}
