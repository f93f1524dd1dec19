//! Evaluation ranks modulo the Mersenne prime `2^61 - 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::ConePoly;
use crate::exact::Rational;

pub(crate) const P: u64 = (1 << 61) - 1;

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

pub(crate) fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

fn reduce_rational(r: &Rational) -> Option<u64> {
    let d = reduce_int(r.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(r.numer()), inv(d)))
}

/// Value of a cone polynomial at `(w, x, y, z)` over the prime field.
pub(crate) fn eval(p: &ConePoly, pt: &[u64; 4]) -> Option<u64> {
    let mut acc = 0;
    for (m, c) in p.poly().terms() {
        let mut t = reduce_rational(c)?;
        for (i, &x) in pt.iter().enumerate() {
            t = mul(t, pow(x, m[i] as u64));
        }
        acc = add(acc, t);
    }
    Some(acc)
}

/// Incremental row echelon form over the prime field with normalized pivots.
struct ModEchelon {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    fn new() -> Self {
        ModEchelon { rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for (col, row) in &self.rows {
            let c = v[*col];
            if c == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if *r != 0 {
                    *x = sub(*x, mul(c, *r));
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(col) => {
                let s = inv(v[col]);
                for x in v.iter_mut() {
                    *x = mul(*x, s);
                }
                self.rows.push((col, v));
                true
            }
            None => false,
        }
    }
}

/// Rank over the prime field of the given rows.
pub(crate) fn rank(rows: Vec<Vec<u64>>) -> usize {
    let mut ech = ModEchelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rows.len()
}

/// Ranks of `V_0, ..., V_{n_max}` as spans of evaluation vectors at
/// `samples` random points of the cone over the prime field, using
/// `V_m = V_{m-1} + f_{m-2} V_{m-2}`. Each rank is a lower bound for the true
/// dimension over the rationals.
pub(crate) fn chain_ranks(nums: &[ConePoly], dens: &[ConePoly], n_max: usize, samples: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let needed = n_max.saturating_sub(1);
    let mut points: Vec<[u64; 4]> = Vec::with_capacity(samples);
    let mut fvals: Vec<Vec<u64>> = vec![Vec::with_capacity(samples); needed];
    while points.len() < samples {
        let (w, u, v) = (rng.gen_range(0..P), rng.gen_range(0..P), rng.gen_range(0..P));
        let pt = [w, mul(u, u), mul(u, v), mul(v, v)];
        let mut vals = Vec::with_capacity(needed);
        let mut ok = true;
        for i in 0..needed {
            match (eval(&nums[i], &pt), eval(&dens[i], &pt)) {
                (Some(n), Some(d)) if d != 0 => vals.push(mul(n, inv(d))),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            points.push(pt);
            for (i, val) in vals.into_iter().enumerate() {
                fvals[i].push(val);
            }
        }
    }

    // V_{m-1} is contained in V_m, so the independent vectors found so far
    // are only ever appended and V_k is spanned by the first ranks[k] of them
    let ones = vec![1u64; samples];
    let mut ranks: Vec<usize> = Vec::with_capacity(n_max + 1);
    let mut echelon = ModEchelon::new();
    let mut vectors: Vec<Vec<u64>> = Vec::new();
    for m in 0..=n_max {
        if m <= 1 {
            if echelon.insert(ones.clone()) {
                vectors.push(ones.clone());
            }
        } else {
            let f = &fvals[m - 2];
            for k in 0..ranks[m - 2] {
                let v: Vec<u64> = vectors[k].iter().zip(f).map(|(x, y)| mul(*x, *y)).collect();
                if echelon.insert(v.clone()) {
                    vectors.push(v);
                }
            }
        }
        ranks.push(echelon.rows.len());
    }
    ranks
}
