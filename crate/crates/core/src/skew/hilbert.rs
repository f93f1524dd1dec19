use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp;
use super::ring::FTable;
use crate::cone::{ConePoly, ConeRat, ProjPoint3};
use crate::error::{Error, Result};
use crate::exact::{mat_rank, ri, Echelon, Mono, QMatrix, Rational};
use crate::witt::env_dim;

/// Index sequences `i_1 < i_2 < ... < i_k` with gaps of at least two and
/// `i_k <= n - 2`; each encodes the product `f_{i_1} ... f_{i_k}` spanning
/// `V_n`. The empty sequence stands for the constant 1.
pub fn vn_monomials(n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, top: isize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        let mut i = start as isize;
        while i <= top {
            cur.push(i as usize);
            go(i as usize + 2, top, cur, out);
            cur.pop();
            i += 1;
        }
    }
    let mut out = Vec::new();
    go(0, n as isize - 2, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Upper bound `(ceil(n/2) + 1)^2` on `dim V_n`, from `V_n` inside `V_{2k}`
/// and the Hilbert function of the cone.
pub fn vn_upper_bound(n: usize) -> usize {
    let k = n.div_ceil(2) + 1;
    k * k
}

/// The degree-`n` piece `V_n` with its exact dimension.
#[derive(Clone, Debug)]
pub struct SpanSpace {
    pub degree: usize,
    /// Index sequences of the spanning products.
    pub generators: Vec<Vec<usize>>,
    pub dim: usize,
    /// Positions in `generators` of a basis.
    pub basis_idx: Vec<usize>,
}

impl SpanSpace {
    pub fn generator(&self, ft: &FTable, i: usize) -> ConeRat {
        ft.product(&self.generators[i])
    }
}

/// Numerators of all products in `gens` over the common denominator
/// `D_0 ... D_{n-2}`, built by sharing prefixes.
fn common_numerators(ft: &FTable, n: usize, gens: &[Vec<usize>]) -> Vec<ConePoly> {
    if n < 2 {
        return gens.iter().map(|_| ConePoly::one()).collect();
    }
    let top = n - 2;
    let mut cache: BTreeMap<(usize, Vec<usize>), ConePoly> = BTreeMap::new();
    gens.iter()
        .map(|g| {
            let mut acc = ConePoly::one();
            for i in 0..=top {
                let key: Vec<usize> = g.iter().copied().filter(|&j| j <= i).collect();
                if let Some(p) = cache.get(&(i, key.clone())) {
                    acc = p.clone();
                    continue;
                }
                let factor = if g.contains(&i) { ft.num(i) } else { ft.den(i) };
                acc = &acc * factor;
                cache.insert((i, key), acc.clone());
            }
            acc
        })
        .collect()
}

fn coefficient_rows(polys: &[ConePoly]) -> (Vec<Mono>, Vec<Vec<Rational>>) {
    let mut basis: Vec<Mono> =
        polys.iter().flat_map(|p| p.poly().terms().map(|(m, _)| *m).collect::<Vec<_>>()).collect();
    basis.sort();
    basis.dedup();
    let rows = polys.iter().map(|p| p.poly().coefficient_vector(&basis).expect("basis covers all terms")).collect();
    (basis, rows)
}

/// Exact `dim V_n` from the numerator coefficients over a common
/// denominator. With `certified`, the rank is recomputed by two independent
/// elimination routes and a disagreement is an error.
pub fn vn_dim(n: usize, certified: bool) -> Result<SpanSpace> {
    let ft = FTable::new(n.saturating_sub(1));
    vn_dim_with(&ft, n, certified)
}

pub fn vn_dim_with(ft: &FTable, n: usize, certified: bool) -> Result<SpanSpace> {
    let generators = vn_monomials(n);
    let polys = common_numerators(ft, n, &generators);
    let (basis, rows) = coefficient_rows(&polys);
    let mut ech = Echelon::new(basis.len());
    let mut basis_idx = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if ech.insert_rational(r) {
            basis_idx.push(i);
        }
    }
    let dim = ech.rank();
    if certified {
        let m = QMatrix::from_rows(&rows)?;
        let other = mat_rank(&m, true)?;
        if other != dim {
            return Err(Error::CertificationMismatch { primary: dim, shuffled: other });
        }
    }
    Ok(SpanSpace { degree: n, generators, dim, basis_idx })
}

/// Random rational points of the cone avoiding the poles of `f_0 .. f_{n-2}`.
pub fn sample_points(ft: &FTable, n: usize, count: usize, seed: u64) -> Vec<ProjPoint3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let top = n.saturating_sub(1).min(ft.len());
    while out.len() < count {
        let (w, u, v) = (ri(rng.gen_range(-60..=60)), ri(rng.gen_range(-60..=60)), ri(rng.gen_range(-60..=60)));
        if u.is_zero() && v.is_zero() {
            continue;
        }
        let p = ProjPoint3::from_param(&w, &u, &v).expect("parametrized points lie on the cone");
        if (0..top).all(|i| !ft.den(i).eval(p.coords()).is_zero()) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Rank over the prime field `2^61 - 1` of the matrix of values of the
/// spanning products at `3 * vn_upper_bound(n)` seeded rational points, each
/// column scaled by the common denominator so that entries are integers.
///
/// Reduction modulo a prime cannot raise the rank, and the evaluation matrix
/// factors through the numerator coefficient matrix, so
/// `vn_eval_rank <= rational evaluation rank <= vn_dim`. Equality with
/// `vn_dim` therefore certifies all three ranks equal.
pub fn vn_eval_rank(ft: &FTable, n: usize, seed: u64) -> Result<usize> {
    let gens = vn_monomials(n);
    let pts = sample_points(ft, n, 3 * vn_upper_bound(n), seed);
    let top = n.saturating_sub(1);
    let residues: Vec<[u64; 4]> = pts
        .iter()
        .map(|p| {
            let c = p.integer_coords();
            [modp::reduce_int(&c[0]), modp::reduce_int(&c[1]), modp::reduce_int(&c[2]), modp::reduce_int(&c[3])]
        })
        .collect();
    let value = |poly: &ConePoly, pt: &[u64; 4]| modp::eval(poly, pt).expect("integer coefficients");
    let nums: Vec<Vec<u64>> = (0..top).map(|i| residues.iter().map(|pt| value(ft.num(i), pt)).collect()).collect();
    let dens: Vec<Vec<u64>> = (0..top).map(|i| residues.iter().map(|pt| value(ft.den(i), pt)).collect()).collect();
    let rows: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| {
            (0..pts.len())
                .map(|j| {
                    (0..top).fold(1u64, |acc, i| {
                        let v = if g.contains(&i) { nums[i][j] } else { dens[i][j] };
                        modp::mul(acc, v)
                    })
                })
                .collect()
        })
        .collect();
    Ok(modp::rank(rows))
}

/// Rank over the rationals of the evaluation matrix of [`vn_eval_rank`].
/// Exact but slow beyond `n = 9`.
pub fn vn_eval_rank_exact(ft: &FTable, n: usize, seed: u64) -> Result<usize> {
    let gens = vn_monomials(n);
    let pts = sample_points(ft, n, 3 * vn_upper_bound(n), seed);
    let fvals: Vec<Vec<Rational>> = (0..n.saturating_sub(1))
        .map(|i| pts.iter().map(|p| ft.f(i).eval(p)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut ech = Echelon::new(pts.len());
    for g in &gens {
        let row: Vec<Rational> = (0..pts.len()).map(|j| g.iter().fold(ri(1), |acc, &i| acc * &fvals[i][j])).collect();
        ech.insert_rational(&row);
    }
    Ok(ech.rank())
}

/// How a Hilbert-table dimension was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimMethod {
    /// Exact rank of numerator coefficients.
    Symbolic,
    /// Evaluation rank over a prime field that reaches the upper bound, hence exact.
    EvaluationCertified,
    /// Evaluation rank over a prime field below the upper bound: a lower bound.
    EvaluationLowerBound,
}

impl DimMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            DimMethod::Symbolic => "symbolic",
            DimMethod::EvaluationCertified => "evaluation-certified",
            DimMethod::EvaluationLowerBound => "evaluation-lower-bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertRow {
    pub n: usize,
    pub dim: usize,
    pub cumulative: usize,
    pub env_dim: u64,
    pub upper_bound: usize,
    pub method: DimMethod,
    /// For symbolic rows: the exact-rational evaluation rank at seeded points.
    pub eval_rank: Option<usize>,
    /// The prime-field evaluation rank, computed for every row.
    pub modp_rank: usize,
}

#[derive(Clone, Debug)]
pub struct HilbertTable {
    pub rows: Vec<HilbertRow>,
}

#[derive(Clone, Copy, Debug)]
pub struct HilbertOptions {
    pub max_degree: usize,
    /// Degrees up to this use the symbolic rank.
    pub symbolic_max: usize,
    /// Cross-check symbolic rows with exact evaluation ranks.
    pub eval_check: bool,
    pub certified: bool,
    pub seed: u64,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        HilbertOptions { max_degree: 12, symbolic_max: 12, eval_check: true, certified: false, seed: 0x5eed }
    }
}

impl HilbertTable {
    pub fn compute(opts: &HilbertOptions) -> Result<HilbertTable> {
        let n_max = opts.max_degree;
        let ft = FTable::new(n_max.saturating_sub(1));
        let nums: Vec<ConePoly> = (0..ft.len()).map(|i| ft.num(i).clone()).collect();
        let dens: Vec<ConePoly> = (0..ft.len()).map(|i| ft.den(i).clone()).collect();
        let samples = vn_upper_bound(n_max) + 64;
        let modp_ranks = modp::chain_ranks(&nums, &dens, n_max, samples, opts.seed);
        let mut rows = Vec::with_capacity(n_max + 1);
        let mut cumulative = 0;
        for n in 0..=n_max {
            let bound = vn_upper_bound(n);
            let (dim, method, eval_rank) = if n <= opts.symbolic_max {
                let s = vn_dim_with(&ft, n, opts.certified)?;
                let e = if opts.eval_check { Some(vn_eval_rank(&ft, n, opts.seed ^ n as u64)?) } else { None };
                (s.dim, DimMethod::Symbolic, e)
            } else if modp_ranks[n] == bound {
                (modp_ranks[n], DimMethod::EvaluationCertified, None)
            } else {
                (modp_ranks[n], DimMethod::EvaluationLowerBound, None)
            };
            cumulative += dim;
            rows.push(HilbertRow {
                n,
                dim,
                cumulative,
                env_dim: env_dim(n as u32),
                upper_bound: bound,
                method,
                eval_rank,
                modp_rank: modp_ranks[n],
            });
        }
        Ok(HilbertTable { rows })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim).collect()
    }
}

/// Least-squares slope of `log(cumulative)` against `log n`.
#[derive(Clone, Debug)]
pub struct SlopeEstimate {
    pub n_min: usize,
    pub n_max: usize,
    pub slope: f64,
    /// A nearby fraction with small denominator.
    pub rational: Rational,
}

/// Fits over `n_min..=n_max`, where `dims[k] = dim V_k` and the cumulative sum
/// starts at `k = 0`.
pub fn slope_from_dims(dims: &[usize], n_min: usize, n_max: usize) -> Result<SlopeEstimate> {
    if n_min < 1 || n_max < n_min || n_max - n_min + 1 < 4 {
        let points = if n_max >= n_min { n_max - n_min + 1 } else { 0 };
        return Err(Error::WindowTooSmall { points });
    }
    if dims.len() <= n_max {
        return Err(Error::InsufficientDepth(format!(
            "dimensions known through {}, window needs {}",
            dims.len().saturating_sub(1),
            n_max
        )));
    }
    let mut cum = 0usize;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (n, d) in dims.iter().enumerate().take(n_max + 1) {
        cum += d;
        if n >= n_min {
            xs.push((n as f64).ln());
            ys.push((cum as f64).ln());
        }
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let approx = Ratio::<i64>::approximate_float(slope).unwrap_or_else(|| Ratio::from_integer(0));
    let rational = limit_denominator(*approx.numer(), *approx.denom(), 1000);
    Ok(SlopeEstimate { n_min, n_max, slope, rational })
}

/// Best approximation of `p/q` with denominator at most `max_den`, via the
/// continued fraction convergents.
fn limit_denominator(p: i64, q: i64, max_den: i64) -> Rational {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let (mut a, mut b) = (p, q);
    while b != 0 {
        let t = a.div_euclid(b);
        let k2 = t * k1 + k0;
        if k2 > max_den {
            break;
        }
        let h2 = t * h1 + h0;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        (a, b) = (b, a.rem_euclid(b));
    }
    Rational::new(h1.into(), k1.into())
}

/// Slope of the cumulative Hilbert function of `R` over the window.
pub fn gk_slope(table: &HilbertTable, n_min: usize, n_max: usize) -> Result<SlopeEstimate> {
    slope_from_dims(&table.dims(), n_min, n_max)
}
