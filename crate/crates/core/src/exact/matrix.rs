use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{make_primitive, primitive_integer_vector, Rational};
use crate::error::{Error, Result};

/// Dense rectangular matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length. An empty row list gives a
    /// `0 x cols` matrix, where `cols` defaults to zero.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(QMatrix { rows: rows.len(), cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        let entries = data.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
        Self::new(rows, cols, entries).expect("entry count matches shape")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Matrix power; negative exponents use the exact inverse.
    pub fn pow(&self, k: i64) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = QMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Gauss-Jordan inverse; a singular matrix reports a dimension mismatch
    /// between its size and its rank.
    pub fn inverse(&self) -> Result<QMatrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::DimensionMismatch { expected: n, found: self.cols });
        }
        let mut a = self.row_vecs();
        let mut inv = QMatrix::identity(n).row_vecs();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero());
            let Some(p) = piv else {
                return Err(Error::DimensionMismatch { expected: n, found: col });
            };
            a.swap(col, p);
            inv.swap(col, p);
            let s = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &s;
                inv[col][j] = &inv[col][j] / &s;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let t = &a[col][j] * &f;
                        a[r][j] -= t;
                        let t = &inv[col][j] * &f;
                        inv[r][j] -= t;
                    }
                }
            }
        }
        QMatrix::from_rows(&inv)
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| primitive_integer_vector(self.row(r))).collect()
    }
}

/// Rank by fraction-free (Bareiss) elimination after clearing each row's
/// denominators. Every division performed is exact.
pub fn rank_fraction_free(m: &QMatrix) -> usize {
    let mut a = m.integer_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Rank by plain rational Gauss elimination on a copy whose rows and
/// columns were shuffled with a seeded generator.
pub fn rank_shuffled(m: &QMatrix, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rp: Vec<usize> = (0..m.rows()).collect();
    let mut cp: Vec<usize> = (0..m.cols()).collect();
    rp.shuffle(&mut rng);
    cp.shuffle(&mut rng);
    let mut a: Vec<Vec<Rational>> = rp.iter().map(|&r| cp.iter().map(|&c| m.get(r, c).clone()).collect()).collect();
    let rows = m.rows();
    let cols = m.cols();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = Rational::one() / &a[rank][col];
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for j in col..cols {
                if !prow[j].is_zero() {
                    let t = &prow[j] * &f;
                    row[j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the rationals. With `certified` set the result is recomputed
/// by the shuffled rational route and the two must agree.
pub fn mat_rank(m: &QMatrix, certified: bool) -> Result<usize> {
    let primary = rank_fraction_free(m);
    if certified {
        let shuffled = rank_shuffled(m, 0x5eed);
        if shuffled != primary {
            return Err(Error::CertificationMismatch { primary, shuffled });
        }
    }
    Ok(primary)
}

/// Whether `v` lies in the rational span of `basis`.
pub fn span_contains(basis: &[Vec<Rational>], v: &[Rational]) -> Result<bool> {
    for b in basis {
        if b.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: v.len(), found: b.len() });
        }
    }
    let mut ech = Echelon::new(v.len());
    for b in basis {
        ech.insert_rational(b);
    }
    Ok(ech.contains_rational(v))
}

/// Basis of the right nullspace `{x : m x = 0}` via reduced row echelon form.
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Rational>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.row_vecs();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let s = a[r][col].clone();
        for j in col..cols {
            a[r][j] = &a[r][j] / &s;
        }
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..cols {
                    if !a[r][j].is_zero() {
                        let t = &a[r][j] * &f;
                        a[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![Rational::zero(); cols];
            x[fc] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[i][fc].clone();
            }
            x
        })
        .collect()
}

/// Incrementally built row echelon form over the integers. Each stored row
/// is primitive and vanishes at the pivot columns of the rows stored before
/// it, so reduction in insertion order never re-fills a cleared column.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &[BigInt]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (col, row) in &self.rows {
            if v[*col].is_zero() {
                continue;
            }
            let a = row[*col].clone();
            let b = v[*col].clone();
            for j in 0..self.width {
                if row[j].is_zero() {
                    if !v[j].is_zero() {
                        v[j] *= &a;
                    }
                } else {
                    v[j] = &v[j] * &a - &b * &row[j];
                }
            }
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.width);
        let mut v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            Some(col) => {
                make_primitive(&mut v);
                self.rows.push((col, v));
                true
            }
            None => false,
        }
    }

    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        self.insert(primitive_integer_vector(v))
    }

    pub fn contains(&self, v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_rational(&self, v: &[Rational]) -> bool {
        self.contains(primitive_integer_vector(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(mat_rank(&QMatrix::identity(3), true).unwrap(), 3);
        assert_eq!(mat_rank(&QMatrix::zeros(2, 3), true).unwrap(), 0);
    }

    #[test]
    fn span_membership_basics() {
        let basis = vec![vec![ri(1), ri(0)]];
        assert!(span_contains(&basis, &[ri(0), ri(0)]).unwrap());
        assert!(!span_contains(&basis, &[ri(0), ri(1)]).unwrap());
        assert!(matches!(span_contains(&[vec![ri(1)]], &[ri(0), ri(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let rows = vec![vec![ri(1), ri(2)], vec![ri(3)]];
        assert!(QMatrix::from_rows(&rows).is_err());
        assert!(QMatrix::new(2, 2, vec![ri(1)]).is_err());
    }

    #[test]
    fn inverse_and_negative_power() {
        let m = QMatrix::from_i64(2, 2, &[0, 1, -1, -2]);
        let inv = m.pow(-1).unwrap();
        assert_eq!(inv, QMatrix::from_i64(2, 2, &[-2, -1, 1, 0]));
        assert_eq!(m.pow(3).unwrap().mul(&m.pow(-3).unwrap()).unwrap(), QMatrix::identity(2));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = QMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(m.mul_vec(x).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn echelon_tracks_independence() {
        let mut e = Echelon::new(3);
        assert!(e.insert_rational(&[ri(1), ri(1), ri(0)]));
        assert!(e.insert_rational(&[ri(0), ri(1), ri(1)]));
        assert!(!e.insert_rational(&[ri(1), ri(2), ri(1)]));
        assert!(e.insert_rational(&[ri(0), ri(0), ri(5)]));
        assert_eq!(e.rank(), 3);
    }
}
