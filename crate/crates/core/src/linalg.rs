//! Dense exact linear algebra over `F_p` (fast path) and `Q` (certificate path).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::ring::{normalize_integer_vector, PrimeField};

/// Row updates below this many entries stay on the calling thread.
const PAR_THRESHOLD: usize = 1 << 16;

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Entries are reduced mod `p` on the way in.
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return invalid(format!("{} entries for a {rows}x{cols} matrix", data.len()));
        }
        let p = field.modulus();
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("ragged rows");
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn identity(field: PrimeField, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.data[i * size + i] = 1;
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| self.field.mul_add(acc, a, b))
            })
            .collect()
    }

    /// Rank over `F_p`. Consumes a copy; works on the transpose when that
    /// has fewer rows.
    pub fn rank(&self) -> usize {
        if self.cols < self.rows {
            self.transpose().into_rank()
        } else {
            self.clone().into_rank()
        }
    }

    /// Rank by forward elimination, destroying the matrix.
    pub fn into_rank(mut self) -> usize {
        let bound = self.rows.min(self.cols);
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == bound {
                break;
            }
            if self.eliminate_column(rank, col, false) {
                rank += 1;
            }
        }
        rank
    }

    /// Brings the pivot for `col` to row `top` and clears the column below it
    /// (and above it when `full`). Returns false when no pivot exists.
    fn eliminate_column(&mut self, top: usize, col: usize, full: bool) -> bool {
        let cols = self.cols;
        let Some(pivot) = (top..self.rows).find(|&r| self.data[r * cols + col] != 0) else {
            return false;
        };
        if pivot != top {
            for c in col..cols {
                self.data.swap(pivot * cols + c, top * cols + c);
            }
        }
        let field = self.field;
        let inv = field.inv(self.data[top * cols + col]);
        if full {
            for c in col..cols {
                let idx = top * cols + c;
                self.data[idx] = field.mul_mod(self.data[idx], inv);
            }
        }
        let (head, tail) = self.data.split_at_mut((top + 1) * cols);
        let (above, pivot_row) = head.split_at_mut(top * cols);
        let pivot_row: &[u64] = pivot_row;
        let scale = if full { 1 } else { inv };
        let update = |row: &mut [u64]| {
            let a = row[col];
            if a != 0 {
                let f = field.neg_mod(field.mul_mod(a, scale));
                axpy(field, &mut row[col..], f, &pivot_row[col..]);
            }
        };
        let work = (self.rows - top) * (cols - col);
        if work >= PAR_THRESHOLD {
            tail.par_chunks_mut(cols).for_each(update);
            if full {
                above.par_chunks_mut(cols).for_each(update);
            }
        } else {
            tail.chunks_mut(cols).for_each(update);
            if full {
                above.chunks_mut(cols).for_each(update);
            }
        }
        true
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        for col in 0..self.cols {
            if pivots.len() == self.rows {
                break;
            }
            if self.eliminate_column(pivots.len(), col, true) {
                pivots.push(col);
            }
        }
        pivots
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let field = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u64; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg_mod(m.get(i, free));
                }
                v
            })
            .collect()
    }
}

/// `dst += f * src` entrywise mod p.
#[inline]
fn axpy(field: PrimeField, dst: &mut [u64], f: u64, src: &[u64]) {
    let p = field.modulus();
    if p == crate::ring::P1 {
        // a + f b < 2^62: stays in u64, folded twice by 31 bits.
        for (d, &s) in dst.iter_mut().zip(src) {
            let x = *d + f * s;
            let r = (x & p) + (x >> 31);
            let r = (r & p) + (r >> 31);
            *d = if r >= p { r - p } else { r };
        }
    } else {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = field.mul_add(*d, f, s);
        }
    }
}

/// `rank_mod_p`.
pub fn rank_mod_p(m: &PrimeMatrix) -> usize {
    m.rank()
}

/// Dense matrix of exact fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return invalid(format!("{} entries for a {rows}x{cols} matrix", data.len()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_integer_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("ragged rows");
        }
        let data = rows
            .iter()
            .flatten()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_integer_rows(&rows)
    }

    pub fn identity(size: usize) -> Self {
        let mut data = vec![BigRational::zero(); size * size];
        for i in 0..size {
            data[i * size + i] = BigRational::one();
        }
        Self {
            rows: size,
            cols: size,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Each row scaled by the lcm of its denominators; same row space.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduction mod `p`, or `None` if `p` divides a denominator.
    pub fn reduce(&self, field: PrimeField) -> Option<PrimeMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| field.from_rational(x))
            .collect::<Option<Vec<_>>>()?;
        PrimeMatrix::new(field, self.rows, self.cols, data).ok()
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        IntegerEchelon::compute(self.integer_rows(), self.cols)
            .pivots
            .len()
    }
}

/// Reduced echelon form over `Z`: pivot rows have zeros in every other pivot
/// column and content 1.
struct IntegerEchelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntegerEchelon {
    fn compute(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let mut pivots = Vec::new();
        for col in 0..cols {
            let top = pivots.len();
            if top == rows.len() {
                break;
            }
            let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, p);
            normalize_integer_vector(&mut rows[top]);
            let pivot_row = rows[top].clone();
            let a = pivot_row[col].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == top || row[col].is_zero() {
                    continue;
                }
                let b = row[col].clone();
                let g = a.gcd(&b);
                let (ma, mb) = (&a / &g, &b / &g);
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &ma - &mb * y;
                }
                normalize_integer_vector(row);
            }
            pivots.push(col);
        }
        rows.truncate(pivots.len());
        Self { rows, pivots }
    }
}

/// Basis of the right kernel over `Q`. Each vector has integer entries,
/// content 1 and a positive first nonzero entry.
pub fn kernel_basis_rational(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let ech = IntegerEchelon::compute(m.integer_rows(), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            // x_free = L, x_pivot_i = -row_i[free] * L / a_i
            let l = ech
                .rows
                .iter()
                .zip(&ech.pivots)
                .filter(|(row, _)| !row[free].is_zero())
                .fold(BigInt::one(), |l, (row, &pc)| l.lcm(&row[pc]));
            let mut v = vec![BigInt::zero(); m.cols];
            v[free] = l.clone();
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
                if !row[free].is_zero() {
                    v[pc] = -(&row[free] * &l) / &row[pc];
                }
            }
            normalize_integer_vector(&mut v);
            v
        })
        .collect()
}

/// A rank computed modulo primes: always a lower bound for the rational
/// rank, and exact when it reaches `min(rows, cols)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankEvidence {
    pub rank: usize,
    /// `rank == min(rows, cols)`, so the lower bound is tight.
    pub certified_exact: bool,
    pub primes: Vec<u64>,
}

/// Maximum of `rank_mod_p` over the given primes, after scaling rows to
/// integers. Primes that still divide a denominator are skipped.
pub fn rank_rational_via_primes(m: &RationalMatrix, primes: &[PrimeField]) -> Result<RankEvidence> {
    let ints = RationalMatrix::from_integer_rows(&m.integer_rows())?;
    let bound = m.rows.min(m.cols);
    let mut best = 0;
    let mut used = Vec::new();
    for &field in primes {
        let Some(reduced) = ints.reduce(field) else {
            continue;
        };
        used.push(field.modulus());
        best = best.max(reduced.rank());
        if best == bound {
            break;
        }
    }
    if used.is_empty() {
        return invalid("no usable prime for rank evaluation");
    }
    Ok(RankEvidence {
        rank: best,
        certified_exact: best == bound,
        primes: used,
    })
}

/// Integer vector times integer matrix rows, for tests and verifiers.
pub fn is_kernel_vector(m: &RationalMatrix, v: &[BigInt]) -> bool {
    let v: Vec<BigRational> = v
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    m.mul_vec(&v).iter().all(|x| x.is_zero())
}
