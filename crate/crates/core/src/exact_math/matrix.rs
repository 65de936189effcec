use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{denominator_lcm, Rational};
use crate::error::{input, Result};

pub type RationalVector = Vec<Rational>;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return input(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            ));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return input("ragged matrix rows");
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[Rational]) -> Result<()> {
        if self.rows > 0 && row.len() != self.cols {
            return input(format!("row of length {} for {} columns", row.len(), self.cols));
        }
        self.cols = row.len();
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn column(&self, j: usize) -> RationalVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<RationalVector> {
        if x.len() != self.cols {
            return input(format!("vector of length {} against {} columns", x.len(), self.cols));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// Entries as `i64` when every entry is an integer in range.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        let data = self.data.iter().map(Rational::to_i64).collect::<Option<Vec<_>>>()?;
        Some(IntegerMatrix { rows: self.rows, cols: self.cols, data })
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        f.debug_struct("RationalMatrix").field("entries", &rows).finish()
    }
}

/// Dense row-major integer matrix. Entries are machine integers; the
/// algorithms that can grow them (Smith form, determinants) widen internally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return input(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            ));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return input("ragged matrix rows");
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| Rational::from_integer(v)).collect(),
        }
    }

    /// Submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntegerMatrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j)))
            .collect();
        IntegerMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Exact determinant by Bareiss elimination. `None` if not square.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut m: Vec<Vec<BigInt>> = self.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        Some(bareiss_det(&mut m, n))
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegerMatrix").field("entries", &self.to_rows()).finish()
    }
}

fn bareiss_det(m: &mut [Vec<BigInt>], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact rank by fraction-free row elimination on integer-scaled rows.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = denominator_lcm(row);
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pivot_row[col] - &f * p;
            }
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g > BigInt::one() {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Solves `m · x = rhs` for square `m`. `Ok(None)` when `m` is singular.
pub fn solve_square(m: &RationalMatrix, rhs: &[Rational]) -> Result<Option<RationalVector>> {
    let n = m.rows();
    if m.cols() != n {
        return input(format!("solve_square needs a square matrix, got {}x{}", n, m.cols()));
    }
    if rhs.len() != n {
        return input(format!("right-hand side has length {}, expected {n}", rhs.len()));
    }
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(None);
        };
        a.swap(k, p);
        let inv = a[k][k].recip();
        for j in k..=n {
            a[k][j] = &a[k][j] * &inv;
        }
        let pivot = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k || row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for j in k..=n {
                row[j] = &row[j] - &(&f * &pivot[j]);
            }
        }
    }
    Ok(Some(a.into_iter().map(|r| r[n].clone()).collect()))
}

/// Result of [`solve_square_small`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmallSolve {
    Singular,
    Solution(RationalVector),
}

/// Solves a square system with small integer data using fraction-free
/// elimination in `i128`. Returns `None` if an intermediate overflows, in
/// which case callers should fall back to [`solve_square`].
pub fn solve_square_small(m: &[i64], n: usize, rhs: &[i64]) -> Option<SmallSolve> {
    debug_assert_eq!(m.len(), n * n);
    debug_assert_eq!(rhs.len(), n);
    let w = n + 1;
    let mut a: Vec<i128> = Vec::with_capacity(n * w);
    for i in 0..n {
        a.extend(m[i * n..(i + 1) * n].iter().map(|&v| v as i128));
        a.push(rhs[i] as i128);
    }
    let mut prev: i128 = 1;
    for k in 0..n {
        let p = (k..n).find(|&i| a[i * w + k] != 0);
        let Some(p) = p else {
            return Some(SmallSolve::Singular);
        };
        if p != k {
            for j in 0..w {
                a.swap(k * w + j, p * w + j);
            }
        }
        let akk = a[k * w + k];
        for i in k + 1..n {
            let aik = a[i * w + k];
            for j in k + 1..w {
                let v = a[i * w + j]
                    .checked_mul(akk)?
                    .checked_sub(aik.checked_mul(a[k * w + j])?)?;
                a[i * w + j] = v / prev;
            }
            a[i * w + k] = 0;
        }
        prev = akk;
    }
    // Back substitution over the triangular system.
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut s = Rational::from_integer(i64::try_from(a[i * w + n]).ok()?);
        for j in i + 1..n {
            let c = i64::try_from(a[i * w + j]).ok()?;
            if c != 0 {
                s -= &(Rational::from_integer(c) * &x[j]);
            }
        }
        let d = i64::try_from(a[i * w + i]).ok()?;
        x[i] = s / Rational::from_integer(d);
    }
    Some(SmallSolve::Solution(x))
}

/// Primitive integral vector on the ray through `v`: clear denominators,
/// then divide by the gcd of the numerators. The zero vector maps to itself.
pub fn primitive_integral(v: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// `gcd` of a slice of machine integers (0 for the empty or zero slice).
pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)).abs()
}
