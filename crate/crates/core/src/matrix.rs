use core::fmt;

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Ring, Scalar};

/// Dense row-major matrix over one of the supported rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    /// Scalar multiple of the identity, `c * I_n`.
    pub fn scalar(ring: Ring, n: usize, c: &BigInt) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        let v = ring.from_int(c.clone());
        for i in 0..n {
            m.data[i * n + i] = v.clone();
        }
        m
    }

    /// Builds a matrix from arbitrary rationals, normalizing into `ring`.
    pub fn from_entries(
        ring: Ring,
        rows: usize,
        cols: usize,
        entries: Vec<BigRational>,
    ) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_entries",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        let data = entries
            .into_iter()
            .map(|v| ring.normalize(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    pub fn from_scalars(ring: Ring, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Matrix> {
        if let Some(bad) = entries.iter().find(|s| s.ring() != ring) {
            return Err(Error::RingMismatch {
                expected: ring,
                found: bad.ring(),
            });
        }
        Matrix::from_entries(ring, rows, cols, entries.into_iter().map(Scalar::into_value).collect())
    }

    /// Integer literal constructor; rows must all have the same length.
    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(ring, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix literal");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = ring.from_int(BigInt::from(v));
            }
        }
        m
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(ring.from_int(f(i, j)));
            }
        }
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub(crate) fn from_raw(ring: Ring, rows: usize, cols: usize, data: Vec<BigRational>) -> Matrix {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub(crate) fn from_int_rows(ring: Ring, rows: usize, cols: usize, grid: &[Vec<BigInt>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, cols);
        for (i, row) in grid.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.data[i * cols + j] = BigRational::from_integer(v.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn scalar_at(&self, i: usize, j: usize) -> Scalar {
        Scalar::new(self.ring, self.get(i, j).clone()).expect("entries are normalized")
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring,
                found: other.ring,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let ring = self.ring;
        let mut out = vec![BigRational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out[i * other.cols + j];
                    *slot += a * b;
                }
            }
        }
        if let Ring::PrimeField(_) = ring {
            for v in &mut out {
                *v = ring.normalize(core::mem::take(v)).expect("integral");
            }
        }
        Ok(Matrix::from_raw(ring, self.rows, other.cols, out))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "add", |r, a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, "sub", |r, a, b| r.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: &'static str,
        f: impl Fn(Ring, &BigRational, &BigRational) -> BigRational,
    ) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(self.ring, a, b))
            .collect();
        Ok(Matrix::from_raw(self.ring, self.rows, self.cols, data))
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| self.ring.neg(a)).collect();
        Matrix::from_raw(self.ring, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: &BigInt) -> Matrix {
        let c = self.ring.from_int(c.clone());
        let data = self.data.iter().map(|a| self.ring.mul(a, &c)).collect();
        Matrix::from_raw(self.ring, self.rows, self.cols, data)
    }

    pub fn pow(&self, exp: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "pow",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let mut acc = Matrix::identity(self.ring, self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Matrix::from_raw(self.ring, self.cols, self.rows, data)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        Ok(Matrix::from_raw(self.ring, self.rows, cols, data))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix::from_raw(self.ring, self.rows + other.rows, self.cols, data))
    }

    pub fn block_diag(ring: Ring, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut m = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Overwrites the block whose top-left corner is `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.data[i * block.cols + j].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.data[(r0 + i) * self.cols + c0 + j].clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.data[i * self.cols + j].clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<BigRational>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<BigRational>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    /// `self ⊗ I_k`: every entry becomes a `k × k` scalar block.
    pub fn kron_identity(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.ring, self.rows * k, self.cols * k);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                for l in 0..k {
                    m.set(i * k + l, j * k + l, v.clone());
                }
            }
        }
        m
    }

    /// Integer entries, row-major. Only meaningful when every entry is integral.
    pub(crate) fn to_int_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_integer()).collect())
            .collect()
    }

    pub(crate) fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub(crate) fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                self.ring.normalize(acc).expect("integral")
            })
            .collect()
    }

    /// Determinant by fraction-free elimination over `Q` (valid for every ring tag
    /// when read back through [`Ring::normalize`]).
    pub fn determinant(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "determinant",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let factor = &a[r][c] / &pivot;
                for k in c..n {
                    let delta = &factor * &a[c][k];
                    a[r][k] -= delta;
                }
            }
        }
        self.ring.normalize(det)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
