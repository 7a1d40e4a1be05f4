//! Dense complex matrices, Kronecker products, the Hermitian eigensolver
//! wrapper, and the two bipartite index maps.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported local dimension `n`; the composite dimension is `n²`.
pub const MAX_LOCAL_DIM: usize = 8;

/// Largest number of entries a matrix produced by [`tensor`] may hold.
pub const MAX_ENTRIES: usize = 4096;

/// Default absolute tolerance for the Hermiticity check before an eigensolve.
pub const HERMIT_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Dense complex matrix in row-major storage.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN/Inf.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{rows}x{cols} (non-empty)"),
                actual: format!("{} entries", data.len()),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: format!("rows of length {c}"),
                actual: "ragged rows".into(),
            });
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(r, c, data)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Column vector holding `v`.
    pub fn column(v: &[Complex64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// The rank-one operator `v v†`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut data = Vec::with_capacity(n * n);
        for a in v {
            for b in v {
                data.push(a * b.conj());
            }
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_vec(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `wa·self + wb·other`, computed entrywise.
    pub fn affine(&self, wa: f64, other: &Self, wb: f64) -> Result<Self> {
        self.zip_with(other, |a, b| a * wa + b * wb)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                actual: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                actual: format!("{} rows", other.rows),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                actual: format!("length {}", v.len()),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `⟨v| self |v⟩`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> Result<Complex64> {
        let mv = self.apply(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest modulus of `self - self†`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    /// Largest off-diagonal modulus.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    m = m.max(self[(i, j)].norm());
                }
            }
        }
        m
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        let (rows, cols) = m.shape();
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = m[(i, j)];
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let entries = rows.saturating_mul(cols);
    if entries > MAX_ENTRIES {
        return Err(Error::DimensionOverflow {
            entries,
            max: MAX_ENTRIES,
        });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ai in 0..a.rows {
        for aj in 0..a.cols {
            let s = a[(ai, aj)];
            for bi in 0..b.rows {
                for bj in 0..b.cols {
                    out[(ai * b.rows + bi, aj * b.cols + bj)] = s * b[(bi, bj)];
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of two vectors.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Natural basis vector `|i⟩` of `C^n` (1-based).
pub fn basis_ket(i: usize, n: usize) -> Result<Vec<Complex64>> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { i, j: i, n });
    }
    let mut v = vec![ZERO; n];
    v[i - 1] = ONE;
    Ok(v)
}

/// Position of `|i⟩ ⊗ |j⟩` in the product basis: `n(i-1) + j` (1-based).
pub fn index_c(i: usize, j: usize, n: usize) -> Result<usize> {
    if n == 0 || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    Ok(n * (i - 1) + j)
}

/// Inverse of [`index_c`].
pub fn index_c_inverse(m: usize, n: usize) -> Result<(usize, usize)> {
    if n == 0 || m == 0 || m > n * n {
        return Err(Error::IndexOutOfRange { i: m, j: 0, n });
    }
    Ok(((m - 1) / n + 1, (m - 1) % n + 1))
}

/// Enumeration of pairs `i < j`: `(j-i) + n(i-1) - i(i-1)/2` (1-based).
pub fn index_f(i: usize, j: usize, n: usize) -> Result<usize> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    if i >= j {
        return Err(Error::InvalidPair { i, j });
    }
    Ok((j - i) + n * (i - 1) - i * (i - 1) / 2)
}

/// All pairs `(i, j)` with `i < j`, listed in [`index_f`] order.
pub fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// 0-based storage offset for 1-based `(i, j)`; callers guarantee range.
#[inline]
pub(crate) fn c0(i: usize, j: usize, n: usize) -> usize {
    n * (i - 1) + (j - 1)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    /// Column `i` is the unit eigenvector paired with `values[i]`.
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column_vec(i)
    }

    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ λ_i v_i v_i†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = self.vectors.rows();
        let mut out = ComplexMatrix::zeros(dim, dim);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            for i in 0..dim {
                for j in 0..dim {
                    out[(i, j)] += v[i] * v[j].conj() * lambda;
                }
            }
        }
        out
    }
}

/// Eigensystem of a Hermitian matrix using the default tolerance.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<EigenSystem> {
    hermitian_eigen_tol(m, HERMIT_TOL)
}

/// Eigensystem of `m` after symmetrizing it; fails if `m` deviates from
/// Hermitian by more than `hermit_tol`.
pub fn hermitian_eigen_tol(m: &ComplexMatrix, hermit_tol: f64) -> Result<EigenSystem> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            actual: format!("{}x{}", m.rows, m.cols),
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > hermit_tol {
        return Err(Error::NotHermitian { deviation });
    }
    let dim = m.rows;
    let sym = m.hermitian_part().to_nalgebra();
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 1000 * dim.max(1))
        .ok_or(Error::NoConvergence)?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::zeros(dim, dim);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..dim {
            vectors[(row, col)] = eig.eigenvectors[(row, k)];
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            actual: format!("{}x{}", m.rows, m.cols),
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMIT_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let dim = m.rows;
    let eig = SymmetricEigen::try_new(
        m.hermitian_part().to_nalgebra(),
        f64::EPSILON,
        1000 * dim.max(1),
    )
    .ok_or(Error::NoConvergence)?;
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}

/// True iff the smallest eigenvalue of `m` is at least `-tol`.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -tol)
}
