//! Validated pure and mixed states on `C^n ⊗ C^n`, the Schmidt decomposition,
//! canonical form, and seeded random ensembles.

use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, c0, ComplexMatrix, MAX_LOCAL_DIM};

/// Schmidt coefficients below this value are set to exactly zero.
pub const SCHMIDT_ZERO: f64 = 1e-12;

/// Validation thresholds for states read from outside the library.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Allowed `|‖ψ‖ - 1|` for kets.
    pub norm: f64,
    /// Allowed entrywise deviation from Hermiticity.
    pub hermitian: f64,
    /// Allowed `|tr ρ - 1|`.
    pub trace: f64,
    /// Most negative eigenvalue tolerated in a density matrix.
    pub psd: f64,
    /// PPT verdict threshold on the partial-transpose spectrum.
    pub ppt: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm: 1e-10,
            hermitian: 1e-10,
            trace: 1e-10,
            psd: 1e-9,
            ppt: 1e-9,
        }
    }
}

fn check_local_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LOCAL_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Normalized pure state on `C^n ⊗ C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl Ket {
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(n, amplitudes, Tolerances::default().norm)
    }

    pub fn with_tolerance(n: usize, amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        check_local_dim(n)?;
        if amplitudes.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: format!("{} amplitudes", n * n),
                actual: format!("{}", amplitudes.len()),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let nrm = norm(&amplitudes);
        if (nrm - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm: nrm });
        }
        // Accepted under a loose tolerance: rescale so downstream checks hold.
        if (nrm - 1.0).abs() > 1e-12 {
            return Ok(Self {
                n,
                amplitudes: amplitudes.into_iter().map(|z| z / nrm).collect(),
            });
        }
        Ok(Self { n, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let nrm = norm(&amplitudes);
        if nrm == 0.0 || !nrm.is_finite() {
            return Err(Error::NotNormalized { norm: nrm });
        }
        Self::new(n, amplitudes.into_iter().map(|z| z / nrm).collect())
    }

    /// `Σ coeffs[i] |i⟩|i⟩` in the natural basis.
    pub fn from_schmidt_coeffs(coeffs: &[f64]) -> Result<Self> {
        let n = coeffs.len();
        check_local_dim(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &a) in coeffs.iter().enumerate() {
            amps[c0(i + 1, i + 1, n)] = Complex64::new(a, 0.0);
        }
        Self::new(n, amps)
    }

    /// `(|11⟩ + |22⟩)/√2`.
    pub fn bell() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_schmidt_coeffs(&[h, h]).expect("Bell state is normalized")
    }

    /// `|i⟩ ⊗ |j⟩` (1-based).
    pub fn product(i: usize, j: usize, n: usize) -> Result<Self> {
        check_local_dim(n)?;
        let m = matrix::index_c(i, j, n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); n * n];
        amps[m - 1] = Complex64::new(1.0, 0.0);
        Self::new(n, amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of `|i⟩|j⟩` (1-based).
    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        self.amplitudes[c0(i, j, self.n)]
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            n: self.n,
            mat: ComplexMatrix::outer(&self.amplitudes),
        }
    }

    /// `(u_a ⊗ u_b) ψ`.
    pub fn apply_local(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Ket> {
        let w = matrix::tensor(u_a, u_b)?;
        let amps = w.apply(&self.amplitudes)?;
        Ket::normalized(self.n, amps)
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &Ket) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }
}

/// Validated density matrix on `C^n ⊗ C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    mat: ComplexMatrix,
}

/// Checks `m` against the density-matrix invariants, using `tol` for
/// Hermiticity, trace and positivity alike.
pub fn validate_density(m: &ComplexMatrix, n: usize, tol: f64) -> Result<DensityMatrix> {
    DensityMatrix::validate(
        m,
        n,
        &Tolerances {
            hermitian: tol,
            trace: tol,
            psd: tol,
            ..Tolerances::default()
        },
    )
}

impl DensityMatrix {
    /// Validates `m` and stores its Hermitian part.
    pub fn validate(m: &ComplexMatrix, n: usize, tol: &Tolerances) -> Result<Self> {
        check_local_dim(n)?;
        let dim = n * n;
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: format!("{dim}x{dim}"),
                actual: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        let deviation = m.hermitian_deviation();
        if deviation > tol.hermitian {
            return Err(Error::NotHermitian { deviation });
        }
        let mat = m.hermitian_part();
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne { trace });
        }
        let min_eigenvalue = matrix::min_eigenvalue(&mat)?;
        if min_eigenvalue < -tol.psd {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        Ok(Self { n, mat })
    }

    /// `I/n²`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        check_local_dim(n)?;
        let dim = n * n;
        Ok(Self {
            n,
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        })
    }

    /// `a·rho + (1-a)·other`; convex combinations need no revalidation.
    pub fn mix(a: f64, rho: &DensityMatrix, other: &DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidWeight(a));
        }
        if rho.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: format!("n = {}", rho.n),
                actual: format!("n = {}", other.n),
            });
        }
        Ok(Self {
            n: rho.n,
            mat: rho.mat.affine(a, &other.mat, 1.0 - a)?,
        })
    }

    /// `(u_a ⊗ u_b) ρ (u_a ⊗ u_b)†`.
    pub fn conjugate_local(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Self> {
        let w = matrix::tensor(u_a, u_b)?;
        let mat = w.matmul(&self.mat)?.matmul(&w.adjoint())?;
        Ok(Self {
            n: self.n,
            mat: mat.hermitian_part(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.mat.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Dominant eigenvector when `ρ` is rank one to within `tol` in purity.
    pub fn pure_ket(&self, tol: f64) -> Result<Option<Ket>> {
        if (self.purity() - 1.0).abs() > tol {
            return Ok(None);
        }
        let eig = matrix::hermitian_eigen(&self.mat)?;
        let top = eig.vector(eig.len() - 1);
        Ket::normalized(self.n, top).map(Some)
    }

    /// Builds a density matrix from parts the caller already knows are valid.
    pub(crate) fn from_trusted(n: usize, mat: ComplexMatrix) -> Self {
        debug_assert_eq!(mat.rows(), n * n);
        Self { n, mat }
    }
}

/// Schmidt form `ψ = Σ ã_i (basis_a col i) ⊗ (basis_b col i)`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    coeffs: Vec<f64>,
    basis_a: ComplexMatrix,
    basis_b: ComplexMatrix,
    rank: usize,
}

impl SchmidtDecomposition {
    /// Decomposition of `Σ ã_i |i⟩|i⟩` with natural-basis frames.
    pub fn canonical(coeffs: &[f64]) -> Result<Self> {
        let n = coeffs.len();
        check_local_dim(n)?;
        if coeffs.iter().any(|&c| c < 0.0 || !c.is_finite()) {
            return Err(Error::NegativeCoefficient);
        }
        if coeffs.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotCanonical);
        }
        let sum_sq: f64 = coeffs.iter().map(|c| c * c).sum();
        if (sum_sq - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm: sum_sq.sqrt() });
        }
        let coeffs: Vec<f64> = coeffs
            .iter()
            .map(|&c| if c < SCHMIDT_ZERO { 0.0 } else { c })
            .collect();
        let rank = coeffs.iter().filter(|&&c| c > 0.0).count();
        Ok(Self {
            coeffs,
            basis_a: ComplexMatrix::identity(n),
            basis_b: ComplexMatrix::identity(n),
            rank,
        })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// Nonnegative coefficients in descending order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn basis_a(&self) -> &ComplexMatrix {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &ComplexMatrix {
        &self.basis_b
    }

    /// Number of nonzero coefficients.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_product(&self) -> bool {
        self.rank <= 1
    }

    pub fn reconstruct(&self) -> Result<Ket> {
        let n = self.n();
        let mut amps = vec![Complex64::new(0.0, 0.0); n * n];
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let term = matrix::tensor_vec(&self.basis_a.column_vec(k), &self.basis_b.column_vec(k));
            for (x, t) in amps.iter_mut().zip(term) {
                *x += t * a;
            }
        }
        Ket::normalized(n, amps)
    }

    /// `Σ ã_i |i⟩|i⟩` with the same coefficients.
    pub fn canonical_ket(&self) -> Ket {
        Ket::from_schmidt_coeffs(&self.coeffs).expect("Schmidt coefficients are normalized")
    }

    /// True when the decomposed state already equals its canonical form.
    pub fn is_canonical(&self) -> bool {
        match self.reconstruct() {
            Ok(psi) => psi
                .amplitudes()
                .iter()
                .zip(self.canonical_ket().amplitudes())
                .all(|(a, b)| (a - b).norm() <= 1e-9),
            Err(_) => false,
        }
    }
}

/// Schmidt decomposition via the SVD of the coefficient matrix
/// `C[i][j] = ψ_{c(i,j)}`.
pub fn schmidt(psi: &Ket) -> Result<SchmidtDecomposition> {
    let n = psi.n();
    let c = DMatrix::from_row_slice(n, n, psi.amplitudes());
    let svd = SVD::try_new(c, true, true, f64::EPSILON, 0).ok_or(Error::NoConvergence)?;
    let u = svd.u.ok_or(Error::NoConvergence)?;
    let v_t = svd.v_t.ok_or(Error::NoConvergence)?;
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();

    // ψ = Σ_k σ_k (U col k) ⊗ (V† row k)
    let column_a = |k: usize| -> Vec<Complex64> { (0..n).map(|i| u[(i, k)]).collect() };
    let column_b = |k: usize| -> Vec<Complex64> { (0..n).map(|j| v_t[(k, j)]).collect() };

    let order = schmidt_order(&sigma, column_a);

    let mut basis_a = ComplexMatrix::zeros(n, n);
    let mut basis_b = ComplexMatrix::zeros(n, n);
    let mut coeffs = Vec::with_capacity(n);
    for (col, &k) in order.iter().enumerate() {
        for (row, z) in column_a(k).into_iter().enumerate() {
            basis_a[(row, col)] = z;
        }
        for (row, z) in column_b(k).into_iter().enumerate() {
            basis_b[(row, col)] = z;
        }
        let s = sigma[k];
        coeffs.push(if s < SCHMIDT_ZERO { 0.0 } else { s });
    }
    let rank = coeffs.iter().filter(|&&c| c > 0.0).count();
    Ok(SchmidtDecomposition {
        coeffs,
        basis_a,
        basis_b,
        rank,
    })
}

/// Descending order of singular values; runs of equal values (within
/// `SCHMIDT_ZERO`) are ordered lexicographically by their left vectors.
fn schmidt_order(sigma: &[f64], column_a: impl Fn(usize) -> Vec<Complex64>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));

    let lex = |a: &usize, b: &usize| {
        let (ca, cb) = (column_a(*a), column_a(*b));
        ca.iter()
            .zip(&cb)
            .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    };

    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && sigma[order[end - 1]] - sigma[order[end]] <= SCHMIDT_ZERO {
            end += 1;
        }
        order[start..end].sort_by(lex);
        start = end;
    }
    order
}

/// Natural-basis canonical form `Σ ã_i |i⟩|i⟩` of `psi`.
pub fn canonicalize(psi: &Ket) -> Result<Ket> {
    Ok(schmidt(psi)?.canonical_ket())
}

/// ChaCha stream for `seed`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent ChaCha stream `stream` derived from `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_pure<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Ket> {
    check_local_dim(n)?;
    let amps = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    Ket::normalized(n, amps)
}

/// Hilbert-Schmidt random density matrix `G G† / tr(G G†)`, `G` square Ginibre.
pub fn random_density<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DensityMatrix> {
    random_density_rank(n, n * n, rng)
}

/// Induced-measure random density matrix from an `n² × k` Ginibre matrix;
/// rank at most `k`, and `k = 1` gives Haar-random pure states.
pub fn random_density_rank<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_local_dim(n)?;
    let dim = n * n;
    if k == 0 || k > dim {
        return Err(Error::DimensionMismatch {
            expected: format!("rank in 1..={dim}"),
            actual: format!("{k}"),
        });
    }
    let g = ComplexMatrix::new(dim, k, (0..dim * k).map(|_| complex_gaussian(rng)).collect())?;
    let ggd = g.matmul(&g.adjoint())?;
    let tr = ggd.trace().re;
    Ok(DensityMatrix::from_trusted(n, ggd.scale(1.0 / tr).hermitian_part()))
}

/// Haar-random unitary on `C^n` (QR of a Ginibre matrix with phase fix).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    check_local_dim(n)?;
    let g = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = ComplexMatrix::from_nalgebra(&q);
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    Ok(u)
}

pub fn random_pure_seeded(n: usize, seed: u64) -> Result<Ket> {
    random_pure(n, &mut seeded_rng(seed))
}

pub fn random_density_seeded(n: usize, seed: u64) -> Result<DensityMatrix> {
    random_density(n, &mut seeded_rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn validate_examples() {
        let mixed = ComplexMatrix::identity(4).scale(0.25);
        assert!(validate_density(&mixed, 2, 1e-10).is_ok());

        let bad = ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.1]);
        assert!(matches!(
            validate_density(&bad, 2, 1e-10),
            Err(Error::TraceNotOne { .. })
        ));

        let bell = Ket::bell().density();
        let v = validate_density(bell.matrix(), 2, 1e-10).unwrap();
        assert!(close(v.purity(), 1.0, 1e-12));
    }

    #[test]
    fn validate_rejects_negative_and_non_hermitian() {
        let neg = ComplexMatrix::from_diagonal(&[1.2, -0.2, 0.0, 0.0]);
        assert!(matches!(
            validate_density(&neg, 2, 1e-9),
            Err(Error::NotPsd { .. })
        ));
        let mut nh = ComplexMatrix::identity(4).scale(0.25);
        nh[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(
            validate_density(&nh, 2, 1e-10),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            validate_density(&ComplexMatrix::identity(3), 2, 1e-10),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn schmidt_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let sd = schmidt(&Ket::bell()).unwrap();
        assert!(close(sd.coeffs()[0], h, 1e-14) && close(sd.coeffs()[1], h, 1e-14));
        assert_eq!(sd.rank(), 2);

        let sd = schmidt(&Ket::product(1, 1, 2).unwrap()).unwrap();
        assert_eq!(sd.coeffs(), &[1.0, 0.0]);
        assert_eq!(sd.rank(), 1);

        let psi = Ket::from_schmidt_coeffs(&[0.8f64.sqrt(), 0.2f64.sqrt()]).unwrap();
        let sd = schmidt(&psi).unwrap();
        assert!(close(sd.coeffs()[0], 0.8f64.sqrt(), 1e-14));
        assert!(close(sd.coeffs()[1], 0.2f64.sqrt(), 1e-14));
    }

    #[test]
    fn canonicalize_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = Ket::bell();
        let c = canonicalize(&bell).unwrap();
        assert!(c.amplitudes().iter().zip(bell.amplitudes()).all(|(a, b)| (a - b).norm() < 1e-14));

        let mut rng = seeded_rng(7);
        let u1 = random_unitary(2, &mut rng).unwrap();
        let u2 = random_unitary(2, &mut rng).unwrap();
        let rotated = bell.apply_local(&u1, &u2).unwrap();
        let c = canonicalize(&rotated).unwrap();
        let expected = [h, 0.0, 0.0, h];
        for (a, e) in c.amplitudes().iter().zip(expected) {
            assert!((a - Complex64::new(e, 0.0)).norm() < 1e-12);
        }

        let prod = Ket::product(2, 1, 3).unwrap().apply_local(
            &random_unitary(3, &mut rng).unwrap(),
            &random_unitary(3, &mut rng).unwrap(),
        );
        let c = canonicalize(&prod.unwrap()).unwrap();
        assert!((c.amplitude(1, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(c.amplitudes().iter().skip(1).all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn schmidt_reconstructs_random_states() {
        let mut rng = seeded_rng(11);
        for n in 2..=4 {
            for _ in 0..20 {
                let psi = random_pure(n, &mut rng).unwrap();
                let sd = schmidt(&psi).unwrap();
                let back = sd.reconstruct().unwrap();
                assert!(back.overlap(&psi) > 1.0 - 1e-12);
                assert!(sd.coeffs().windows(2).all(|w| w[0] >= w[1]));
                let s: f64 = sd.coeffs().iter().map(|c| c * c).sum();
                assert!(close(s, 1.0, 1e-10));
            }
        }
    }

    #[test]
    fn canonical_constructor_checks() {
        assert!(SchmidtDecomposition::canonical(&[0.6, 0.8]).is_err());
        assert!(SchmidtDecomposition::canonical(&[0.8, -0.6]).is_err());
        assert!(SchmidtDecomposition::canonical(&[0.8, 0.5]).is_err());
        let sd = SchmidtDecomposition::canonical(&[0.8, 0.6]).unwrap();
        assert!(sd.is_canonical());
        let rotated = Ket::from_schmidt_coeffs(&[0.8, 0.6])
            .unwrap()
            .apply_local(
                &random_unitary(2, &mut seeded_rng(3)).unwrap(),
                &ComplexMatrix::identity(2),
            )
            .unwrap();
        assert!(!schmidt(&rotated).unwrap().is_canonical());
    }

    #[test]
    fn random_generators_are_deterministic_and_valid() {
        let a = random_density_seeded(2, 42).unwrap();
        let b = random_density_seeded(2, 42).unwrap();
        assert_eq!(a, b);
        assert!(DensityMatrix::validate(a.matrix(), 2, &Tolerances::default()).is_ok());
        assert_eq!(random_pure_seeded(3, 5).unwrap(), random_pure_seeded(3, 5).unwrap());
        assert_ne!(stream_rng(1, 0).random::<u64>(), stream_rng(1, 1).random::<u64>());
    }

    #[test]
    fn random_unitary_is_unitary() {
        let u = random_unitary(4, &mut seeded_rng(9)).unwrap();
        let prod = u.adjoint().matmul(&u).unwrap();
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn pure_ket_recovers_state() {
        let psi = random_pure_seeded(2, 8).unwrap();
        let back = psi.density().pure_ket(1e-9).unwrap().unwrap();
        assert!(back.overlap(&psi) > 1.0 - 1e-12);
        assert!(DensityMatrix::maximally_mixed(2).unwrap().pure_ket(1e-9).unwrap().is_none());
    }
}
