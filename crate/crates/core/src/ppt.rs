//! Partial transpose on the second factor, the PPT test, and the closed-form
//! negative spectrum of a pure state's partial transpose.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, c0, ComplexMatrix, EigenSystem};
use crate::states::{DensityMatrix, SchmidtDecomposition};

/// Eigenvalues below `-NEG_TOL` count as negative.
pub const NEG_TOL: f64 = 1e-9;

/// Pairs with `ã_r ã_s` at or below this value carry no witness.
pub const PAIR_TOL: f64 = 1e-9;

/// Transposes the second tensor factor of an `n² × n²` operator:
/// `|r⟩⟨t| ⊗ |s⟩⟨u|  ↦  |r⟩⟨t| ⊗ |u⟩⟨s|`.
pub fn partial_transpose(m: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let dim = n * n;
    if n == 0 || m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: format!("{dim}x{dim}"),
            actual: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let mut out = ComplexMatrix::zeros(dim, dim);
    for r in 1..=n {
        for s in 1..=n {
            for t in 1..=n {
                for u in 1..=n {
                    out[(c0(r, u, n), c0(t, s, n))] = m[(c0(r, s, n), c0(t, u, n))];
                }
            }
        }
    }
    Ok(out)
}

/// Smallest eigenvalue of `ρ^pt` for an `n² × n²` Hermitian operator.
pub fn pt_min_eigenvalue(m: &ComplexMatrix, n: usize) -> Result<f64> {
    matrix::min_eigenvalue(&partial_transpose(m, n)?)
}

/// True iff `ρ^pt` has no eigenvalue below `-tol`.
pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    Ok(pt_min_eigenvalue(rho.matrix(), rho.n())? >= -tol)
}

/// Sum of the moduli of the negative eigenvalues of `ρ^pt`.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho.matrix(), rho.n())?;
    let eig = matrix::hermitian_eigen(&pt)?;
    Ok(eig.values.iter().map(|&l| (-l).max(0.0)).sum())
}

/// `(|r⟩|s⟩ - |s⟩|r⟩)/√2` for `r < s` (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymVector {
    pub r: usize,
    pub s: usize,
    pub n: usize,
    pub vec: Vec<Complex64>,
}

impl AntisymVector {
    pub fn new(r: usize, s: usize, n: usize) -> Result<Self> {
        matrix::index_f(r, s, n)?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut vec = vec![Complex64::new(0.0, 0.0); n * n];
        vec[c0(r, s, n)] = Complex64::new(h, 0.0);
        vec[c0(s, r, n)] = Complex64::new(-h, 0.0);
        Ok(Self { r, s, n, vec })
    }

    /// Position of this vector in the pair enumeration.
    pub fn f_index(&self) -> usize {
        matrix::index_f(self.r, self.s, self.n).expect("validated at construction")
    }
}

/// A negative eigenvalue of a partial transpose, labelled with its
/// antisymmetric pair when the input is a canonical pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeEigen {
    pub value: f64,
    pub pair: Option<(usize, usize)>,
}

/// Full partial-transpose spectrum with the negative part isolated.
#[derive(Debug, Clone)]
pub struct PtSpectrum {
    pub full: EigenSystem,
    pub negatives: Vec<NegativeEigen>,
}

impl PtSpectrum {
    /// Spectrum of `ρ^pt`, negatives unlabelled.
    pub fn of(rho: &DensityMatrix, tol: f64) -> Result<Self> {
        let full = matrix::hermitian_eigen(&partial_transpose(rho.matrix(), rho.n())?)?;
        let negatives = full
            .values
            .iter()
            .take_while(|&&v| v < -tol)
            .map(|&value| NegativeEigen { value, pair: None })
            .collect();
        Ok(Self { full, negatives })
    }

    /// Spectrum of `ψ̃ψ̃†^pt` for the canonical state of `sd`. Negative
    /// eigenvalues are labelled by the pair `(r, s)` whose `-ã_r ã_s` they
    /// match, assigned in sorted order.
    pub fn of_canonical(sd: &SchmidtDecomposition) -> Result<Self> {
        let rho = sd.canonical_ket().density();
        let mut spectrum = Self::of(&rho, NEG_TOL)?;
        let mut predicted: Vec<(f64, (usize, usize))> = pure_pt_eigenpairs(
            &SchmidtDecomposition::canonical(sd.coeffs())?,
        )?
        .into_iter()
        .map(|(v, e)| (v, (e.r, e.s)))
        .collect();
        predicted.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (neg, (_, pair)) in spectrum.negatives.iter_mut().zip(predicted) {
            neg.pair = Some(pair);
        }
        Ok(spectrum)
    }

    pub fn negative_values(&self) -> Vec<f64> {
        self.negatives.iter().map(|e| e.value).collect()
    }
}

/// Negative eigenpairs of `ρ̃^pt` for the canonical state `ψ̃ = Σ ã_i |i⟩|i⟩`:
/// `(-ã_r ã_s, (|rs⟩ - |sr⟩)/√2)` for every `r < s` with `ã_r ã_s > PAIR_TOL`,
/// ordered by pair index.
pub fn pure_pt_eigenpairs(sd: &SchmidtDecomposition) -> Result<Vec<(f64, AntisymVector)>> {
    if !sd.is_canonical() {
        return Err(Error::NotCanonical);
    }
    let n = sd.n();
    let a = sd.coeffs();
    matrix::ordered_pairs(n)
        .filter(|&(r, s)| a[r - 1] * a[s - 1] > PAIR_TOL)
        .map(|(r, s)| Ok((-a[r - 1] * a[s - 1], AntisymVector::new(r, s, n)?)))
        .collect()
}
