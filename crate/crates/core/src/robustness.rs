//! Robustness of pure states and the witness machinery behind it.
//!
//! For `ψ̃ = Σ ã_i |i⟩|i⟩` the antisymmetric vectors `ẽ_{f(j,k)}` are
//! eigenvectors of `ρ̃^pt` with eigenvalues `-ã_j ã_k`. Any mixer `ρ_M`
//! for which `a·ρ̃ + (1-a)·ρ_M` is PPT must keep every witness value
//! `⟨ẽ|(a ρ̃ + (1-a) ρ_M)^pt|ẽ⟩` nonnegative, which bounds `a` by
//! `q/(q + ã_j ã_k)` with `q = ⟨ẽ|ρ_M^pt|ẽ⟩`. The quantities in this module
//! evaluate those bounds for concrete mixers and construct mixers that
//! attain the optimum `1/(1 + R_s)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{self, c0, ComplexMatrix};
use crate::ppt::{self, AntisymVector, NEG_TOL, PAIR_TOL};
use crate::search::{self, SearchConfig};
use crate::states::{self, DensityMatrix, Ket, SchmidtDecomposition, Tolerances};

/// Largest tolerated gap between the direct and spectral witness values
/// before [`quadratic_form_pt`] reports an implementation fault.
pub const CROSS_CHECK_TOL: f64 = 1e-8;

/// Slack allowed for `T ≤ 1/R_s`.
pub const T_BOUND_SLACK: f64 = 1e-9;

/// Estimator slack for the convexity check.
pub const CONVEXITY_SLACK: f64 = 0.02;

/// Robustness quantities of a pure state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustnessReport {
    pub r_s: f64,
    pub r_g: f64,
    pub o_s: f64,
    pub o_g: f64,
    pub schmidt_coeffs: Vec<f64>,
}

/// `R_s = R_g = (Σ ã_i)² - 1` and `O_s = O_g = 1/(1 + R_s)`.
pub fn robustness_pure(coeffs: &[f64]) -> Result<RobustnessReport> {
    if coeffs.iter().any(|&c| c < 0.0 || !c.is_finite()) {
        return Err(Error::NegativeCoefficient);
    }
    let sum_sq: f64 = coeffs.iter().map(|c| c * c).sum();
    if (sum_sq - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: sum_sq.sqrt() });
    }
    let sum: f64 = coeffs.iter().sum();
    let r = (sum * sum - 1.0).max(0.0);
    let o = 1.0 / (1.0 + r);
    Ok(RobustnessReport {
        r_s: r,
        r_g: r,
        o_s: o,
        o_g: o,
        schmidt_coeffs: coeffs.to_vec(),
    })
}

/// Robustness of an arbitrary pure state through its Schmidt coefficients.
pub fn robustness_of_ket(psi: &Ket) -> Result<RobustnessReport> {
    robustness_pure(states::schmidt(psi)?.coeffs())
}

/// `g_{f(j,k)} = |e_{c(j,k)}|² + |e_{c(k,j)}|² - 2 Re(e_{c(j,j)} e*_{c(k,k)})`
/// for one unit vector `e`, indexed by `f(j,k) - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GCoefficients {
    pub n: usize,
    pub values: Vec<f64>,
    /// `Σ_j e_{c(j,j)}`.
    pub diag_sum: Complex64,
}

impl GCoefficients {
    /// Value for the pair `j < k` (1-based).
    pub fn get(&self, j: usize, k: usize) -> Result<f64> {
        Ok(self.values[matrix::index_f(j, k, self.n)? - 1])
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `1 - |Σ_j e_{c(j,j)}|²`, which the sum of the coefficients equals.
    pub fn closed_form_sum(&self) -> f64 {
        1.0 - self.diag_sum.norm_sqr()
    }
}

pub fn g_coefficients(e: &[Complex64], n: usize) -> Result<GCoefficients> {
    if e.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: format!("vector of length {}", n * n),
            actual: format!("{}", e.len()),
        });
    }
    let nrm = e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (nrm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm: nrm });
    }
    let values = matrix::ordered_pairs(n)
        .map(|(j, k)| {
            e[c0(j, k, n)].norm_sqr() + e[c0(k, j, n)].norm_sqr()
                - 2.0 * (e[c0(j, j, n)] * e[c0(k, k, n)].conj()).re
        })
        .collect();
    let diag_sum = (1..=n).map(|j| e[c0(j, j, n)]).sum();
    Ok(GCoefficients {
        n,
        values,
        diag_sum,
    })
}

/// Witness values `⟨ẽ_{f(j,k)}|ρ_M^pt|ẽ_{f(j,k)}⟩` for every pair, computed
/// directly on the partial transpose and through the spectral sum
/// `½ Σ_i λ_i g^(i)_{f(j,k)}`.
#[derive(Debug, Clone)]
pub struct WitnessForms {
    pub n: usize,
    pub direct: Vec<f64>,
    pub spectral: Vec<f64>,
    /// Eigenvalues of `ρ_M` and the g-coefficients of each eigenvector.
    pub eigen: Vec<(f64, GCoefficients)>,
}

impl WitnessForms {
    pub fn new(rho_m: &DensityMatrix) -> Result<Self> {
        let n = rho_m.n();
        let pt = ppt::partial_transpose(rho_m.matrix(), n)?;
        let direct = matrix::ordered_pairs(n)
            .map(|(j, k)| {
                let e = AntisymVector::new(j, k, n)?;
                Ok(pt.quadratic_form(&e.vec)?.re)
            })
            .collect::<Result<Vec<f64>>>()?;

        let eig = matrix::hermitian_eigen(rho_m.matrix())?;
        let eigen = eig
            .values
            .iter()
            .enumerate()
            .map(|(i, &lambda)| Ok((lambda, g_coefficients(&eig.vector(i), n)?)))
            .collect::<Result<Vec<_>>>()?;
        let pairs = direct.len();
        let spectral = (0..pairs)
            .map(|f| 0.5 * eigen.iter().map(|(l, g)| l * g.values[f]).sum::<f64>())
            .collect();

        let forms = Self {
            n,
            direct,
            spectral,
            eigen,
        };
        if let Some((d, s)) = forms
            .direct
            .iter()
            .zip(&forms.spectral)
            .find(|(d, s)| (*d - *s).abs() > CROSS_CHECK_TOL)
        {
            return Err(Error::CrossCheck {
                direct: *d,
                spectral: *s,
            });
        }
        Ok(forms)
    }

    /// Direct value for the pair `j < k`.
    pub fn get(&self, j: usize, k: usize) -> Result<f64> {
        Ok(self.direct[matrix::index_f(j, k, self.n)? - 1])
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.direct
            .iter()
            .zip(&self.spectral)
            .map(|(d, s)| (d - s).abs())
            .fold(0.0, f64::max)
    }
}

/// `⟨ẽ_{f(j,k)}|ρ_M^pt|ẽ_{f(j,k)}⟩`, cross-checked against its spectral form.
pub fn quadratic_form_pt(rho_m: &DensityMatrix, j: usize, k: usize) -> Result<f64> {
    WitnessForms::new(rho_m)?.get(j, k)
}

/// Pairs `j < k` whose witness is not vacuous, with `ã_j ã_k`.
fn active_pairs(coeffs: &[f64]) -> Vec<(usize, usize, f64)> {
    matrix::ordered_pairs(coeffs.len())
        .map(|(j, k)| (j, k, coeffs[j - 1] * coeffs[k - 1]))
        .filter(|&(_, _, p)| p > PAIR_TOL)
        .collect()
}

fn check_same_n(sd: &SchmidtDecomposition, rho_m: &DensityMatrix) -> Result<()> {
    if sd.n() != rho_m.n() {
        return Err(Error::DimensionMismatch {
            expected: format!("n = {}", sd.n()),
            actual: format!("n = {}", rho_m.n()),
        });
    }
    Ok(())
}

/// Largest mixing weight `a` not excluded by the antisymmetric witnesses of
/// the canonical state of `sd`. `rho_m` is read in the natural basis.
pub fn witness_bound_a(sd: &SchmidtDecomposition, rho_m: &DensityMatrix) -> Result<f64> {
    check_same_n(sd, rho_m)?;
    let pairs = active_pairs(sd.coeffs());
    if pairs.is_empty() {
        return Ok(1.0);
    }
    let forms = WitnessForms::new(rho_m)?;
    pairs
        .iter()
        .map(|&(j, k, p)| {
            let q = forms.get(j, k)?;
            Ok(if q > 0.0 { q / (q + p) } else { 0.0 })
        })
        .try_fold(1.0f64, |acc, b: Result<f64>| Ok(acc.min(b?)))
}

/// `min_{j<k} h_{j,k}` with `h_{j,k} = ⟨ẽ|ρ_M^pt|ẽ⟩ / (ã_j ã_k)`, equivalently
/// `α_{j,k} / (2 ã_j ã_k)`.
pub fn evaluate_t_candidate(sd: &SchmidtDecomposition, rho_m: &DensityMatrix) -> Result<f64> {
    check_same_n(sd, rho_m)?;
    let pairs = active_pairs(sd.coeffs());
    if pairs.is_empty() {
        return Err(Error::SchmidtRankTooLow(sd.rank()));
    }
    let forms = WitnessForms::new(rho_m)?;
    pairs
        .iter()
        .map(|&(j, k, p)| {
            let alpha = 2.0 * forms.get(j, k)?;
            Ok(alpha / (2.0 * p))
        })
        .try_fold(f64::INFINITY, |acc, h: Result<f64>| Ok(acc.min(h?)))
}

/// Rows indexed by active pairs, columns by eigenvectors of `ρ_M`:
/// `A[f][i] = λ_i g^(i)_f / (2 ã_j ã_k)`. Row sums are the `h_{j,k}`.
pub fn witness_matrix(sd: &SchmidtDecomposition, rho_m: &DensityMatrix) -> Result<Vec<Vec<f64>>> {
    check_same_n(sd, rho_m)?;
    let forms = WitnessForms::new(rho_m)?;
    let n = sd.n();
    active_pairs(sd.coeffs())
        .into_iter()
        .map(|(j, k, p)| {
            let f = matrix::index_f(j, k, n)? - 1;
            Ok(forms
                .eigen
                .iter()
                .map(|(l, g)| l * g.values[f] / (2.0 * p))
                .collect())
        })
        .collect()
}

/// `T ≤ 1/R_s` for this mixer.
pub fn t_bound_check(sd: &SchmidtDecomposition, rho_m: &DensityMatrix) -> Result<bool> {
    let t = evaluate_t_candidate(sd, rho_m)?;
    let r_s = robustness_pure(sd.coeffs())?.r_s;
    Ok(t <= 1.0 / r_s + T_BOUND_SLACK)
}

/// A mixer evaluated against the canonical state of a Schmidt decomposition.
#[derive(Debug, Clone)]
pub struct MixerReport {
    /// Schmidt coefficients of the target state.
    pub coeffs: Vec<f64>,
    /// The canonical target `ρ̃`.
    pub state: DensityMatrix,
    pub mixer: DensityMatrix,
    pub bound_a: f64,
    /// `bound_a·ρ̃ + (1 - bound_a)·mixer`.
    pub mixture: DensityMatrix,
    pub mixer_is_ppt: bool,
    pub mixture_is_ppt: bool,
}

impl MixerReport {
    pub fn evaluate(sd: &SchmidtDecomposition, mixer: DensityMatrix) -> Result<Self> {
        let state = sd.canonical_ket().density();
        let bound_a = witness_bound_a(sd, &mixer)?;
        let mixture = DensityMatrix::mix(bound_a, &state, &mixer)?;
        Ok(Self {
            coeffs: sd.coeffs().to_vec(),
            mixer_is_ppt: ppt::is_ppt(&mixer, NEG_TOL)?,
            mixture_is_ppt: ppt::is_ppt(&mixture, NEG_TOL)?,
            state,
            mixer,
            bound_a,
            mixture,
        })
    }

    fn decomposition(&self) -> Result<SchmidtDecomposition> {
        SchmidtDecomposition::canonical(&self.coeffs)
    }
}

/// Diagonally dominant optimal mixer for an entangled canonical state.
///
/// With `a = O_g(ρ̃)` and `G = -a ρ̃/(1-a)`, the mixer keeps the off-diagonal
/// part of `G` and sets each diagonal entry to minus its off-diagonal row sum.
/// The result is PSD with unit trace, and `a ρ̃ + (1-a) G⁽²⁾` is diagonal.
pub fn gershgorin_mixer(sd: &SchmidtDecomposition) -> Result<MixerReport> {
    if sd.is_product() {
        return Err(Error::ProductState);
    }
    let n = sd.n();
    let dim = n * n;
    let a = robustness_pure(sd.coeffs())?.o_g;
    let rho = sd.canonical_ket().density();

    let g = rho.matrix().scale(-a / (1.0 - a));
    let mut g2 = g.clone();
    for i in 0..dim {
        g2[(i, i)] = Complex64::new(0.0, 0.0);
    }
    for i in 0..dim {
        let off: Complex64 = (0..dim).filter(|&k| k != i).map(|k| g[(i, k)]).sum();
        g2[(i, i)] = -off;
    }

    let mixer = DensityMatrix::validate(
        &g2,
        n,
        &Tolerances {
            hermitian: 1e-12,
            trace: 1e-10,
            psd: 1e-10,
            ..Tolerances::default()
        },
    )
    .map_err(|e| Error::ConstructionFailed(format!("mixer is not a density matrix: {e}")))?;

    let report = MixerReport::evaluate(sd, mixer)?;
    if (report.bound_a - a).abs() > 1e-10 {
        return Err(Error::ConstructionFailed(format!(
            "witness bound {} differs from optimum {a}",
            report.bound_a
        )));
    }
    let mixture = report.mixture.matrix();
    if mixture.max_off_diagonal() > 1e-12 || (mixture.trace().re - 1.0).abs() > 1e-10 {
        return Err(Error::ConstructionFailed("mixture is not a diagonal state".into()));
    }
    if !report.mixture_is_ppt {
        return Err(Error::ConstructionFailed("mixture is not PPT".into()));
    }
    Ok(report)
}

/// Decomposition `ρ = (1 + R) ρ_s - R ρ_M` with `ρ_s` separable.
#[derive(Debug, Clone)]
pub struct PseudoMixture {
    pub separable: DensityMatrix,
    pub mixer: DensityMatrix,
    pub robustness: f64,
}

impl PseudoMixture {
    /// `(1 + R) ρ_s - R ρ_M`.
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        self.separable
            .matrix()
            .affine(1.0 + self.robustness, self.mixer.matrix(), -self.robustness)
    }

    /// Same decomposition for `U ρ U†` with `U = u_a ⊗ u_b`.
    pub fn conjugate_local(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            separable: self.separable.conjugate_local(u_a, u_b)?,
            mixer: self.mixer.conjugate_local(u_a, u_b)?,
            robustness: self.robustness,
        })
    }

    /// Decomposition of `p ρ₁ + (1-p) ρ₂` with robustness
    /// `t = p R₁ + (1-p) R₂`.
    pub fn combine(&self, p: f64, other: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidWeight(p));
        }
        let (r1, r2) = (self.robustness, other.robustness);
        let t = p * r1 + (1.0 - p) * r2;
        let n = self.separable.n();
        let sep = self.separable.matrix().affine(
            p * (1.0 + r1) / (1.0 + t),
            other.separable.matrix(),
            (1.0 - p) * (1.0 + r2) / (1.0 + t),
        )?;
        let mixer = if t > 0.0 {
            self.mixer
                .matrix()
                .affine(p * r1 / t, other.mixer.matrix(), (1.0 - p) * r2 / t)?
        } else {
            self.mixer.matrix().affine(p, other.mixer.matrix(), 1.0 - p)?
        };
        Ok(Self {
            separable: DensityMatrix::from_trusted(n, sep),
            mixer: DensityMatrix::from_trusted(n, mixer),
            robustness: t,
        })
    }
}

/// Pseudo-mixture built from an optimal mixer of the canonical state.
pub fn pseudo_mixture(sd: &SchmidtDecomposition, mixer: &MixerReport) -> Result<PseudoMixture> {
    if mixer.coeffs.len() != sd.n()
        || mixer
            .coeffs
            .iter()
            .zip(sd.coeffs())
            .any(|(a, b)| (a - b).abs() > 1e-10)
    {
        return Err(Error::MismatchedMixers);
    }
    let rho = sd.canonical_ket().density();
    if sd.is_product() {
        return Ok(PseudoMixture {
            separable: rho,
            mixer: mixer.mixer.clone(),
            robustness: 0.0,
        });
    }
    let optimum = robustness_pure(sd.coeffs())?.o_g;
    if (mixer.bound_a - optimum).abs() > 1e-9 {
        return Err(Error::SuboptimalMixer {
            bound: mixer.bound_a,
            optimum,
        });
    }
    let pm = PseudoMixture {
        separable: mixer.mixture.clone(),
        mixer: mixer.mixer.clone(),
        robustness: 1.0 / mixer.bound_a - 1.0,
    };
    let err = pm.reconstruct()?.max_abs_diff(rho.matrix());
    if err > 1e-10 {
        return Err(Error::ConstructionFailed(format!(
            "pseudo-mixture misses the state by {err:e}"
        )));
    }
    if !ppt::is_ppt(&pm.separable, NEG_TOL)? {
        return Err(Error::ConstructionFailed("separable part is not PPT".into()));
    }
    Ok(pm)
}

/// Optimal pseudo-mixture of `psi` in its own frame: the Gershgorin
/// decomposition of the canonical state carried back by the Schmidt bases.
pub fn optimal_pseudo_mixture(psi: &Ket) -> Result<PseudoMixture> {
    let sd = states::schmidt(psi)?;
    if sd.is_product() {
        return Ok(PseudoMixture {
            separable: psi.density(),
            mixer: DensityMatrix::maximally_mixed(psi.n())?,
            robustness: 0.0,
        });
    }
    let canonical = SchmidtDecomposition::canonical(sd.coeffs())?;
    let report = gershgorin_mixer(&canonical)?;
    pseudo_mixture(&canonical, &report)?.conjugate_local(sd.basis_a(), sd.basis_b())
}

/// Convex combination `t·m1 + (1-t)·m2` of two optimal mixers of one state.
pub fn combine_mixers(m1: &MixerReport, m2: &MixerReport, t: f64) -> Result<MixerReport> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidWeight(t));
    }
    if m1.state.matrix().max_abs_diff(m2.state.matrix()) > 1e-10
        || (m1.bound_a - m2.bound_a).abs() > 1e-10
    {
        return Err(Error::MismatchedMixers);
    }
    let sd = m1.decomposition()?;
    let optimum = robustness_pure(sd.coeffs())?.o_g;
    if (m1.bound_a - optimum).abs() > 1e-9 {
        return Err(Error::SuboptimalMixer {
            bound: m1.bound_a,
            optimum,
        });
    }
    let blend = DensityMatrix::mix(t, &m1.mixer, &m2.mixer)?;
    let report = MixerReport::evaluate(&sd, blend)?;
    if (report.bound_a - optimum).abs() > 1e-9 {
        return Err(Error::ConstructionFailed(format!(
            "blend bound {} differs from optimum {optimum}",
            report.bound_a
        )));
    }
    if !report.mixture_is_ppt {
        return Err(Error::ConstructionFailed("blend mixture is not PPT".into()));
    }
    Ok(report)
}

/// Outcome of a convexity check on `p ρ₁ + (1-p) ρ₂`.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexityCheck {
    /// Search estimate of `R_g` of the mixture (an upper bound on it).
    pub estimate: f64,
    /// `p R_g(ρ₁) + (1-p) R_g(ρ₂)`.
    pub bound: f64,
    pub passed: bool,
}

/// Compares the search estimate of `R_g(p ρ₁ + (1-p) ρ₂)` with the convex
/// combination of the closed-form values. The search is seeded with the
/// mixer of the combined pseudo-mixture. Two-qubit states only.
pub fn convexity_check(psi1: &Ket, psi2: &Ket, p: f64, cfg: &SearchConfig) -> Result<ConvexityCheck> {
    if psi1.n() != 2 || psi2.n() != 2 {
        return Err(Error::Unsupported(
            "convexity check requires two-qubit states".into(),
        ));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidWeight(p));
    }
    let r1 = robustness_of_ket(psi1)?.r_g;
    let r2 = robustness_of_ket(psi2)?.r_g;
    let bound = p * r1 + (1.0 - p) * r2;

    let rho = DensityMatrix::mix(p, &psi1.density(), &psi2.density())?;
    let combined = optimal_pseudo_mixture(psi1)?.combine(p, &optimal_pseudo_mixture(psi2)?)?;
    let result = search::estimate_o_g_with_seeds(&rho, cfg, &[combined.mixer])?;
    let estimate = 1.0 / result.best_a - 1.0;
    Ok(ConvexityCheck {
        estimate,
        bound,
        passed: estimate <= bound + CONVEXITY_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn bell_sd() -> SchmidtDecomposition {
        SchmidtDecomposition::canonical(&[H, H]).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn closed_form_examples() {
        let r = robustness_pure(&[H, H]).unwrap();
        assert!((r.r_s - 1.0).abs() < 1e-12 && (r.o_s - 0.5).abs() < 1e-12);
        assert_eq!(r.r_s, r.r_g);

        let r = robustness_pure(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!((r.r_s, r.o_g), (0.0, 1.0));

        let u = 1.0 / 3f64.sqrt();
        let r = robustness_pure(&[u, u, u]).unwrap();
        assert!((r.r_s - 2.0).abs() < 1e-12 && (r.o_g - 1.0 / 3.0).abs() < 1e-12);

        let r = robustness_pure(&[0.8f64.sqrt(), 0.2f64.sqrt()]).unwrap();
        assert!((r.r_s - 0.8).abs() < 1e-12 && (r.o_g - 5.0 / 9.0).abs() < 1e-12);

        assert!(matches!(
            robustness_pure(&[0.5, 0.5]),
            Err(Error::NotNormalized { .. })
        ));
        assert_eq!(robustness_pure(&[1.0, -0.0001]), Err(Error::NegativeCoefficient));
    }

    #[test]
    fn g_coefficient_examples() {
        let bell = [c(H), c(0.0), c(0.0), c(H)];
        let g = g_coefficients(&bell, 2).unwrap();
        assert!((g.values[0] + 1.0).abs() < 1e-15);
        assert!((g.closed_form_sum() + 1.0).abs() < 1e-15);

        let anti = [c(0.0), c(H), c(-H), c(0.0)];
        let g = g_coefficients(&anti, 2).unwrap();
        assert!((g.values[0] - 1.0).abs() < 1e-15);
        assert!((g.closed_form_sum() - 1.0).abs() < 1e-15);

        let e11 = [c(1.0), c(0.0), c(0.0), c(0.0)];
        assert_eq!(g_coefficients(&e11, 2).unwrap().values, vec![0.0]);

        assert!(g_coefficients(&[c(1.0), c(1.0), c(0.0), c(0.0)], 2).is_err());
    }

    #[test]
    fn quadratic_form_examples() {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((quadratic_form_pt(&mixed, 1, 2).unwrap() - 0.25).abs() < 1e-14);

        let bell = Ket::bell().density();
        assert!((quadratic_form_pt(&bell, 1, 2).unwrap() + 0.5).abs() < 1e-14);

        let diag = states::validate_density(
            &ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]),
            2,
            1e-10,
        )
        .unwrap();
        assert!(quadratic_form_pt(&diag, 1, 2).unwrap().abs() < 1e-14);
        assert!(quadratic_form_pt(&diag, 2, 1).is_err());
    }

    #[test]
    fn witness_bound_examples() {
        let sd = bell_sd();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((witness_bound_a(&sd, &mixed).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        assert_eq!(witness_bound_a(&sd, &Ket::bell().density()).unwrap(), 0.0);
        let g = gershgorin_mixer(&sd).unwrap();
        assert!((witness_bound_a(&sd, &g.mixer).unwrap() - 0.5).abs() < 1e-12);

        let product = SchmidtDecomposition::canonical(&[1.0, 0.0]).unwrap();
        assert_eq!(witness_bound_a(&product, &mixed).unwrap(), 1.0);
    }

    #[test]
    fn t_candidate_examples() {
        let sd = bell_sd();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((evaluate_t_candidate(&sd, &mixed).unwrap() - 0.5).abs() < 1e-14);
        let g = gershgorin_mixer(&sd).unwrap();
        assert!((evaluate_t_candidate(&sd, &g.mixer).unwrap() - 1.0).abs() < 1e-12);
        let bell = Ket::bell().density();
        assert!((evaluate_t_candidate(&sd, &bell).unwrap() + 1.0).abs() < 1e-14);

        assert!(t_bound_check(&sd, &mixed).unwrap());
        assert!(t_bound_check(&sd, &g.mixer).unwrap());
        assert!(t_bound_check(&sd, &bell).unwrap());

        let product = SchmidtDecomposition::canonical(&[1.0, 0.0]).unwrap();
        assert_eq!(
            evaluate_t_candidate(&product, &mixed),
            Err(Error::SchmidtRankTooLow(1))
        );
    }

    #[test]
    fn witness_matrix_rows_sum_to_h() {
        let v = [0.7f64, 0.5, 0.1];
        let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let sd = SchmidtDecomposition::canonical(&v.map(|x| x / s)).unwrap();
        let rho_m = states::random_density_seeded(3, 4).unwrap();
        let a = witness_matrix(&sd, &rho_m).unwrap();
        let t = evaluate_t_candidate(&sd, &rho_m).unwrap();
        let min_row = a.iter().map(|r| r.iter().sum::<f64>()).fold(f64::INFINITY, f64::min);
        assert!((min_row - t).abs() < 1e-10);
    }

    #[test]
    fn gershgorin_bell_golden() {
        let rep = gershgorin_mixer(&bell_sd()).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            &[0.5, 0.0, 0.0, -0.5],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[-0.5, 0.0, 0.0, 0.5],
        ])
        .unwrap();
        assert!(rep.mixer.matrix().max_abs_diff(&expected) < 1e-15);
        assert!(!rep.mixer_is_ppt);
        let pt_min = ppt::pt_min_eigenvalue(rep.mixer.matrix(), 2).unwrap();
        assert!((pt_min + 0.5).abs() < 1e-14);
        assert!((rep.bound_a - 0.5).abs() < 1e-15);
        let diag = ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert!(rep.mixture.matrix().max_abs_diff(&diag) < 1e-15);
        assert!(rep.mixture_is_ppt);
    }

    #[test]
    fn gershgorin_unequal_coefficients() {
        let a = [0.8f64.sqrt(), 0.2f64.sqrt()];
        let rep = gershgorin_mixer(&SchmidtDecomposition::canonical(&a).unwrap()).unwrap();
        let o = 5.0 / 9.0;
        assert!((rep.bound_a - o).abs() < 1e-12);
        let s: f64 = a.iter().sum();
        let m = rep.mixture.matrix();
        assert!((m[(0, 0)].re - o * a[0] * s).abs() < 1e-12);
        assert!((m[(3, 3)].re - o * a[1] * s).abs() < 1e-12);
        assert!((m.trace().re - 1.0).abs() < 1e-12);
        let direct = rep.state.matrix().affine(rep.bound_a, rep.mixer.matrix(), 1.0 - rep.bound_a).unwrap();
        assert!(direct.max_abs_diff(m) == 0.0);
    }

    #[test]
    fn gershgorin_rejects_product() {
        let product = SchmidtDecomposition::canonical(&[1.0, 0.0]).unwrap();
        assert_eq!(gershgorin_mixer(&product).unwrap_err(), Error::ProductState);
    }

    #[test]
    fn pseudo_mixture_examples() {
        let sd = bell_sd();
        let rep = gershgorin_mixer(&sd).unwrap();
        let pm = pseudo_mixture(&sd, &rep).unwrap();
        assert!((pm.robustness - 1.0).abs() < 1e-12);
        let diag = ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert!(pm.separable.matrix().max_abs_diff(&diag) < 1e-15);
        assert!(pm.reconstruct().unwrap().max_abs_diff(Ket::bell().density().matrix()) < 1e-12);

        let product = SchmidtDecomposition::canonical(&[1.0, 0.0]).unwrap();
        let rep = MixerReport::evaluate(&product, DensityMatrix::maximally_mixed(2).unwrap()).unwrap();
        let pm = pseudo_mixture(&product, &rep).unwrap();
        assert_eq!(pm.robustness, 0.0);
        assert_eq!(pm.separable, product.canonical_ket().density());

        let a = [0.8f64.sqrt(), 0.2f64.sqrt()];
        let sd = SchmidtDecomposition::canonical(&a).unwrap();
        let pm = pseudo_mixture(&sd, &gershgorin_mixer(&sd).unwrap()).unwrap();
        assert!((pm.robustness - 0.8).abs() < 1e-12);
        assert!(pm.reconstruct().unwrap().max_abs_diff(sd.canonical_ket().density().matrix()) < 1e-12);
    }

    #[test]
    fn pseudo_mixture_rejects_suboptimal() {
        let sd = bell_sd();
        let rep = MixerReport::evaluate(&sd, DensityMatrix::maximally_mixed(2).unwrap()).unwrap();
        assert!(matches!(
            pseudo_mixture(&sd, &rep),
            Err(Error::SuboptimalMixer { .. })
        ));
    }

    fn bell_separable_mixer() -> DensityMatrix {
        states::validate_density(&ComplexMatrix::from_diagonal(&[0.0, 0.5, 0.5, 0.0]), 2, 1e-12).unwrap()
    }

    #[test]
    fn combining_optimal_mixers() {
        let sd = bell_sd();
        let g = gershgorin_mixer(&sd).unwrap();
        let s = MixerReport::evaluate(&sd, bell_separable_mixer()).unwrap();
        assert!((s.bound_a - 0.5).abs() < 1e-14);
        assert!(s.mixer_is_ppt && s.mixture_is_ppt);

        let half = combine_mixers(&g, &s, 0.5).unwrap();
        assert!((half.bound_a - 0.5).abs() < 1e-9);
        assert!(half.mixture_is_ppt);

        assert_eq!(combine_mixers(&g, &s, 0.0).unwrap().mixer, s.mixer);
        assert_eq!(combine_mixers(&g, &s, 1.0).unwrap().mixer, g.mixer);

        let sub = MixerReport::evaluate(&sd, DensityMatrix::maximally_mixed(2).unwrap()).unwrap();
        assert_eq!(combine_mixers(&g, &sub, 0.5).unwrap_err(), Error::MismatchedMixers);
        assert_eq!(combine_mixers(&g, &s, 1.5).unwrap_err(), Error::InvalidWeight(1.5));
    }

    #[test]
    fn pseudo_mixture_transport_and_combination() {
        let mut rng = states::seeded_rng(21);
        let psi1 = states::random_pure(2, &mut rng).unwrap();
        let psi2 = states::random_pure(2, &mut rng).unwrap();
        let pm1 = optimal_pseudo_mixture(&psi1).unwrap();
        let pm2 = optimal_pseudo_mixture(&psi2).unwrap();
        assert!(pm1.reconstruct().unwrap().max_abs_diff(psi1.density().matrix()) < 1e-12);
        assert!(ppt::is_ppt(&pm1.separable, NEG_TOL).unwrap());

        let p = 0.3;
        let combined = pm1.combine(p, &pm2).unwrap();
        let rho = DensityMatrix::mix(p, &psi1.density(), &psi2.density()).unwrap();
        assert!(combined.reconstruct().unwrap().max_abs_diff(rho.matrix()) < 1e-12);
        assert!(ppt::is_ppt(&combined.separable, NEG_TOL).unwrap());
        assert!(states::DensityMatrix::validate(combined.mixer.matrix(), 2, &Tolerances::default()).is_ok());
    }
}
