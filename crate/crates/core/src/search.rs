//! Randomized oracle for the largest admissible mixing weight.
//!
//! For a fixed mixer the PPT mixtures `a·ρ + (1-a)·ρ_M` form an interval in
//! `a`, because `a ↦ λ_min((a ρ + (1-a) ρ_M)^pt)` is concave. The oracle
//! finds the upper end of that interval by bisection and improves the mixer
//! by hill climbing. PPT is exact separability only for two qubits; at
//! `n = 3` results carry the `ppt_relaxation` flag.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix};
use crate::ppt::{self, NEG_TOL};
use crate::robustness;
use crate::states::{self, DensityMatrix, Ket};

/// Largest gap between the oracle and the closed-form optimum accepted by
/// [`verify_main_theorem`].
pub const THEOREM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub iterations: usize,
    pub seed: u64,
    /// Largest weight given to a random state in one proposal.
    pub step_scale: f64,
    pub a_resolution: f64,
    pub include_gershgorin_seed: bool,
    /// PPT threshold on the partial-transpose spectrum.
    pub ppt_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            iterations: 2000,
            seed: 0,
            step_scale: 0.1,
            a_resolution: 1e-6,
            include_gershgorin_seed: true,
            ppt_tol: NEG_TOL,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Unsupported("iterations must be at least 1".into()));
        }
        if !(self.a_resolution > 0.0 && self.a_resolution <= 1e-3) {
            return Err(Error::Unsupported(format!(
                "a_resolution {} outside (0, 1e-3]",
                self.a_resolution
            )));
        }
        if !(self.step_scale > 0.0 && self.step_scale <= 1.0) {
            return Err(Error::InvalidWeight(self.step_scale));
        }
        Ok(())
    }
}

/// Largest PPT weight for one mixer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxA {
    pub a: f64,
    /// False when no weight in `[0, 1]` gives a PPT mixture.
    pub feasible: bool,
}

/// Minimum partial-transpose eigenvalue along the segment `a ↦ a ρ + (1-a) ρ_M`.
struct Segment {
    pt_state: ComplexMatrix,
    pt_mixer: ComplexMatrix,
    tol: f64,
}

impl Segment {
    fn new(rho: &DensityMatrix, rho_m: &DensityMatrix, tol: f64) -> Result<Self> {
        if rho.n() != rho_m.n() {
            return Err(Error::DimensionMismatch {
                expected: format!("n = {}", rho.n()),
                actual: format!("n = {}", rho_m.n()),
            });
        }
        let n = rho.n();
        Ok(Self {
            pt_state: ppt::partial_transpose(rho.matrix(), n)?,
            pt_mixer: ppt::partial_transpose(rho_m.matrix(), n)?,
            tol,
        })
    }

    fn min_eig(&self, a: f64) -> Result<f64> {
        matrix::min_eigenvalue(&self.pt_state.affine(a, &self.pt_mixer, 1.0 - a)?)
    }

    fn feasible(&self, a: f64) -> Result<bool> {
        Ok(self.min_eig(a)? >= -self.tol)
    }

    /// Maximizer of the concave minimum eigenvalue on `[lo, hi]`.
    fn argmax(&self, mut lo: f64, mut hi: f64) -> Result<f64> {
        let ratio = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - ratio * (hi - lo);
        let mut x2 = lo + ratio * (hi - lo);
        let mut f1 = self.min_eig(x1)?;
        let mut f2 = self.min_eig(x2)?;
        while hi - lo > 1e-12 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + ratio * (hi - lo);
                f2 = self.min_eig(x2)?;
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - ratio * (hi - lo);
                f1 = self.min_eig(x1)?;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Upper end of the feasible interval, given a feasible `lo`.
    fn bisect(&self, mut lo: f64, resolution: f64) -> Result<f64> {
        let mut hi = 1.0;
        if self.feasible(hi)? {
            return Ok(1.0);
        }
        while hi - lo > 0.5 * resolution {
            let mid = 0.5 * (lo + hi);
            if self.feasible(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    fn max_a(&self, resolution: f64) -> Result<MaxA> {
        if self.feasible(1.0)? {
            return Ok(MaxA { a: 1.0, feasible: true });
        }
        let start = if self.feasible(0.0)? {
            0.0
        } else {
            let peak = self.argmax(0.0, 1.0)?;
            if !self.feasible(peak)? {
                return Ok(MaxA { a: 0.0, feasible: false });
            }
            peak
        };
        Ok(MaxA {
            a: self.bisect(start, resolution)?,
            feasible: true,
        })
    }

    /// Largest feasible weight if it exceeds `floor + resolution`.
    fn improves_on(&self, floor: f64, resolution: f64) -> Result<Option<f64>> {
        let probe = (floor + resolution).min(1.0);
        if probe <= floor {
            return Ok(None);
        }
        if self.feasible(probe)? {
            return Ok(Some(self.bisect(probe, resolution)?));
        }
        // Concavity: past `probe` the feasible set can only be reached if the
        // minimum eigenvalue is still rising there.
        let ahead = (probe + resolution).min(1.0);
        if ahead > probe && self.min_eig(ahead)? > self.min_eig(probe)? {
            let peak = self.argmax(probe, 1.0)?;
            if self.feasible(peak)? {
                return Ok(Some(self.bisect(peak, resolution)?));
            }
        }
        Ok(None)
    }
}

/// Largest `a` (to `resolution`) with `a ρ + (1-a) ρ_M` PPT.
pub fn max_a_for_mixer(rho: &DensityMatrix, rho_m: &DensityMatrix, resolution: f64) -> Result<MaxA> {
    max_a_for_mixer_tol(rho, rho_m, resolution, NEG_TOL)
}

pub fn max_a_for_mixer_tol(
    rho: &DensityMatrix,
    rho_m: &DensityMatrix,
    resolution: f64,
    tol: f64,
) -> Result<MaxA> {
    Segment::new(rho, rho_m, tol)?.max_a(resolution)
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best_a: f64,
    pub best_mixer: DensityMatrix,
    /// `(iteration, best_a)` at the start and after every improvement.
    pub trace: Vec<(usize, f64)>,
    /// Largest weight the search ever saw with a PPT verdict.
    pub max_ppt_a_examined: f64,
    /// Set for `n = 3`, where PPT only upper-bounds separability.
    pub ppt_relaxation: bool,
}

/// Hill-climbing estimate of `O_g(ρ)`.
pub fn estimate_o_g(rho: &DensityMatrix, cfg: &SearchConfig) -> Result<SearchResult> {
    estimate_o_g_with_seeds(rho, cfg, &[])
}

/// [`estimate_o_g`] with additional starting mixers.
pub fn estimate_o_g_with_seeds(
    rho: &DensityMatrix,
    cfg: &SearchConfig,
    seeds: &[DensityMatrix],
) -> Result<SearchResult> {
    cfg.validate()?;
    let n = rho.n();
    if n > 3 {
        return Err(Error::Unsupported(format!(
            "search supports n <= 3, got n = {n}"
        )));
    }
    let mut rng = states::seeded_rng(cfg.seed);

    let mut candidates = vec![DensityMatrix::maximally_mixed(n)?];
    if cfg.include_gershgorin_seed {
        if let Some(psi) = rho.pure_ket(1e-9)? {
            let pm = robustness::optimal_pseudo_mixture(&psi)?;
            if pm.robustness > 0.0 {
                candidates.push(pm.mixer);
            }
        }
    }
    candidates.extend(seeds.iter().cloned());

    let mut max_seen: f64 = 0.0;
    let mut best: Option<(f64, DensityMatrix)> = None;
    for cand in candidates {
        let r = max_a_for_mixer_tol(rho, &cand, cfg.a_resolution, cfg.ppt_tol)?;
        if r.feasible {
            max_seen = max_seen.max(r.a);
        }
        if best.as_ref().is_none_or(|(a, _)| r.feasible && r.a > *a) {
            best = Some((if r.feasible { r.a } else { 0.0 }, cand));
        }
    }
    let (mut best_a, mut current) = best.expect("at least one candidate");
    let mut trace = vec![(0, best_a)];

    if best_a < 1.0 {
        for it in 1..=cfg.iterations {
            let w = cfg.step_scale * (1.0 - rng.random::<f64>());
            let rank = rng.random_range(1..=n * n);
            let kick = states::random_density_rank(n, rank, &mut rng)?;
            let proposal = DensityMatrix::mix(1.0 - w, &current, &kick)?;
            let segment = Segment::new(rho, &proposal, cfg.ppt_tol)?;
            if let Some(a) = segment.improves_on(best_a, cfg.a_resolution)? {
                max_seen = max_seen.max(a);
                if a > best_a {
                    best_a = a;
                    current = proposal;
                    trace.push((it, best_a));
                }
            }
            if best_a >= 1.0 {
                break;
            }
        }
    }

    Ok(SearchResult {
        best_a,
        best_mixer: current,
        trace,
        max_ppt_a_examined: max_seen,
        ppt_relaxation: n == 3,
    })
}

/// Oracle outcome for one pure state.
#[derive(Debug, Clone, Serialize)]
pub struct TrialOutcome {
    pub index: usize,
    pub schmidt_coeffs: Vec<f64>,
    /// `1/(1 + R_s)`.
    pub expected: f64,
    pub seeded_best: f64,
    pub unseeded_best: f64,
    pub unseeded_max_examined: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub trials: Vec<TrialOutcome>,
    pub passes: usize,
    pub failures: usize,
}

impl TheoremReport {
    fn from_outcomes(trials: Vec<TrialOutcome>) -> Self {
        let passes = trials.iter().filter(|t| t.passed).count();
        let failures = trials.len() - passes;
        Self {
            trials,
            passes,
            failures,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

fn trial_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index)
}

/// Runs the oracle on `psi` with and without the Gershgorin seed and checks
/// both against the closed-form optimum.
pub fn verify_state(psi: &Ket, index: usize, cfg: &SearchConfig) -> Result<TrialOutcome> {
    let report = robustness::robustness_of_ket(psi)?;
    let expected = report.o_g;
    let rho = psi.density();

    let seeded = estimate_o_g(
        &rho,
        &SearchConfig {
            include_gershgorin_seed: true,
            ..cfg.clone()
        },
    )?;
    let unseeded = estimate_o_g(
        &rho,
        &SearchConfig {
            include_gershgorin_seed: false,
            ..cfg.clone()
        },
    )?;
    let passed = (seeded.best_a - expected).abs() <= THEOREM_TOL
        && seeded.max_ppt_a_examined <= expected + THEOREM_TOL
        && unseeded.max_ppt_a_examined <= expected + THEOREM_TOL;
    Ok(TrialOutcome {
        index,
        schmidt_coeffs: report.schmidt_coeffs,
        expected,
        seeded_best: seeded.best_a,
        unseeded_best: unseeded.best_a,
        unseeded_max_examined: unseeded.max_ppt_a_examined,
        passed,
    })
}

/// Checks `O_g = 1/(1 + R_s)` on `trials` Haar-random two-qubit states.
/// Trial `i` draws its state from stream `i` of `seed`.
pub fn verify_main_theorem(n: usize, trials: usize, seed: u64, cfg: &SearchConfig) -> Result<TheoremReport> {
    if n != 2 {
        return Err(Error::Unsupported(format!(
            "theorem verification requires n = 2, got n = {n}"
        )));
    }
    let run = |i: usize| -> Result<TrialOutcome> {
        let psi = states::random_pure(2, &mut states::stream_rng(seed, i as u64))?;
        let trial_cfg = SearchConfig {
            seed: trial_seed(seed, i as u64),
            ..cfg.clone()
        };
        verify_state(&psi, i, &trial_cfg)
    };

    #[cfg(feature = "parallel")]
    let outcomes: Result<Vec<TrialOutcome>> = {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Result<Vec<TrialOutcome>> = (0..trials).map(run).collect();

    Ok(TheoremReport::from_outcomes(outcomes?))
}

/// [`verify_main_theorem`] on caller-chosen states.
pub fn verify_main_theorem_states(states: &[Ket], cfg: &SearchConfig) -> Result<TheoremReport> {
    let outcomes = states
        .iter()
        .enumerate()
        .map(|(i, psi)| {
            verify_state(
                psi,
                i,
                &SearchConfig {
                    seed: trial_seed(cfg.seed, i as u64),
                    ..cfg.clone()
                },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport::from_outcomes(outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::robustness::gershgorin_mixer;
    use crate::states::SchmidtDecomposition;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn werner_threshold() {
        let bell = Ket::bell().density();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let r = max_a_for_mixer(&bell, &mixed, 1e-6).unwrap();
        assert!(r.feasible);
        assert!((r.a - 1.0 / 3.0).abs() <= 1e-6);
    }

    #[test]
    fn separable_state_admits_full_weight() {
        let diag = states::validate_density(
            &ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]),
            2,
            1e-10,
        )
        .unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(max_a_for_mixer(&diag, &mixed, 1e-6).unwrap().a, 1.0);
    }

    #[test]
    fn entangled_mixer_has_isolated_feasible_point() {
        let bell = Ket::bell().density();
        let g = gershgorin_mixer(&SchmidtDecomposition::canonical(&[H, H]).unwrap()).unwrap();
        let r = max_a_for_mixer(&bell, &g.mixer, 1e-6).unwrap();
        assert!(r.feasible);
        assert!((r.a - 0.5).abs() <= 1e-6);
    }

    #[test]
    fn infeasible_mixer_is_flagged() {
        let bell = Ket::bell().density();
        let r = max_a_for_mixer(&bell, &bell, 1e-6).unwrap();
        assert_eq!(r, MaxA { a: 0.0, feasible: false });
    }

    #[test]
    fn seeded_bell_search_is_exact() {
        let r = estimate_o_g(&Ket::bell().density(), &SearchConfig::default()).unwrap();
        assert!((r.best_a - 0.5).abs() <= 1e-6);
        assert!(r.max_ppt_a_examined <= 0.5 + 1e-6);
    }

    #[test]
    fn product_state_search() {
        let rho = Ket::product(1, 2, 2).unwrap().density();
        let r = estimate_o_g(&rho, &SearchConfig::default()).unwrap();
        assert_eq!(r.best_a, 1.0);
    }

    #[test]
    fn search_is_deterministic_and_monotone() {
        let rho = states::random_pure_seeded(2, 3).unwrap().density();
        let cfg = SearchConfig {
            iterations: 300,
            include_gershgorin_seed: false,
            seed: 17,
            ..SearchConfig::default()
        };
        let a = estimate_o_g(&rho, &cfg).unwrap();
        let b = estimate_o_g(&rho, &cfg).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.best_mixer, b.best_mixer);
        assert!(a.trace.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn config_validation() {
        let rho = Ket::bell().density();
        for cfg in [
            SearchConfig { iterations: 0, ..SearchConfig::default() },
            SearchConfig { a_resolution: 0.0, ..SearchConfig::default() },
            SearchConfig { a_resolution: 1e-2, ..SearchConfig::default() },
        ] {
            assert!(estimate_o_g(&rho, &cfg).is_err());
        }
        let big = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(matches!(
            estimate_o_g(&big, &SearchConfig::default()),
            Err(Error::Unsupported(_))
        ));
        assert!(verify_main_theorem(3, 1, 0, &SearchConfig::default()).is_err());
    }

    #[test]
    fn qutrit_search_is_flagged() {
        let rho = states::random_pure_seeded(3, 1).unwrap().density();
        let cfg = SearchConfig { iterations: 20, ..SearchConfig::default() };
        let r = estimate_o_g(&rho, &cfg).unwrap();
        assert!(r.ppt_relaxation);
        let expected = robustness::robustness_of_ket(&states::random_pure_seeded(3, 1).unwrap())
            .unwrap()
            .o_g;
        assert!((r.best_a - expected).abs() <= 1e-6);
    }
}
