use proptest::prelude::*;
use robustkit::matrix::{self, ComplexMatrix};
use robustkit::ppt;
use robustkit::robustness;
use robustkit::search::{self, SearchConfig};
use robustkit::states::{self, DensityMatrix, Ket, SchmidtDecomposition};
use robustkit::Complex64;

fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), rows * cols).prop_map(move |v| {
        ComplexMatrix::new(rows, cols, v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect())
            .unwrap()
    })
}

fn small_dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=3)
}

fn seeded_density() -> impl Strategy<Value = DensityMatrix> {
    (2usize..=4, any::<u64>()).prop_map(|(n, seed)| states::random_density_seeded(n, seed).unwrap())
}

fn seeded_pure() -> impl Strategy<Value = Ket> {
    (2usize..=4, any::<u64>()).prop_map(|(n, seed)| states::random_pure_seeded(n, seed).unwrap())
}

fn hermitian_of(m: &ComplexMatrix) -> ComplexMatrix {
    m.add(&m.adjoint()).unwrap().scale(0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_associative(
        (a, b, c) in small_dims().prop_flat_map(|(r, s)| {
            (complex_matrix(r, s), complex_matrix(s, r), complex_matrix(2, 2))
        })
    ) {
        let left = matrix::tensor(&matrix::tensor(&a, &b).unwrap(), &c).unwrap();
        let right = matrix::tensor(&a, &matrix::tensor(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn tensor_is_bilinear(
        (a, a2, b) in small_dims().prop_flat_map(|(r, s)| {
            (complex_matrix(r, s), complex_matrix(r, s), complex_matrix(s, r))
        }),
        x in -2.0..2.0f64,
        y in -2.0..2.0f64,
    ) {
        let lhs = matrix::tensor(&a.affine(x, &a2, y).unwrap(), &b).unwrap();
        let rhs = matrix::tensor(&a, &b).unwrap()
            .affine(x, &matrix::tensor(&a2, &b).unwrap(), y).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn eigen_reconstructs(m in (1usize..=8).prop_flat_map(|d| complex_matrix(d * d, d * d))) {
        let h = hermitian_of(&m);
        let eig = matrix::hermitian_eigen(&h).unwrap();
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-9);
    }

    #[test]
    fn partial_transpose_is_an_involution(rho in seeded_density()) {
        let n = rho.n();
        let pt = ppt::partial_transpose(rho.matrix(), n).unwrap();
        let back = ppt::partial_transpose(&pt, n).unwrap();
        prop_assert_eq!(&back, rho.matrix());
        prop_assert!((pt.trace() - rho.matrix().trace()).norm() <= 1e-12);
        prop_assert!(pt.hermitian_deviation() <= 1e-12);
    }

    #[test]
    fn schmidt_invariant_under_local_unitaries(psi in seeded_pure(), seed in any::<u64>()) {
        let n = psi.n();
        let mut rng = states::seeded_rng(seed);
        let u_a = states::random_unitary(n, &mut rng).unwrap();
        let u_b = states::random_unitary(n, &mut rng).unwrap();
        let a = states::schmidt(&psi).unwrap();
        let b = states::schmidt(&psi.apply_local(&u_a, &u_b).unwrap()).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
        prop_assert!(a.reconstruct().unwrap().overlap(&psi) >= 1.0 - 1e-9);
    }

    #[test]
    fn canonicalize_is_idempotent(psi in seeded_pure()) {
        let once = states::canonicalize(&psi).unwrap();
        let twice = states::canonicalize(&once).unwrap();
        let diff = once.amplitudes().iter().zip(twice.amplitudes())
            .map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        prop_assert!(diff <= 1e-9);
    }

    #[test]
    fn negative_pt_spectrum_matches_coefficient_products(psi in seeded_pure()) {
        let sd = states::schmidt(&psi).unwrap();
        let n = sd.n();
        let rho = psi.density();
        let negatives = ppt::PtSpectrum::of(&rho, ppt::NEG_TOL).unwrap().negative_values();
        let a = sd.coeffs();
        let mut predicted: Vec<f64> = (0..n)
            .flat_map(|r| (r + 1..n).map(move |s| (r, s)))
            .map(|(r, s)| -a[r] * a[s])
            .filter(|v| *v < -ppt::PAIR_TOL)
            .collect();
        predicted.sort_by(f64::total_cmp);
        prop_assert_eq!(negatives.len(), predicted.len());
        for (m, p) in negatives.iter().zip(&predicted) {
            prop_assert!((m - p).abs() <= 1e-9);
        }
        let r = robustness::robustness_of_ket(&psi).unwrap();
        let neg = ppt::negativity(&rho).unwrap();
        prop_assert!((r.r_s - 2.0 * neg).abs() <= 1e-9);
    }

    #[test]
    fn witness_bound_never_exceeds_optimum(psi in seeded_pure(), seed in any::<u64>()) {
        let sd = SchmidtDecomposition::canonical(states::schmidt(&psi).unwrap().coeffs()).unwrap();
        let n = sd.n();
        let mut rng = states::seeded_rng(seed);
        let rho_m = states::random_density(n, &mut rng).unwrap();
        let bound = robustness::witness_bound_a(&sd, &rho_m).unwrap();
        let o = robustness::robustness_pure(sd.coeffs()).unwrap().o_g;
        prop_assert!(bound <= o + 1e-9);
        prop_assert!(robustness::t_bound_check(&sd, &rho_m).unwrap());
    }

    #[test]
    fn robustness_formulas_agree(coeffs in prop::collection::vec(0.0..1.0f64, 2..=4)) {
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let mut a: Vec<f64> = coeffs.iter().map(|c| c / norm).collect();
        a.sort_by(|x, y| y.total_cmp(x));
        let r = robustness::robustness_pure(&a).unwrap();
        prop_assert!(r.r_s >= -1e-12 && r.r_s <= a.len() as f64 - 1.0 + 1e-12);
        prop_assert!((r.o_s * (1.0 + r.r_s) - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn g_sum_identity_holds_for_many_vectors() {
    let mut rng = states::seeded_rng(31);
    for t in 0..500 {
        let n = 2 + t % 3;
        let e = states::random_pure(n, &mut rng).unwrap();
        let g = robustness::g_coefficients(e.amplitudes(), n).unwrap();
        assert!((g.sum() - g.closed_form_sum()).abs() <= 1e-12);
    }
}

#[test]
fn witness_routes_agree() {
    let mut rng = states::seeded_rng(32);
    for t in 0..200 {
        let rho_m = states::random_density(2 + t % 3, &mut rng).unwrap();
        let forms = robustness::WitnessForms::new(&rho_m).unwrap();
        assert!(forms.max_discrepancy() <= 1e-10);
    }
}

#[test]
fn ginibre_mean_purity_follows_formula() {
    let mut rng = states::seeded_rng(33);
    let samples = 1000;
    let mean: f64 = (0..samples)
        .map(|_| states::random_density(2, &mut rng).unwrap().purity())
        .sum::<f64>()
        / samples as f64;
    let dim = 4.0;
    assert!((mean - 2.0 * dim / (dim * dim + 1.0)).abs() <= 0.02, "mean purity {mean}");
}

#[test]
fn seeded_generators_are_reproducible() {
    assert_eq!(
        states::random_density_seeded(3, 5).unwrap(),
        states::random_density_seeded(3, 5).unwrap()
    );
    assert_eq!(
        states::random_pure_seeded(4, 6).unwrap(),
        states::random_pure_seeded(4, 6).unwrap()
    );
    assert_ne!(
        states::random_pure_seeded(2, 6).unwrap(),
        states::random_pure_seeded(2, 7).unwrap()
    );
}

#[test]
fn unseeded_search_approaches_bell_optimum() {
    let cfg = SearchConfig {
        include_gershgorin_seed: false,
        seed: 11,
        ..SearchConfig::default()
    };
    let result = search::estimate_o_g(&Ket::bell().density(), &cfg).unwrap();
    assert!(result.best_a >= 0.48, "best {}", result.best_a);
    assert!(result.max_ppt_a_examined <= 0.5 + search::THEOREM_TOL);
}

#[test]
fn injected_states_match_closed_form() {
    let states = [
        Ket::from_schmidt_coeffs(&[0.8_f64.sqrt(), 0.2_f64.sqrt()]).unwrap(),
        Ket::bell(),
    ];
    let report = search::verify_main_theorem_states(&states, &SearchConfig::default()).unwrap();
    assert!(report.all_passed());
    assert!((report.trials[0].expected - 5.0 / 9.0).abs() <= 1e-12);
    assert!((report.trials[1].seeded_best - 0.5).abs() <= 1e-6);
}

#[test]
fn main_theorem_is_reproducible() {
    let cfg = SearchConfig {
        iterations: 200,
        ..SearchConfig::default()
    };
    let a = search::verify_main_theorem(2, 4, 9, &cfg).unwrap();
    let b = search::verify_main_theorem(2, 4, 9, &cfg).unwrap();
    let best = |r: &search::TheoremReport| {
        r.trials.iter().map(|t| (t.seeded_best, t.unseeded_best)).collect::<Vec<_>>()
    };
    assert_eq!(best(&a), best(&b));
    assert!(a.all_passed());
}
