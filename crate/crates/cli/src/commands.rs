use std::fmt;
use std::path::{Path, PathBuf};

use robustkit::io::{self, State, StateFile};
use robustkit::matrix::{self, ComplexMatrix};
use robustkit::ppt;
use robustkit::robustness;
use robustkit::search::{self, SearchConfig};
use robustkit::states::{self, DensityMatrix, Ket, SchmidtDecomposition, Tolerances};
use robustkit::{Complex64, Error};
use serde_json::{json, Map, Value};

use crate::report::{matrix_value, sha256_hex};

pub const EXIT_SELFTEST: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_UNSUPPORTED,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_)
            | Error::UnsupportedDimension(_)
            | Error::MixedStateUnsupported
            | Error::ProductState => EXIT_UNSUPPORTED,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Everything a subcommand contributes to the report.
pub struct Outcome {
    pub digests: Map<String, Value>,
    pub result: Value,
    pub verdicts: Map<String, Value>,
    pub exit: u8,
}

impl Outcome {
    fn new(digests: Map<String, Value>, result: Value) -> Self {
        Self {
            digests,
            result,
            verdicts: Map::new(),
            exit: 0,
        }
    }
}

/// `--tol-file` wins over `ROBUSTKIT_TOL`; both name a JSON file.
pub fn load_tolerances(tol_file: Option<&Path>) -> CliResult<Tolerances> {
    let path = match tol_file {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os("ROBUSTKIT_TOL")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from),
    };
    let Some(path) = path else {
        return Ok(Tolerances::default());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

struct Input {
    state: State,
    digest: String,
}

fn read_input(path: &Path, tol: &Tolerances) -> CliResult<Input> {
    let bytes = std::fs::read(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let state = StateFile::parse(text)?.into_state(tol)?;
    Ok(Input {
        state,
        digest: sha256_hex(&bytes),
    })
}

fn digests(pairs: &[(&str, &Input)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, input)| (k.to_string(), Value::String(input.digest.clone())))
        .collect()
}

/// Pure states given as density matrices are accepted.
fn pure_ket(state: &State, tol: &Tolerances) -> CliResult<Ket> {
    match state {
        State::Ket(k) => Ok(k.clone()),
        State::Density(d) => d.pure_ket(tol.psd.max(1e-9))?.ok_or(CliError::from(Error::MixedStateUnsupported)),
    }
}

pub fn schmidt(path: &Path, tol: &Tolerances) -> CliResult<Outcome> {
    let input = read_input(path, tol)?;
    let State::Ket(psi) = &input.state else {
        return Err(CliError::unsupported("schmidt requires a ket input"));
    };
    let sd = states::schmidt(psi)?;
    let result = json!({
        "n": sd.n(),
        "coeffs": sd.coeffs(),
        "rank": sd.rank(),
        "basis_a": matrix_value(sd.basis_a()),
        "basis_b": matrix_value(sd.basis_b()),
    });
    Ok(Outcome::new(digests(&[("state", &input)]), result))
}

pub fn robustness(path: &Path, tol: &Tolerances) -> CliResult<Outcome> {
    let input = read_input(path, tol)?;
    let psi = pure_ket(&input.state, tol)?;
    let r = robustness::robustness_of_ket(&psi)?;
    let result = json!({
        "r_s": r.r_s,
        "r_g": r.r_g,
        "o_s": r.o_s,
        "o_g": r.o_g,
        "schmidt_coeffs": r.schmidt_coeffs,
        "negativity": ppt::negativity(&psi.density())?,
    });
    let mut out = Outcome::new(digests(&[("state", &input)]), result);
    out.verdicts
        .insert("entangled".into(), Value::Bool(r.r_s > 0.0));
    Ok(out)
}

pub fn mixer(path: &Path, out_dir: &Path, tol: &Tolerances) -> CliResult<Outcome> {
    let input = read_input(path, tol)?;
    let psi = pure_ket(&input.state, tol)?;
    let sd = states::schmidt(&psi)?;
    if sd.is_product() {
        return Err(Error::ProductState.into());
    }
    let canonical = SchmidtDecomposition::canonical(sd.coeffs())?;
    let report = robustness::gershgorin_mixer(&canonical)?;
    let mixer = report.mixer.conjugate_local(sd.basis_a(), sd.basis_b())?;
    let mixture = report.mixture.conjugate_local(sd.basis_a(), sd.basis_b())?;

    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::invalid(format!("{}: {e}", out_dir.display())))?;
    let mixer_path = out_dir.join("mixer.json");
    let mixture_path = out_dir.join("mixture.json");
    io::write_state(&mixer_path, &State::Density(mixer.clone()))?;
    io::write_state(&mixture_path, &State::Density(mixture.clone()))?;

    let result = json!({
        "schmidt_coeffs": report.coeffs,
        "bound_a": report.bound_a,
        "mixer": matrix_value(mixer.matrix()),
        "mixture": matrix_value(mixture.matrix()),
        "mixer_pt_min_eigenvalue": ppt::pt_min_eigenvalue(mixer.matrix(), mixer.n())?,
        "files": {
            "mixer": mixer_path.display().to_string(),
            "mixture": mixture_path.display().to_string(),
        },
    });
    let mut out = Outcome::new(digests(&[("state", &input)]), result);
    out.verdicts.insert("mixer_is_ppt".into(), Value::Bool(report.mixer_is_ppt));
    out.verdicts
        .insert("mixer_pt_negative".into(), Value::Bool(!report.mixer_is_ppt));
    out.verdicts
        .insert("mixture_is_ppt".into(), Value::Bool(report.mixture_is_ppt));
    Ok(out)
}

/// Witness bound for a pure state in its own frame: the mixer is carried
/// into the Schmidt frame before evaluating.
fn witness_in_frame(psi: &Ket, mixer: &DensityMatrix) -> CliResult<f64> {
    let sd = states::schmidt(psi)?;
    let canonical = SchmidtDecomposition::canonical(sd.coeffs())?;
    let rotated = mixer.conjugate_local(&sd.basis_a().adjoint(), &sd.basis_b().adjoint())?;
    Ok(robustness::witness_bound_a(&canonical, &rotated)?)
}

pub fn verify(state_path: &Path, mixer_path: &Path, a: f64, tol: &Tolerances) -> CliResult<Outcome> {
    if !(0.0..=1.0).contains(&a) {
        return Err(CliError::invalid(format!("weight a = {a} is outside [0, 1]")));
    }
    let state = read_input(state_path, tol)?;
    let mixer_input = read_input(mixer_path, tol)?;
    let rho = state.state.density();
    let mixer = mixer_input.state.density();
    if rho.n() != mixer.n() {
        return Err(CliError::invalid(format!(
            "state has n = {} but mixer has n = {}",
            rho.n(),
            mixer.n()
        )));
    }
    let mixture = DensityMatrix::mix(a, &rho, &mixer)?;
    let pt_min = ppt::pt_min_eigenvalue(mixture.matrix(), mixture.n())?;
    let max_a = search::max_a_for_mixer_tol(&rho, &mixer, 1e-9, tol.ppt)?;
    let witness = match &state.state {
        State::Ket(psi) => Value::from(witness_in_frame(psi, &mixer)?),
        State::Density(d) => match d.pure_ket(1e-9)? {
            Some(psi) => Value::from(witness_in_frame(&psi, &mixer)?),
            None => Value::Null,
        },
    };
    let result = json!({
        "a": a,
        "mixture_pt_min_eigenvalue": pt_min,
        "mixer_pt_min_eigenvalue": ppt::pt_min_eigenvalue(mixer.matrix(), mixer.n())?,
        "max_a": {"a": max_a.a, "feasible": max_a.feasible},
        "witness_bound_a": witness,
    });
    let mut out = Outcome::new(digests(&[("state", &state), ("mixer", &mixer_input)]), result);
    out.verdicts
        .insert("mixture_is_ppt".into(), Value::Bool(pt_min >= -tol.ppt));
    out.verdicts.insert(
        "mixer_is_ppt".into(),
        Value::Bool(ppt::is_ppt(&mixer, tol.ppt)?),
    );
    Ok(out)
}

pub fn estimate(path: &Path, cfg: &SearchConfig, tol: &Tolerances) -> CliResult<Outcome> {
    let input = read_input(path, tol)?;
    let rho = input.state.density();
    let r = search::estimate_o_g(&rho, cfg)?;
    let closed_form = match rho.pure_ket(1e-9)? {
        Some(psi) => Value::from(robustness::robustness_of_ket(&psi)?.o_g),
        None => Value::Null,
    };
    let result = json!({
        "best_a": r.best_a,
        "r_g_estimate": 1.0 / r.best_a - 1.0,
        "max_ppt_a_examined": r.max_ppt_a_examined,
        "ppt_relaxation": r.ppt_relaxation,
        "trace": r.trace.iter().map(|&(it, a)| json!([it, a])).collect::<Vec<_>>(),
        "best_mixer": matrix_value(r.best_mixer.matrix()),
        "closed_form_o_g": closed_form,
        "config": {
            "iterations": cfg.iterations,
            "seed": cfg.seed,
            "step_scale": cfg.step_scale,
            "a_resolution": cfg.a_resolution,
            "include_gershgorin_seed": cfg.include_gershgorin_seed,
            "ppt_tol": cfg.ppt_tol,
        },
    });
    Ok(Outcome::new(digests(&[("state", &input)]), result))
}

pub type PtFn = fn(&ComplexMatrix, usize) -> robustkit::Result<ComplexMatrix>;

/// Full transpose in place of the partial one; the negative control for
/// `selftest --inject-fault`.
pub fn corrupted_pt(m: &ComplexMatrix, _n: usize) -> robustkit::Result<ComplexMatrix> {
    Ok(m.transpose())
}

struct Check {
    trials: usize,
    failures: usize,
    max_error: f64,
}

impl Check {
    fn new() -> Self {
        Self {
            trials: 0,
            failures: 0,
            max_error: 0.0,
        }
    }

    fn record(&mut self, error: f64, limit: f64) {
        self.trials += 1;
        self.max_error = self.max_error.max(error);
        if error.is_nan() || error > limit {
            self.failures += 1;
        }
    }

    fn value(&self, limit: f64) -> Value {
        json!({
            "trials": self.trials,
            "failures": self.failures,
            "max_error": self.max_error,
            "limit": limit,
            "passed": self.failures == 0,
        })
    }
}

fn spectrum_check(n: usize, trials: usize, seed: u64, pt: PtFn) -> CliResult<Check> {
    let mut rng = states::stream_rng(seed, 1);
    let mut check = Check::new();
    for _ in 0..trials {
        let psi = states::random_pure(n, &mut rng)?;
        let sd = SchmidtDecomposition::canonical(states::schmidt(&psi)?.coeffs())?;
        let rho = sd.canonical_ket().density();
        let eig = matrix::hermitian_eigen(&pt(rho.matrix(), n)?)?;
        let measured: Vec<f64> = eig.values.iter().copied().filter(|&v| v < -ppt::NEG_TOL).collect();
        let predicted: Vec<f64> = ppt::pure_pt_eigenpairs(&sd)?.into_iter().map(|(v, _)| v).collect();
        let mut predicted = predicted;
        predicted.sort_by(f64::total_cmp);
        let error = if measured.len() != predicted.len() {
            f64::INFINITY
        } else {
            measured
                .iter()
                .zip(&predicted)
                .map(|(m, p)| (m - p).abs())
                .fold(0.0, f64::max)
        };
        check.record(error, 1e-9);
    }
    Ok(check)
}

fn g_sum_check(n: usize, trials: usize, seed: u64) -> CliResult<Check> {
    let mut rng = states::stream_rng(seed, 2);
    let mut check = Check::new();
    for _ in 0..trials {
        let e = states::random_pure(n, &mut rng)?;
        let g = robustness::g_coefficients(e.amplitudes(), n)?;
        let diag: Complex64 = (0..n).map(|j| e.amplitude(j + 1, j + 1)).sum();
        check.record((g.sum() - (1.0 - diag.norm_sqr())).abs(), 1e-12);
    }
    Ok(check)
}

fn cross_check(n: usize, trials: usize, seed: u64, pt: PtFn) -> CliResult<Check> {
    let mut rng = states::stream_rng(seed, 3);
    let mut check = Check::new();
    for _ in 0..trials {
        let rho_m = states::random_density(n, &mut rng)?;
        let pt_m = pt(rho_m.matrix(), n)?;
        let forms = robustness::WitnessForms::new(&rho_m)?;
        let mut error: f64 = 0.0;
        for (j, k) in matrix::ordered_pairs(n) {
            let mut e = vec![Complex64::new(0.0, 0.0); n * n];
            e[matrix::index_c(j, k, n)? - 1] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            e[matrix::index_c(k, j, n)? - 1] = Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
            let direct = pt_m.quadratic_form(&e)?.re;
            error = error.max((direct - forms.get(j, k)?).abs());
        }
        check.record(error, 1e-10);
    }
    Ok(check)
}

fn t_bound_check(n: usize, trials: usize, seed: u64) -> CliResult<Check> {
    let mut rng = states::stream_rng(seed, 4);
    let mut check = Check::new();
    for _ in 0..trials {
        let sd = SchmidtDecomposition::canonical(states::schmidt(&states::random_pure(n, &mut rng)?)?.coeffs())?;
        let rho_m = states::random_density(n, &mut rng)?;
        let bound = 1.0 / robustness::robustness_pure(sd.coeffs())?.r_s;
        let excess = robustness::evaluate_t_candidate(&sd, &rho_m)? - bound;
        check.record(excess.max(0.0), 1e-9);
    }
    Ok(check)
}

pub fn selftest(n: usize, trials: usize, seed: u64, inject_fault: bool) -> CliResult<Outcome> {
    if !(2..=matrix::MAX_LOCAL_DIM).contains(&n) {
        return Err(CliError::invalid(format!(
            "selftest needs 2 <= n <= {}, got {n}",
            matrix::MAX_LOCAL_DIM
        )));
    }
    let pt: PtFn = if inject_fault {
        corrupted_pt
    } else {
        ppt::partial_transpose
    };
    let mut checks = Map::new();
    let mut passed = true;
    if trials > 0 {
        let results = [
            ("pt_spectrum", spectrum_check(n, trials, seed, pt)?, 1e-9),
            ("g_sum", g_sum_check(n, trials, seed)?, 1e-12),
            ("witness_cross_check", cross_check(n, trials, seed, pt)?, 1e-10),
            ("t_bound", t_bound_check(n, trials, seed)?, 1e-9),
        ];
        for (name, check, limit) in results {
            passed &= check.failures == 0;
            checks.insert(name.into(), check.value(limit));
        }
        let theorem = if n == 2 {
            let report = search::verify_main_theorem(2, trials, seed, &SearchConfig::default())?;
            passed &= report.all_passed();
            let worst = report
                .trials
                .iter()
                .map(|t| (t.seeded_best - t.expected).abs())
                .fold(0.0, f64::max);
            json!({
                "trials": report.trials.len(),
                "failures": report.failures,
                "max_error": worst,
                "limit": search::THEOREM_TOL,
                "passed": report.all_passed(),
            })
        } else {
            json!({"skipped": "theorem verification runs at n = 2"})
        };
        checks.insert("main_theorem".into(), theorem);
    }
    let mut out = Outcome::new(Map::new(), Value::Object(checks));
    out.verdicts.insert("passed".into(), Value::Bool(passed));
    if !passed {
        out.exit = EXIT_SELFTEST;
    }
    Ok(out)
}
