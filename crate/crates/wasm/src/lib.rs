//! Browser bindings. Every export takes slider weights for the Schmidt
//! coefficients (any nonnegative numbers, normalized here) and returns JSON.

use robustkit::ppt::{self, PtSpectrum};
use robustkit::robustness;
use robustkit::search::{self, SearchConfig};
use robustkit::states::{DensityMatrix, SchmidtDecomposition};
use robustkit::ComplexMatrix;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_SEARCH_ITERATIONS: usize = 20_000;

/// Sorted, normalized Schmidt decomposition from raw slider weights.
pub fn decomposition(weights: &[f64]) -> Result<SchmidtDecomposition, String> {
    if weights.len() < 2 {
        return Err("need at least two coefficients".into());
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err("weights must be finite and nonnegative".into());
    }
    let norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err("at least one weight must be positive".into());
    }
    let mut coeffs: Vec<f64> = weights.iter().map(|w| w / norm).collect();
    coeffs.sort_by(|a, b| b.total_cmp(a));
    SchmidtDecomposition::canonical(&coeffs).map_err(|e| e.to_string())
}

fn real_parts(m: &ComplexMatrix) -> Value {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| z.re).collect::<Vec<_>>())
        .collect()
}

/// Robustness, partial-transpose spectrum and the optimal mixer.
pub fn analyze_json(weights: &[f64]) -> Result<Value, String> {
    let sd = decomposition(weights)?;
    let report = robustness::robustness_pure(sd.coeffs()).map_err(|e| e.to_string())?;
    let spectrum = PtSpectrum::of_canonical(&sd).map_err(|e| e.to_string())?;
    let rho = sd.canonical_ket().density();

    let mixer = if sd.is_product() {
        Value::Null
    } else {
        let m = robustness::gershgorin_mixer(&sd).map_err(|e| e.to_string())?;
        json!({
            "bound_a": m.bound_a,
            "mixer": real_parts(m.mixer.matrix()),
            "mixture": real_parts(m.mixture.matrix()),
            "mixer_is_ppt": m.mixer_is_ppt,
        })
    };
    Ok(json!({
        "n": sd.n(),
        "coeffs": sd.coeffs(),
        "r": report.r_s,
        "o": report.o_g,
        "state": real_parts(rho.matrix()),
        "pt_eigenvalues": spectrum.full.values,
        "negatives": spectrum.negatives.iter().map(|e| json!({
            "value": e.value,
            "pair": e.pair.map(|(r, s)| vec![r, s]),
        })).collect::<Vec<_>>(),
        "gershgorin": mixer,
    }))
}

/// `λ_min` of the partial transpose of `a ρ + (1-a) ρ_M` on a grid of `a`,
/// for the maximally mixed and the optimal mixer.
pub fn curve_json(weights: &[f64], samples: usize) -> Result<Value, String> {
    if !(2..=2001).contains(&samples) {
        return Err("samples must lie in 2..=2001".into());
    }
    let sd = decomposition(weights)?;
    let n = sd.n();
    let rho = sd.canonical_ket().density();
    let mut mixers = vec![(
        "maximally mixed",
        DensityMatrix::maximally_mixed(n).map_err(|e| e.to_string())?,
    )];
    if !sd.is_product() {
        let m = robustness::gershgorin_mixer(&sd).map_err(|e| e.to_string())?;
        mixers.push(("optimal", m.mixer));
    }

    let grid: Vec<f64> = (0..samples).map(|k| k as f64 / (samples - 1) as f64).collect();
    let mut curves = Vec::new();
    for (name, mixer) in &mixers {
        let values = grid
            .iter()
            .map(|&a| {
                let mix = DensityMatrix::mix(a, &rho, mixer)?;
                ppt::pt_min_eigenvalue(mix.matrix(), n)
            })
            .collect::<robustkit::Result<Vec<f64>>>()
            .map_err(|e| e.to_string())?;
        let max_a = search::max_a_for_mixer(&rho, mixer, 1e-9).map_err(|e| e.to_string())?;
        let witness = robustness::witness_bound_a(&sd, mixer).map_err(|e| e.to_string())?;
        curves.push(json!({
            "mixer": name,
            "min_eigenvalue": values,
            "max_a": if max_a.feasible { Value::from(max_a.a) } else { Value::Null },
            "witness_bound_a": witness,
        }));
    }
    let o = robustness::robustness_pure(sd.coeffs()).map_err(|e| e.to_string())?.o_g;
    Ok(json!({"a": grid, "curves": curves, "o": o}))
}

/// Hill-climbing search trace for `n ≤ 3`.
pub fn search_json(weights: &[f64], iterations: usize, seed: u64, gershgorin_seed: bool) -> Result<Value, String> {
    if iterations > MAX_SEARCH_ITERATIONS {
        return Err(format!("at most {MAX_SEARCH_ITERATIONS} iterations"));
    }
    let sd = decomposition(weights)?;
    let rho = sd.canonical_ket().density();
    let cfg = SearchConfig {
        iterations,
        seed,
        include_gershgorin_seed: gershgorin_seed,
        ..SearchConfig::default()
    };
    let result = search::estimate_o_g(&rho, &cfg).map_err(|e| e.to_string())?;
    let o = robustness::robustness_pure(sd.coeffs()).map_err(|e| e.to_string())?.o_g;
    Ok(json!({
        "iterations": iterations,
        "trace": result.trace.iter().map(|&(it, a)| json!([it, a])).collect::<Vec<_>>(),
        "best_a": result.best_a,
        "max_ppt_a_examined": result.max_ppt_a_examined,
        "ppt_relaxation": result.ppt_relaxation,
        "o": o,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analyze(weights: &[f64]) -> Result<String, JsError> {
    to_js(analyze_json(weights))
}

#[wasm_bindgen]
pub fn mixing_curve(weights: &[f64], samples: usize) -> Result<String, JsError> {
    to_js(curve_json(weights, samples))
}

#[wasm_bindgen]
pub fn search_trace(weights: &[f64], iterations: usize, seed: u64, gershgorin_seed: bool) -> Result<String, JsError> {
    to_js(search_json(weights, iterations, seed, gershgorin_seed))
}
