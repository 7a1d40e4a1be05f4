//! JSON state files.
//!
//! ```json
//! {"kind": "ket", "n": 2, "data": [[0.7071067811865476, 0.0], [0, 0], [0, 0], [0.7071067811865476, 0.0]]}
//! {"kind": "density", "n": 2, "data": [[[0.25, 0], [0, 0], ...], ...]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; density data is a list of rows.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::states::{DensityMatrix, Ket, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateFile {
    Ket { n: usize, data: Vec<[f64; 2]> },
    Density { n: usize, data: Vec<Vec<[f64; 2]>> },
}

/// A parsed and validated state.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Ket(Ket),
    Density(DensityMatrix),
}

impl State {
    pub fn n(&self) -> usize {
        match self {
            State::Ket(k) => k.n(),
            State::Density(d) => d.n(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            State::Ket(k) => k.density(),
            State::Density(d) => d.clone(),
        }
    }
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl StateFile {
    pub fn from_ket(psi: &Ket) -> Self {
        StateFile::Ket {
            n: psi.n(),
            data: psi.amplitudes().iter().map(pair).collect(),
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        StateFile::Density {
            n: rho.n(),
            data: (0..m.rows()).map(|i| m.row(i).iter().map(pair).collect()).collect(),
        }
    }

    pub fn from_state(state: &State) -> Self {
        match state {
            State::Ket(k) => Self::from_ket(k),
            State::Density(d) => Self::from_density(d),
        }
    }

    pub fn into_state(self, tol: &Tolerances) -> Result<State> {
        match self {
            StateFile::Ket { n, data } => Ok(State::Ket(Ket::with_tolerance(
                n,
                data.iter().map(complex).collect(),
                tol.norm,
            )?)),
            StateFile::Density { n, data } => {
                let rows = data.len();
                if data.iter().any(|r| r.len() != rows) {
                    return Err(Error::DimensionMismatch {
                        expected: format!("{rows}x{rows}"),
                        actual: "ragged rows".into(),
                    });
                }
                let entries = data.iter().flatten().map(complex).collect();
                let m = ComplexMatrix::new(rows, rows, entries)?;
                Ok(State::Density(DensityMatrix::validate(&m, n, tol)?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files always serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Reads and validates a state file.
pub fn read_state(path: &Path, tol: &Tolerances) -> Result<State> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    StateFile::parse(&text)?.into_state(tol)
}

pub fn write_state(path: &Path, state: &State) -> Result<()> {
    std::fs::write(path, StateFile::from_state(state).to_json() + "\n")
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
