// Copyright 2026 The qbench Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Benchmark constructors at the algorithmic level.
//!
//! Every constructor is a pure function of `(n, seed)`. Oracles, marked
//! strings and problem graphs that the algorithm's definition leaves open
//! are pinned here and recorded in the circuit's `info` map.

mod ansatz;
mod fourier;
mod search;
mod states;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError};

pub use ansatz::{efficientsu2, qaoa, realamplitudes, twolocal, vqe, Entanglement};
pub use fourier::{ae, ae_probability, iqft_gates, qft, qft_block, qft_gates, qpe_exact};
pub use search::{dj, grover, grover_iterations, grover_marked, qwalk, DjOracle};
pub use states::{ghz, graphstate, graphstate_on, ring_edges, wstate};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgoError {
    #[error("{algorithm} needs at least {min} qubits, got {n}")]
    UnsupportedSize { algorithm: Algorithm, n: usize, min: usize },
    #[error("unknown benchmark `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ghz,
    Wstate,
    Graphstate,
    Dj,
    Qft,
    #[serde(rename = "qpe_exact")]
    QpeExact,
    Ae,
    Grover,
    Qwalk,
    Qaoa,
    Vqe,
    Twolocal,
    Realamplitudes,
    Efficientsu2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 14] = [
        Algorithm::Ghz,
        Algorithm::Wstate,
        Algorithm::Graphstate,
        Algorithm::Dj,
        Algorithm::Qft,
        Algorithm::QpeExact,
        Algorithm::Ae,
        Algorithm::Grover,
        Algorithm::Qwalk,
        Algorithm::Qaoa,
        Algorithm::Vqe,
        Algorithm::Twolocal,
        Algorithm::Realamplitudes,
        Algorithm::Efficientsu2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Ghz => "ghz",
            Algorithm::Wstate => "wstate",
            Algorithm::Graphstate => "graphstate",
            Algorithm::Dj => "dj",
            Algorithm::Qft => "qft",
            Algorithm::QpeExact => "qpe_exact",
            Algorithm::Ae => "ae",
            Algorithm::Grover => "grover",
            Algorithm::Qwalk => "qwalk",
            Algorithm::Qaoa => "qaoa",
            Algorithm::Vqe => "vqe",
            Algorithm::Twolocal => "twolocal",
            Algorithm::Realamplitudes => "realamplitudes",
            Algorithm::Efficientsu2 => "efficientsu2",
        }
    }

    pub fn min_qubits(&self) -> usize {
        match self {
            Algorithm::Qft => 1,
            _ => 2,
        }
    }

    /// Whether the algorithmic form carries free parameters.
    pub fn is_parametric(&self) -> bool {
        matches!(
            self,
            Algorithm::Qaoa
                | Algorithm::Vqe
                | Algorithm::Twolocal
                | Algorithm::Realamplitudes
                | Algorithm::Efficientsu2
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = AlgoError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s || (s == "qpe" && *a == Algorithm::QpeExact))
            .ok_or(AlgoError::Unknown(s))
    }
}

/// What to build: algorithm, width and the seed pinning its free choices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BenchmarkSpec {
    pub algorithm: Algorithm,
    pub num_qubits: usize,
    pub seed: u64,
    /// Ansatz repetitions; `None` uses the algorithm's default.
    pub reps: Option<usize>,
}

impl BenchmarkSpec {
    pub fn new(algorithm: Algorithm, num_qubits: usize) -> Self {
        BenchmarkSpec { algorithm, num_qubits, seed: 0, reps: None }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn reps(mut self, reps: usize) -> Self {
        self.reps = Some(reps);
        self
    }
}

pub(crate) fn check_size(algorithm: Algorithm, n: usize) -> Result<(), AlgoError> {
    let min = algorithm.min_qubits();
    if n < min {
        return Err(AlgoError::UnsupportedSize { algorithm, n, min });
    }
    Ok(())
}

/// Builds the algorithmic-level circuit for `spec`.
pub fn generate(spec: &BenchmarkSpec) -> Result<Circuit, AlgoError> {
    let n = spec.num_qubits;
    let seed = spec.seed;
    let c = match spec.algorithm {
        Algorithm::Ghz => ghz(n)?,
        Algorithm::Wstate => wstate(n)?,
        Algorithm::Graphstate => graphstate(n)?,
        Algorithm::Dj => dj(n, DjOracle::from_seed(seed))?,
        Algorithm::Qft => qft(n)?,
        Algorithm::QpeExact => {
            check_size(Algorithm::QpeExact, n)?;
            let m = n - 1;
            qpe_exact(n, seed % (1u64 << m.min(63)))?
        }
        Algorithm::Ae => ae(n)?,
        Algorithm::Grover => grover(n, seed)?,
        Algorithm::Qwalk => qwalk(n, 1)?,
        Algorithm::Qaoa => qaoa(n, spec.reps.unwrap_or(2))?,
        Algorithm::Vqe => vqe(n, spec.reps.unwrap_or(3))?,
        Algorithm::Twolocal => twolocal(n, spec.reps.unwrap_or(1), Entanglement::Full)?,
        Algorithm::Realamplitudes => realamplitudes(n, spec.reps.unwrap_or(3))?,
        Algorithm::Efficientsu2 => efficientsu2(n, spec.reps.unwrap_or(3))?,
    };
    let mut c = c;
    c.set_seed(Some(seed));
    Ok(c)
}
