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

use std::f64::consts::PI;
use std::sync::Arc;

use crate::circuit::{Block, Circuit, CircuitBuilder, Gate, Param};

use super::{check_size, AlgoError, Algorithm};

/// Success probability encoded by the amplitude-estimation instance.
pub const AE_PROBABILITY: f64 = 0.2;

pub fn ae_probability() -> f64 {
    AE_PROBABILITY
}

/// QFT on wires `0..n` with the terminal SWAP network, so that its matrix is
/// the DFT `ω^{jk}/√2ⁿ` with qubit 0 as the least-significant bit.
pub fn qft_gates(n: usize) -> Vec<Gate> {
    let mut out = Vec::new();
    for j in (0..n).rev() {
        out.push(Gate::h(j));
        for k in (0..j).rev() {
            out.push(Gate::cp(PI / (1u64 << (j - k)) as f64, k, j));
        }
    }
    for i in 0..n / 2 {
        out.push(Gate::swap(i, n - 1 - i));
    }
    out
}

/// Inverse of [`qft_gates`]: reversed order, negated phases.
pub fn iqft_gates(n: usize) -> Vec<Gate> {
    qft_gates(n)
        .into_iter()
        .rev()
        .map(|mut g| {
            for p in g.params.iter_mut() {
                if let Param::Value(v) = p {
                    *v = -*v;
                }
            }
            g
        })
        .collect()
}

pub fn qft_block(n: usize) -> Arc<Block> {
    Arc::new(Block { name: "qft".into(), num_qubits: n, body: qft_gates(n) })
}

fn iqft_block(n: usize) -> Arc<Block> {
    Arc::new(Block { name: "iqft".into(), num_qubits: n, body: iqft_gates(n) })
}

/// The QFT kept as a single block at the algorithmic level.
pub fn qft(n: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Qft, n)?;
    let mut b = CircuitBuilder::new("qft", n);
    b.push(Gate::block(qft_block(n), (0..n).collect()))?;
    Ok(b.build())
}

/// Phase estimation of `P(2πk/2^m)` on its `|1⟩` eigenstate with
/// `m = n − 1` counting qubits; the counting register reads `k` exactly.
pub fn qpe_exact(n: usize, k: u64) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::QpeExact, n)?;
    let m = n - 1;
    let phase = k as f64 / 2f64.powi(m as i32);
    let mut b = CircuitBuilder::new("qpe_exact", n).info("phase_numerator", k.to_string());
    b.push(Gate::x(m))?;
    for j in 0..m {
        b.push(Gate::h(j))?;
    }
    for j in 0..m {
        let angle = 2.0 * PI * phase * 2f64.powi(j as i32);
        b.push(Gate::cp(crate::angle::canonical(angle), j, m))?;
    }
    b.push(Gate::block(iqft_block(m), (0..m).collect()))?;
    Ok(b.build())
}

/// Canonical amplitude estimation: `A = RY(2a)` with `sin²a = p` on the
/// objective qubit `n − 1`, Grover operator `Q = A S₀ A† S_χ = RY(4a)`, and
/// phase estimation of `Q` over `n − 1` evaluation qubits.
pub fn ae(n: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Ae, n)?;
    let m = n - 1;
    let a = AE_PROBABILITY.sqrt().asin();
    let mut b = CircuitBuilder::new("ae", n).info("probability", AE_PROBABILITY.to_string());
    for j in 0..m {
        b.push(Gate::h(j))?;
    }
    b.push(Gate::ry(2.0 * a, m))?;
    for j in 0..m {
        // Controlled RY(θ) with θ = 2^j · 4a.
        let theta = crate::angle::canonical(4.0 * a * 2f64.powi(j as i32) / 2.0) * 2.0;
        b.push(Gate::ry(theta / 2.0, m))?;
        b.push(Gate::cx(j, m))?;
        b.push(Gate::ry(-theta / 2.0, m))?;
        b.push(Gate::cx(j, m))?;
    }
    b.push(Gate::block(iqft_block(m), (0..m).collect()))?;
    Ok(b.build())
}
