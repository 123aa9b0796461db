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

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Block, Circuit, CircuitBuilder, Gate};
use crate::passes::derive_seed;

use super::{check_size, AlgoError, Algorithm};

/// The two Deutsch–Jozsa oracles shipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DjOracle {
    /// `f(x) = 0`.
    Constant,
    /// `f(x) = x₀`.
    Balanced,
}

impl DjOracle {
    /// Even seeds pick the balanced oracle, odd seeds the constant one.
    pub fn from_seed(seed: u64) -> Self {
        if seed % 2 == 0 {
            DjOracle::Balanced
        } else {
            DjOracle::Constant
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DjOracle::Constant => "constant",
            DjOracle::Balanced => "balanced",
        }
    }
}

/// Inputs on wires `0..n−1`, ancilla on `n − 1`.
pub fn dj(n: usize, oracle: DjOracle) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Dj, n)?;
    let anc = n - 1;
    let body = match oracle {
        DjOracle::Constant => Vec::new(),
        DjOracle::Balanced => vec![Gate::cx(0, anc)],
    };
    let block = Arc::new(Block { name: "dj_oracle".into(), num_qubits: n, body });
    let mut b = CircuitBuilder::new("dj", n).info("oracle", oracle.as_str());
    b.push(Gate::x(anc))?;
    for q in 0..n {
        b.push(Gate::h(q))?;
    }
    b.push(Gate::block(block, (0..n).collect()))?;
    for q in 0..anc {
        b.push(Gate::h(q))?;
    }
    Ok(b.build())
}

/// `⌊(π/4)·√(2ⁿ)⌋`.
pub fn grover_iterations(n: usize) -> usize {
    (PI / 4.0 * 2f64.powf(n as f64 / 2.0)).floor() as usize
}

/// Grover search for a marked string drawn from the seed.
pub fn grover(n: usize, seed: u64) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Grover, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed("grover", n, seed));
    let marked = if n >= 64 { rng.random() } else { rng.random_range(0..1u64 << n) };
    grover_marked(n, marked, grover_iterations(n))
}

fn mcz_all(n: usize) -> Gate {
    let controls: Vec<usize> = (0..n - 1).collect();
    Gate::mcz(&controls, n - 1)
}

/// Grover search with an explicit marked basis state (qubit 0 = bit 0).
pub fn grover_marked(n: usize, marked: u64, iterations: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Grover, n)?;
    let zeros: Vec<usize> = (0..n).filter(|&q| marked >> q & 1 == 0).collect();
    let mut oracle = Vec::new();
    oracle.extend(zeros.iter().map(|&q| Gate::x(q)));
    oracle.push(mcz_all(n));
    oracle.extend(zeros.iter().map(|&q| Gate::x(q)));
    let mut diffuser: Vec<Gate> = (0..n).map(Gate::h).collect();
    diffuser.extend((0..n).map(Gate::x));
    diffuser.push(mcz_all(n));
    diffuser.extend((0..n).map(Gate::x));
    diffuser.extend((0..n).map(Gate::h));
    let oracle = Arc::new(Block { name: "grover_oracle".into(), num_qubits: n, body: oracle });
    let diffuser = Arc::new(Block { name: "grover_diffuser".into(), num_qubits: n, body: diffuser });

    let all: Vec<usize> = (0..n).collect();
    let bits: String = (0..n).rev().map(|q| if marked >> q & 1 == 1 { '1' } else { '0' }).collect();
    let mut b = CircuitBuilder::new("grover", n).info("marked", bits).info("iterations", iterations.to_string());
    for q in 0..n {
        b.push(Gate::h(q))?;
    }
    for _ in 0..iterations {
        b.push(Gate::block(oracle.clone(), all.clone()))?;
        b.push(Gate::block(diffuser.clone(), all.clone()))?;
    }
    Ok(b.build())
}

/// Coined walk on the `2^(n−1)`-cycle: coin on wire `n − 1`, position on
/// `0..n−1` (wire 0 least significant). Each step is a Hadamard coin toss
/// followed by increment when the coin is 1 and decrement when it is 0.
pub fn qwalk(n: usize, steps: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Qwalk, n)?;
    let coin = n - 1;
    let m = n - 1;
    let flip = |i: usize| {
        let mut controls = vec![coin];
        controls.extend(0..i);
        if controls.len() == 1 {
            Gate::cx(coin, i)
        } else {
            Gate::mcx(&controls, i)
        }
    };
    let increment: Vec<Gate> = (0..m).rev().map(flip).collect();
    let mut b = CircuitBuilder::new("qwalk", n).info("steps", steps.to_string());
    for _ in 0..steps {
        b.push(Gate::h(coin))?;
        b.extend(increment.iter().cloned())?;
        b.push(Gate::x(coin))?;
        b.extend(increment.iter().rev().cloned())?;
        b.push(Gate::x(coin))?;
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grover_iteration_counts() {
        assert_eq!(grover_iterations(3), 2);
        assert_eq!(grover_iterations(4), 3);
        assert_eq!(grover_iterations(5), 4);
    }

    #[test]
    fn dj_oracle_by_parity() {
        assert_eq!(dj(3, DjOracle::from_seed(0)).unwrap().info()["oracle"], "balanced");
        assert_eq!(dj(3, DjOracle::from_seed(1)).unwrap().info()["oracle"], "constant");
    }
}
