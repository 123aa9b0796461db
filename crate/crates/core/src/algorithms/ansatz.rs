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

use crate::circuit::{Circuit, CircuitBuilder, Gate, Param};

use super::states::ring_edges;
use super::{check_size, AlgoError, Algorithm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entanglement {
    /// `cx(i, j)` for every `i < j`, in lexicographic order.
    Full,
    /// `cx(i, i+1)`.
    Linear,
}

impl Entanglement {
    fn pairs(&self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Entanglement::Full => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
            Entanglement::Linear => (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            Entanglement::Full => "full",
            Entanglement::Linear => "linear",
        }
    }
}

struct Symbols(usize);

impl Symbols {
    fn next(&mut self) -> Param {
        self.0 += 1;
        Param::symbol(format!("theta_{}", self.0 - 1))
    }
}

/// Rotation layers (`rotations` per qubit, in order) alternating with CX
/// entanglers, `reps` times, then a final rotation layer.
fn layered(
    name: &str,
    n: usize,
    reps: usize,
    ent: Entanglement,
    rotations: &[fn(Param, usize) -> Gate],
) -> Result<Circuit, AlgoError> {
    let mut b = CircuitBuilder::new(name, n).info("reps", reps.to_string()).info("entanglement", ent.as_str());
    let mut sym = Symbols(0);
    let pairs = ent.pairs(n);
    for r in 0..=reps {
        for rot in rotations {
            for q in 0..n {
                b.push(rot(sym.next(), q))?;
            }
        }
        if r < reps {
            for &(c, t) in &pairs {
                b.push(Gate::cx(c, t))?;
            }
        }
    }
    Ok(b.build())
}

fn ry(p: Param, q: usize) -> Gate {
    Gate::ry(p, q)
}

fn rz(p: Param, q: usize) -> Gate {
    Gate::rz(p, q)
}

pub fn twolocal(n: usize, reps: usize, ent: Entanglement) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Twolocal, n)?;
    layered("twolocal", n, reps, ent, &[ry])
}

pub fn realamplitudes(n: usize, reps: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Realamplitudes, n)?;
    layered("realamplitudes", n, reps, Entanglement::Linear, &[ry])
}

/// The VQE ansatz: RY layers with linear CX entanglement.
pub fn vqe(n: usize, reps: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Vqe, n)?;
    layered("vqe", n, reps, Entanglement::Linear, &[ry])
}

pub fn efficientsu2(n: usize, reps: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Efficientsu2, n)?;
    layered("efficientsu2", n, reps, Entanglement::Linear, &[ry, rz])
}

/// MaxCut QAOA on the ring with `p` layers and symbols `gamma_l`, `beta_l`.
pub fn qaoa(n: usize, p: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Qaoa, n)?;
    let mut b = CircuitBuilder::new("qaoa", n).info("graph", "ring").info("layers", p.to_string());
    for q in 0..n {
        b.push(Gate::h(q))?;
    }
    for l in 1..=p {
        let gamma = Param::symbol(format!("gamma_{l}"));
        let beta = Param::symbol(format!("beta_{l}"));
        for (i, j) in ring_edges(n) {
            b.push(Gate::cx(i, j))?;
            b.push(Gate::rz(gamma.clone(), j))?;
            b.push(Gate::cx(i, j))?;
        }
        for q in 0..n {
            b.push(Gate::rx(beta.clone(), q))?;
        }
    }
    Ok(b.build())
}
