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

use crate::circuit::{Circuit, CircuitBuilder, Gate};

use super::{check_size, AlgoError, Algorithm};

/// `H(0)` followed by the CX chain `0 → 1 → … → n−1`.
pub fn ghz(n: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Ghz, n)?;
    let mut b = CircuitBuilder::new("ghz", n);
    b.push(Gate::h(0))?;
    for i in 1..n {
        b.push(Gate::cx(i - 1, i))?;
    }
    Ok(b.build())
}

/// Equal superposition of the `n` weight-one basis states.
///
/// Starting from `|0…01⟩` on the top wire, each F-gate moves amplitude one
/// wire down, leaving `1/√n` behind; a CX cascade then turns the prefix
/// pattern into the one-hot strings.
pub fn wstate(n: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Wstate, n)?;
    let mut b = CircuitBuilder::new("wstate", n);
    b.push(Gate::x(n - 1))?;
    for m in 1..n {
        let (i, j) = (n - m, n - m - 1);
        let theta = (1.0 / (n - m + 1) as f64).sqrt().acos();
        b.push(Gate::ry(-theta, j))?;
        b.push(Gate::cz(i, j))?;
        b.push(Gate::ry(theta, j))?;
    }
    for k in (1..n).rev() {
        b.push(Gate::cx(k - 1, k))?;
    }
    Ok(b.build())
}

/// Edges `(i, i+1 mod n)`; a single edge for `n = 2`.
pub fn ring_edges(n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// Graph state on the ring.
pub fn graphstate(n: usize) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Graphstate, n)?;
    graphstate_on(n, &ring_edges(n), "ring")
}

/// `∏ CZ_ab · H^{⊗n} |0…0⟩` over the given edges.
pub fn graphstate_on(n: usize, edges: &[(usize, usize)], graph: &str) -> Result<Circuit, AlgoError> {
    check_size(Algorithm::Graphstate, n)?;
    let mut b = CircuitBuilder::new("graphstate", n).info("graph", graph);
    for q in 0..n {
        b.push(Gate::h(q))?;
    }
    for &(a, c) in edges {
        b.push(Gate::cz(a, c))?;
    }
    Ok(b.build())
}
