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

//! Ancilla-free decomposition of multi-controlled gates into `{h, t, tdg,
//! p, x, cx}`.
//!
//! Only the wires of the gate itself are used. Controls not taking part in a
//! sub-step serve as dirty (borrowed, arbitrary-state) ancillas, so no extra
//! qubits are ever allocated.

use std::f64::consts::PI;

use crate::circuit::{Gate, GateKind};

/// The six-CX Toffoli with target `c`.
pub fn toffoli(a: usize, b: usize, c: usize) -> Vec<Gate> {
    let t = |q| Gate::one(GateKind::T, q);
    let tdg = |q| Gate::one(GateKind::Tdg, q);
    vec![
        Gate::h(c),
        Gate::cx(b, c),
        tdg(c),
        Gate::cx(a, c),
        t(c),
        Gate::cx(b, c),
        tdg(c),
        Gate::cx(a, c),
        t(b),
        t(c),
        Gate::h(c),
        Gate::cx(a, b),
        t(a),
        tdg(b),
        Gate::cx(a, b),
    ]
}

/// Multi-controlled X on `target`, borrowing the wires in `dirty`.
pub fn mcx(controls: &[usize], target: usize, dirty: &[usize]) -> Vec<Gate> {
    let k = controls.len();
    match k {
        0 => vec![Gate::x(target)],
        1 => vec![Gate::cx(controls[0], target)],
        2 => toffoli(controls[0], controls[1], target),
        _ if dirty.len() >= k - 2 => vchain(controls, target, &dirty[..k - 2]),
        _ if !dirty.is_empty() => split(controls, target, dirty[0]),
        _ => {
            let mut out = vec![Gate::h(target)];
            out.extend(mcp(PI, controls, target));
            out.push(Gate::h(target));
            out
        }
    }
}

/// `k ≥ 3` controls with `k − 2` dirty ancillas: 4(k − 2) Toffolis.
fn vchain(controls: &[usize], target: usize, anc: &[usize]) -> Vec<Gate> {
    let k = controls.len();
    // Step i (0-based) flips anc[i+1] (or the target for the last one) by
    // controls[i + 2] and anc[i].
    let step = |i: usize| {
        let to = if i + 1 == k - 2 { target } else { anc[i + 1] };
        toffoli(controls[i + 2], anc[i], to)
    };
    let base = || toffoli(controls[0], controls[1], anc[0]);
    let mut out = Vec::new();
    for top in [k - 2, k - 3] {
        for i in (0..top).rev() {
            out.extend(step(i));
        }
        out.extend(base());
        for i in 0..top {
            out.extend(step(i));
        }
    }
    out
}

/// `k ≥ 3` controls with one dirty ancilla, split into two halves that each
/// borrow the other half.
fn split(controls: &[usize], target: usize, anc: usize) -> Vec<Gate> {
    let m = controls.len().div_ceil(2);
    let (a, b) = controls.split_at(m);
    let mut dirty1 = b.to_vec();
    dirty1.push(target);
    let mut ctrl2 = b.to_vec();
    ctrl2.push(anc);
    let x1 = mcx(a, anc, &dirty1);
    let x2 = mcx(&ctrl2, target, a);
    let mut out = Vec::with_capacity(2 * (x1.len() + x2.len()));
    for _ in 0..2 {
        out.extend(x1.iter().cloned());
        out.extend(x2.iter().cloned());
    }
    out
}

/// Multi-controlled phase `P(θ)` on `target`.
pub fn mcp(theta: f64, controls: &[usize], target: usize) -> Vec<Gate> {
    match controls {
        [] => vec![Gate::p(theta, target)],
        [c] => cp(theta, *c, target),
        [rest @ .., last] => {
            let mut out = cp(theta / 2.0, *last, target);
            let flip = mcx(rest, *last, &[target]);
            out.extend(flip.iter().cloned());
            out.extend(cp(-theta / 2.0, *last, target));
            out.extend(flip);
            out.extend(mcp(theta / 2.0, rest, target));
            out
        }
    }
}

pub fn mcz(controls: &[usize], target: usize) -> Vec<Gate> {
    mcp(PI, controls, target)
}

/// Controlled phase written in `p` and `cx`.
pub fn cp(theta: f64, c: usize, t: usize) -> Vec<Gate> {
    vec![Gate::p(theta / 2.0, c), Gate::cx(c, t), Gate::p(-theta / 2.0, t), Gate::cx(c, t), Gate::p(theta / 2.0, t)]
}

/// Decomposes an MC gate (or passes any other gate through unchanged).
pub fn decompose(gate: &Gate) -> Vec<Gate> {
    let (controls, target) = gate.qubits.split_at(gate.qubits.len().saturating_sub(1));
    match gate.kind {
        GateKind::Mcx(_) => mcx(controls, target[0], &[]),
        GateKind::Mcz(_) => mcz(controls, target[0]),
        GateKind::Mcp(_) => match gate.angle() {
            Some(theta) => mcp(theta, controls, target[0]),
            None => vec![gate.clone()],
        },
        _ => vec![gate.clone()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{controlled, embed, pauli_x, phase, sequence_matrix, UnitaryMatrix};

    fn target_matrix(local: &UnitaryMatrix, controls: &[usize], target: usize, n: usize) -> UnitaryMatrix {
        let mut qs = controls.to_vec();
        qs.push(target);
        embed(&controlled(local, controls.len()), &qs, n)
    }

    #[test]
    fn toffoli_is_exact() {
        let got = sequence_matrix(3, &toffoli(0, 1, 2)).unwrap();
        let want = target_matrix(&pauli_x(), &[0, 1], 2, 3);
        assert!(got.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn mcx_all_strategies() {
        // (controls, dirty) over a 6-wire register with target 5.
        let cases: [(&[usize], &[usize]); 4] =
            [(&[0, 1, 2], &[3]), (&[0, 1, 2, 3], &[4]), (&[0, 1, 2, 3], &[4, 6]), (&[0, 1, 2, 3, 4], &[])];
        for (c, d) in cases {
            let n = 7;
            let got = sequence_matrix(n, &mcx(c, 5, d)).unwrap();
            let want = target_matrix(&pauli_x(), c, 5, n);
            assert!(got.equal_up_to_phase(&want, 1e-9), "controls {c:?} dirty {d:?}");
        }
    }

    #[test]
    fn mcp_ladder() {
        for k in 1..=4 {
            let controls: Vec<usize> = (0..k).collect();
            let got = sequence_matrix(k + 1, &mcp(0.77, &controls, k)).unwrap();
            let want = target_matrix(&phase(0.77), &controls, k, k + 1);
            assert!(got.max_abs_diff(&want) < 1e-9, "k = {k}");
        }
    }
}
