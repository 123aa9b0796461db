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

use std::f64::consts::{FRAC_PI_2, PI};

use crate::angle::{angles_equal, canonical, is_zero, normalize};
use crate::circuit::{Circuit, Gate, GateKind};
use crate::matrix::{gate_matrix, UnitaryMatrix};

use super::euler::zyz_decompose;
use super::{mc, GateSet, GateSetKind, LoweringError};

/// Native single-qubit sequence (time order) realizing `u` up to global phase.
pub fn synthesize_1q(u: &UnitaryMatrix, q: usize, gs: &GateSet) -> Vec<Gate> {
    let z = zyz_decompose(u);
    let (theta, phi, lambda) = (z.theta, z.phi, z.lambda);
    let rz = |a: f64| Gate::rz(normalize(a), q);
    // For θ = π only φ − λ matters; RY(±π) then comes out as RZ(−π) · X.
    let flip = -canonical(phi - lambda) - PI;
    let seq = if angles_equal(theta, 0.0) {
        vec![rz(phi + lambda)]
    } else {
        match gs.kind() {
            GateSetKind::Ibm | GateSetKind::Oqc => {
                if angles_equal(theta, PI) {
                    vec![rz(flip), Gate::x(q)]
                } else if angles_equal(theta, FRAC_PI_2) {
                    vec![rz(lambda - FRAC_PI_2), Gate::sx(q), rz(phi + FRAC_PI_2)]
                } else {
                    vec![rz(lambda), Gate::sx(q), rz(theta + PI), Gate::sx(q), rz(phi + PI)]
                }
            }
            GateSetKind::Rigetti => {
                if angles_equal(theta, PI) {
                    vec![rz(flip), Gate::rx(PI, q)]
                } else if angles_equal(theta, FRAC_PI_2) {
                    vec![rz(lambda - FRAC_PI_2), Gate::rx(FRAC_PI_2, q), rz(phi + FRAC_PI_2)]
                } else {
                    vec![rz(lambda), Gate::rx(FRAC_PI_2, q), rz(theta), Gate::rx(-FRAC_PI_2, q), rz(phi)]
                }
            }
            GateSetKind::Ionq => vec![rz(lambda), Gate::ry(normalize(theta), q), rz(phi)],
        }
    };
    seq.into_iter().filter(|g| !(g.kind == GateKind::RZ && g.angle().is_some_and(is_zero))).collect()
}

pub fn lower_1q(gate: &Gate, gs: &GateSet) -> Result<Vec<Gate>, LoweringError> {
    gate.values()?;
    if gs.accepts(gate) {
        return Ok(vec![gate.clone()]);
    }
    let q = gate.qubits[0];
    if gate.kind == GateKind::P && gs.contains_kind(&GateKind::RZ) {
        return Ok(vec![Gate::rz(normalize(gate.angle().unwrap_or(0.0)), q)]);
    }
    let u = gate_matrix(&gate.kind, &gate.params)?;
    let out = synthesize_1q(&u, q, gs);
    if out.iter().all(|g| gs.accepts(g)) {
        Ok(out)
    } else {
        Err(LoweringError::NonUniversalSet { gate: gate.kind.name(), gateset: gs.kind() })
    }
}

/// Rewrites a two-qubit gate over single-qubit gates and `cx`.
pub fn two_qubit_to_cx(gate: &Gate) -> Result<Vec<Gate>, LoweringError> {
    let v = gate.values()?;
    let (a, b) = (gate.qubits[0], gate.qubits[1]);
    Ok(match gate.kind {
        GateKind::CX => vec![gate.clone()],
        GateKind::CZ => vec![Gate::h(b), Gate::cx(a, b), Gate::h(b)],
        GateKind::CP => mc::cp(v[0], a, b),
        GateKind::Swap => vec![Gate::cx(a, b), Gate::cx(b, a), Gate::cx(a, b)],
        GateKind::RXX => {
            vec![Gate::h(a), Gate::h(b), Gate::cx(a, b), Gate::rz(v[0], b), Gate::cx(a, b), Gate::h(a), Gate::h(b)]
        }
        GateKind::ECR => vec![Gate::x(a), Gate::cx(a, b), Gate::rz(-FRAC_PI_2, a), Gate::rx(-FRAC_PI_2, b)],
        _ => return Err(LoweringError::NonUniversalSet { gate: gate.kind.name(), gateset: GateSetKind::Ibm }),
    })
}

/// `cx(c, t)` in the native entangler plus single-qubit corrections.
pub fn cx_to_native(c: usize, t: usize, gs: &GateSet) -> Vec<Gate> {
    match gs.kind() {
        GateSetKind::Ibm => vec![Gate::cx(c, t)],
        GateSetKind::Rigetti => {
            let h = synthesize_1q(&crate::matrix::hadamard(), t, gs);
            let mut out = h.clone();
            out.push(Gate::cz(c, t));
            out.extend(h);
            out
        }
        GateSetKind::Oqc => vec![Gate::x(c), Gate::ecr(c, t), Gate::rz(FRAC_PI_2, c), Gate::sx(t)],
        GateSetKind::Ionq => vec![
            Gate::ry(FRAC_PI_2, c),
            Gate::rxx(FRAC_PI_2, c, t),
            Gate::rx(-FRAC_PI_2, c),
            Gate::rx(-FRAC_PI_2, t),
            Gate::ry(-FRAC_PI_2, c),
        ],
    }
}

pub fn lower_2q(gate: &Gate, gs: &GateSet) -> Result<Vec<Gate>, LoweringError> {
    gate.values()?;
    if gs.accepts(gate) {
        return Ok(vec![gate.clone()]);
    }
    let mut out = Vec::new();
    for g in two_qubit_to_cx(gate)? {
        if g.kind == GateKind::CX {
            out.extend(cx_to_native(g.qubits[0], g.qubits[1], gs));
        } else {
            out.extend(lower_1q(&g, gs)?);
        }
    }
    Ok(out)
}

pub fn lower_mc(gate: &Gate, gs: &GateSet) -> Result<Vec<Gate>, LoweringError> {
    gate.values()?;
    let mut out = Vec::new();
    for g in mc::decompose(gate) {
        out.extend(lower_gate(&g, gs)?);
    }
    Ok(out)
}

/// Lowers one gate of any kind; blocks are flattened on the way.
pub fn lower_gate(gate: &Gate, gs: &GateSet) -> Result<Vec<Gate>, LoweringError> {
    match &gate.kind {
        k if k.is_directive() => Ok(vec![gate.clone()]),
        GateKind::Block(b) => {
            let mut out = Vec::new();
            for g in &b.body {
                out.extend(lower_gate(&g.remapped(&gate.qubits), gs)?);
            }
            Ok(out)
        }
        k if k.is_multi_controlled() => lower_mc(gate, gs),
        _ if gate.qubits.len() == 1 => lower_1q(gate, gs),
        _ => lower_2q(gate, gs),
    }
}

/// Merges every maximal single-qubit run into one 2×2 product and
/// re-synthesizes it, keeping the original run when that is shorter.
pub fn resynthesize_1q(circuit: &Circuit, gs: &GateSet) -> Result<Circuit, LoweringError> {
    let mut runs: Vec<Vec<Gate>> = vec![Vec::new(); circuit.num_qubits()];
    let mut out = Vec::with_capacity(circuit.len());
    let flush = |run: &mut Vec<Gate>, q: usize, out: &mut Vec<Gate>| -> Result<(), LoweringError> {
        if run.len() < 2 {
            out.append(run);
            return Ok(());
        }
        let mut u = UnitaryMatrix::identity(2);
        for g in run.iter() {
            u = &gate_matrix(&g.kind, &g.params)? * &u;
        }
        let fresh = synthesize_1q(&u, q, gs);
        if fresh.len() <= run.len() {
            out.extend(fresh);
            run.clear();
        } else {
            out.append(run);
        }
        Ok(())
    };
    for g in circuit.gates() {
        if g.qubits.len() == 1 && !g.kind.is_directive() {
            runs[g.qubits[0]].push(g.clone());
            continue;
        }
        for &q in &g.qubits {
            flush(&mut runs[q], q, &mut out)?;
        }
        out.push(g.clone());
    }
    for (q, run) in runs.iter_mut().enumerate() {
        flush(run, q, &mut out)?;
    }
    Ok(circuit.with_gates(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{hadamard, ry, sequence_matrix};

    #[test]
    fn ry_pi_lowers_to_rz_x() {
        let gs = GateSetKind::Ibm.gateset();
        for theta in [PI, -PI] {
            let got = lower_1q(&Gate::ry(theta, 0), &gs).unwrap();
            assert_eq!(got, vec![Gate::rz(-PI, 0), Gate::x(0)]);
            let m = sequence_matrix(1, &got).unwrap();
            assert!(m.equal_up_to_phase(&ry(theta), 1e-12));
        }
    }

    #[test]
    fn hadamard_on_ibm() {
        let got = synthesize_1q(&hadamard(), 0, &GateSetKind::Ibm.gateset());
        assert_eq!(got, vec![Gate::rz(FRAC_PI_2, 0), Gate::sx(0), Gate::rz(FRAC_PI_2, 0)]);
    }

    #[test]
    fn native_gate_kept() {
        let gs = GateSetKind::Ibm.gateset();
        assert_eq!(lower_1q(&Gate::rz(0.3, 0), &gs).unwrap(), vec![Gate::rz(0.3, 0)]);
        assert_eq!(lower_2q(&Gate::cx(0, 1), &gs).unwrap(), vec![Gate::cx(0, 1)]);
    }

    #[test]
    fn rigetti_cx_uses_cz() {
        let got = lower_2q(&Gate::cx(0, 1), &GateSetKind::Rigetti.gateset()).unwrap();
        assert_eq!(got.iter().filter(|g| g.kind == GateKind::CZ).count(), 1);
        let m = sequence_matrix(2, &got).unwrap();
        let cx = sequence_matrix(2, &[Gate::cx(0, 1)]).unwrap();
        assert!(m.equal_up_to_phase(&cx, 1e-9));
    }
}
