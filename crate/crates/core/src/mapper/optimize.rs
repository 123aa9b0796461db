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

use crate::circuit::{Circuit, Gate, GateKind};
use crate::native::{fixpoint, optimize, LoweringError};

use super::MapError;

/// Post-routing clean-up. Levels 0, 1 and 3 match the native level; from
/// level 2 on, pairs of identical CXs separated only by gates that commute
/// with them are also removed, which is what recovers the CX saved by a
/// well-oriented SWAP.
pub fn optimize_mapped(circuit: &Circuit, opt_level: u8) -> Result<Circuit, MapError> {
    let gs = circuit.gateset().ok_or(MapError::NotNative)?.gateset();
    let mut c = optimize(circuit, &gs, opt_level)?;
    if opt_level >= 2 {
        c = fixpoint(&c, |c| {
            let c = cancel_commuting_cx(c);
            crate::passes::simplify(&c).map_err(LoweringError::from)
        })?;
    }
    c.set_opt_level(opt_level);
    Ok(c)
}

/// Whether `g`, which shares a wire with `cx(c, t)`, commutes with it.
pub(super) fn commutes_with_cx(g: &Gate, c: usize, t: usize) -> bool {
    use GateKind::*;
    match (&g.kind, g.qubits.as_slice()) {
        (CX, &[gc, gt]) => gc != t && gt != c,
        (CZ, qs) => !qs.contains(&t),
        (I, _) => true,
        (RZ | Z | S | Sdg | T | Tdg | P, &[q]) => q == c,
        (X | SX | RX, &[q]) => q == t,
        _ => false,
    }
}

/// Removes pairs `cx(c, t) … cx(c, t)` whose in-between gates on `c` and `t`
/// all commute with the CX.
pub fn cancel_commuting_cx(circuit: &Circuit) -> Circuit {
    let gates = circuit.gates();
    let mut on_wire: Vec<Vec<usize>> = vec![Vec::new(); circuit.num_qubits()];
    for (i, g) in gates.iter().enumerate() {
        for &q in &g.qubits {
            on_wire[q].push(i);
        }
    }
    let mut alive = vec![true; gates.len()];
    for j in 0..gates.len() {
        let g = &gates[j];
        if !alive[j] || g.kind != GateKind::CX {
            continue;
        }
        let (c, t) = (g.qubits[0], g.qubits[1]);
        let (wc, wt) = (&on_wire[c], &on_wire[t]);
        // Cursors point one past the next earlier gate on each wire.
        let mut ic = wc.partition_point(|&x| x < j);
        let mut it = wt.partition_point(|&x| x < j);
        loop {
            let prev_c = if ic > 0 { Some(wc[ic - 1]) } else { None };
            let prev_t = if it > 0 { Some(wt[it - 1]) } else { None };
            let i = match (prev_c, prev_t) {
                (None, None) => break,
                (a, b) => a.max(b).expect("one side present"),
            };
            if prev_c == Some(i) {
                ic -= 1;
            }
            if prev_t == Some(i) {
                it -= 1;
            }
            if !alive[i] {
                continue;
            }
            let h = &gates[i];
            if h.kind == GateKind::CX && h.qubits == g.qubits {
                alive[i] = false;
                alive[j] = false;
                break;
            }
            if !commutes_with_cx(h, c, t) {
                break;
            }
        }
    }
    let kept = gates.iter().zip(&alive).filter(|(_, &a)| a).map(|(g, _)| g.clone()).collect();
    circuit.with_gates(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
        Circuit::from_gates("t", n, gates).unwrap()
    }

    #[test]
    fn cancels_across_commuting_gates() {
        let c = circ(3, vec![Gate::cx(0, 1), Gate::rz(0.3, 0), Gate::cx(2, 1), Gate::x(1), Gate::cx(0, 1)]);
        let out = cancel_commuting_cx(&c);
        assert_eq!(out.gates(), &[Gate::rz(0.3, 0), Gate::cx(2, 1), Gate::x(1)]);
    }

    #[test]
    fn blocked_by_non_commuting() {
        let c = circ(2, vec![Gate::cx(0, 1), Gate::h(1), Gate::cx(0, 1)]);
        assert_eq!(cancel_commuting_cx(&c).len(), 3);
        let c = circ(3, vec![Gate::cx(0, 1), Gate::cx(1, 2), Gate::cx(0, 1)]);
        assert_eq!(cancel_commuting_cx(&c).len(), 3);
    }
}
