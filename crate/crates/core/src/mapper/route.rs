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

use std::collections::BTreeSet;

use crate::circuit::{is_permutation, Circuit, Gate, GateKind, Level};
use crate::native::{cx_to_native, GateSet};

use super::optimize::commutes_with_cx;
use super::{Device, MapError, UNREACHABLE};

/// Two-qubit gates past the front layer that break ties between SWAPs.
const LOOKAHEAD: usize = 20;

/// Emitted gates searched for a CX to pair a SWAP with.
const BACKSCAN: usize = 64;

struct Dag {
    succ: Vec<Vec<usize>>,
    pending: Vec<usize>,
}

impl Dag {
    fn new(gates: &[Gate], n: usize) -> Self {
        let mut last: Vec<Option<usize>> = vec![None; n];
        let mut succ = vec![Vec::new(); gates.len()];
        let mut pending = vec![0; gates.len()];
        for (i, g) in gates.iter().enumerate() {
            let mut preds: Vec<usize> = g.qubits.iter().filter_map(|&q| last[q]).collect();
            preds.sort_unstable();
            preds.dedup();
            for p in preds {
                succ[p].push(i);
                pending[i] += 1;
            }
            for &q in &g.qubits {
                last[q] = Some(i);
            }
        }
        Dag { succ, pending }
    }
}

struct Router<'a> {
    device: &'a Device,
    gs: GateSet,
    l2p: Vec<usize>,
    p2l: Vec<usize>,
    out: Vec<Gate>,
    last_on: Vec<Option<usize>>,
    swaps: usize,
}

impl Router<'_> {
    fn emit(&mut self, g: Gate) {
        for &q in &g.qubits {
            self.last_on[q] = Some(self.out.len());
        }
        self.out.push(g);
    }

    fn dist(&self, g: &Gate) -> u32 {
        self.device.distance(self.l2p[g.qubits[0]], self.l2p[g.qubits[1]])
    }

    fn swapped_dist(&self, g: &Gate, a: usize, b: usize) -> u32 {
        let m = |p: usize| {
            if p == a {
                b
            } else if p == b {
                a
            } else {
                p
            }
        };
        self.device.distance(m(self.l2p[g.qubits[0]]), m(self.l2p[g.qubits[1]]))
    }

    /// Orients the three CX of a SWAP so its outer CXs match a neighbouring
    /// CX on the same pair: the last one emitted, else the next one pending.
    fn orientation(&self, a: usize, b: usize, pending: &[&Gate]) -> (usize, usize) {
        for (c, t) in [(a, b), (b, a)] {
            if self.reaches_cx(c, t) {
                return (c, t);
            }
        }
        let m = |p: usize| {
            if p == a {
                b
            } else if p == b {
                a
            } else {
                p
            }
        };
        for g in pending {
            if g.kind != GateKind::CX {
                continue;
            }
            let (c, t) = (m(self.l2p[g.qubits[0]]), m(self.l2p[g.qubits[1]]));
            if (c, t) == (a, b) || (c, t) == (b, a) {
                return (c, t);
            }
        }
        (a.min(b), a.max(b))
    }

    /// Whether an emitted `cx(c, t)` is reachable backwards through gates
    /// that commute with it.
    fn reaches_cx(&self, c: usize, t: usize) -> bool {
        let touching = self.out.iter().rev().take(BACKSCAN).filter(|g| g.qubits.iter().any(|&q| q == c || q == t));
        for g in touching {
            if g.kind == GateKind::CX && g.qubits == [c, t] {
                return true;
            }
            if !commutes_with_cx(g, c, t) {
                return false;
            }
        }
        false
    }

    fn swap(&mut self, a: usize, b: usize, pending: &[&Gate]) {
        let (c, t) = self.orientation(a, b, pending);
        for (x, y) in [(c, t), (t, c), (c, t)] {
            for g in cx_to_native(x, y, &self.gs) {
                self.emit(g);
            }
        }
        let (la, lb) = (self.p2l[a], self.p2l[b]);
        self.p2l.swap(a, b);
        self.l2p[la] = b;
        self.l2p[lb] = a;
        self.swaps += 1;
    }
}

/// Routes a native circuit onto `device` starting from `layout` (logical to
/// physical; a partial injective layout is completed in index order).
///
/// Blocked two-qubit gates form the front layer. Each step applies the SWAP,
/// among edges touching a front-layer qubit, that minimizes the summed front
/// distance, then the distance over the next 20 two-qubit gates, then the
/// edge index. When no SWAP shortens the front, the first blocked gate is
/// walked along a shortest path until something executes.
pub fn route(circuit: &Circuit, device: &Device, layout: &[usize]) -> Result<Circuit, MapError> {
    let gs = circuit.gateset().ok_or(MapError::NotNative)?.gateset();
    if !matches!(circuit.level(), Level::Native | Level::Mapped) {
        return Err(MapError::NotNative);
    }
    let n = circuit.num_qubits();
    let big = device.num_qubits();
    if n > big {
        return Err(MapError::DeviceTooSmall { device: device.name().to_string(), needed: n, available: big });
    }
    let impossible = |reason: String| MapError::RoutingImpossible { device: device.name().to_string(), reason };
    let mut l2p = layout.to_vec();
    if l2p.len() < big {
        let mut used = vec![false; big];
        for &p in &l2p {
            if p < big {
                used[p] = true;
            }
        }
        l2p.extend((0..big).filter(|&p| !used[p]));
    }
    if l2p.len() < n || !is_permutation(&l2p, big) {
        return Err(impossible(format!("layout {layout:?} is not injective on the device")));
    }
    let gates = circuit.gates();
    for g in gates {
        if g.kind != GateKind::Barrier && g.qubits.len() > 2 {
            return Err(impossible(format!("{} acts on more than two qubits", g.kind)));
        }
        if g.is_two_qubit() && device.distance(l2p[g.qubits[0]], l2p[g.qubits[1]]) == UNREACHABLE {
            return Err(impossible(format!("qubits {:?} lie in disconnected regions", g.qubits)));
        }
    }
    let initial = l2p.clone();
    let mut p2l = vec![0; big];
    for (l, &p) in l2p.iter().enumerate() {
        p2l[p] = l;
    }
    let mut r =
        Router { device, gs, l2p, p2l, out: Vec::with_capacity(gates.len() * 2), last_on: vec![None; big], swaps: 0 };
    let mut dag = Dag::new(gates, n);
    let mut done = vec![false; gates.len()];
    let mut front: BTreeSet<usize> = (0..gates.len()).filter(|&i| dag.pending[i] == 0).collect();
    let mut cursor = 0;
    let mut fallback = false;

    while !front.is_empty() {
        let mut progressed = true;
        let mut executed_any = false;
        while progressed {
            progressed = false;
            let ready: Vec<usize> =
                front.iter().copied().filter(|&i| !gates[i].is_two_qubit() || r.dist(&gates[i]) == 1).collect();
            for i in ready {
                front.remove(&i);
                done[i] = true;
                let g = &gates[i];
                let phys: Vec<usize> = g.qubits.iter().map(|&q| r.l2p[q]).collect();
                r.emit(Gate { qubits: phys, ..g.clone() });
                for &s in &dag.succ[i] {
                    dag.pending[s] -= 1;
                    if dag.pending[s] == 0 {
                        front.insert(s);
                    }
                }
                progressed = true;
                executed_any = true;
            }
        }
        if executed_any {
            fallback = false;
        }
        if front.is_empty() {
            break;
        }
        while cursor < gates.len() && done[cursor] {
            cursor += 1;
        }
        let blocked: Vec<&Gate> = front.iter().map(|&i| &gates[i]).collect();
        let lookahead: Vec<&Gate> = (cursor..gates.len())
            .filter(|&i| !done[i] && !front.contains(&i) && gates[i].is_two_qubit())
            .take(LOOKAHEAD)
            .map(|i| &gates[i])
            .collect();
        let current: u32 = blocked.iter().map(|g| r.dist(g)).sum();

        let mut candidates = BTreeSet::new();
        for g in &blocked {
            for &q in &g.qubits {
                let p = r.l2p[q];
                for &v in device.neighbors(p) {
                    candidates.insert(device.edge_index(p, v).expect("neighbour edge"));
                }
            }
        }
        let best = candidates
            .into_iter()
            .map(|e| {
                let (a, b) = device.edges()[e];
                let h: u32 = blocked.iter().map(|g| r.swapped_dist(g, a, b)).sum();
                let l: u32 = lookahead.iter().map(|g| r.swapped_dist(g, a, b)).sum();
                (h, l, e)
            })
            .min();
        let (a, b) = match best {
            Some((h, _, e)) if h < current && !fallback => device.edges()[e],
            _ => {
                fallback = true;
                let g = blocked[0];
                let path = device
                    .shortest_path(r.l2p[g.qubits[0]], r.l2p[g.qubits[1]])
                    .ok_or_else(|| impossible("disconnected coupling graph".into()))?;
                (path[0], path[1])
            }
        };
        let pending: Vec<&Gate> = blocked.iter().chain(&lookahead).copied().collect();
        r.swap(a, b, &pending);
    }

    let swaps = r.swaps;
    let fin = r.l2p.clone();
    let mut out = circuit.widened(big).with_gates(r.out);
    out.set_level(Level::Mapped);
    out.set_mapping(device.name(), initial, fin);
    out.set_info("swaps", swaps.to_string());
    Ok(out)
}
