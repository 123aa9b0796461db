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

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;

use super::{Device, MapError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutStrategy {
    /// Logical `i` on physical `i`.
    #[default]
    Trivial,
    /// Busiest logical qubits on the best-connected physical qubits of a
    /// connected region grown from the highest-degree qubit.
    Degree,
}

impl LayoutStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            LayoutStrategy::Trivial => "trivial",
            LayoutStrategy::Degree => "degree",
        }
    }
}

impl fmt::Display for LayoutStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LayoutStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(LayoutStrategy::Trivial),
            "degree" | "degree-matched" => Ok(LayoutStrategy::Degree),
            _ => Err(format!("unknown layout strategy `{s}`")),
        }
    }
}

/// A full permutation of the device register: entry `l` is the physical
/// home of logical qubit `l`; entries past the circuit width place the idle
/// wires on the remaining physical qubits in increasing order.
pub fn initial_layout(circuit: &Circuit, device: &Device, strategy: LayoutStrategy) -> Result<Vec<usize>, MapError> {
    let n = circuit.logical_qubits().min(circuit.num_qubits());
    let big = device.num_qubits();
    if n > big {
        return Err(MapError::DeviceTooSmall { device: device.name().to_string(), needed: n, available: big });
    }
    let mut layout: Vec<usize> = match strategy {
        LayoutStrategy::Trivial => (0..n).collect(),
        LayoutStrategy::Degree => degree_matched(circuit, device, n),
    };
    let mut used = vec![false; big];
    for &p in &layout {
        used[p] = true;
    }
    layout.extend((0..big).filter(|&p| !used[p]));
    Ok(layout)
}

fn degree_matched(circuit: &Circuit, device: &Device, n: usize) -> Vec<usize> {
    let mut degree = vec![0usize; n];
    for g in circuit.gates() {
        if g.is_two_qubit() {
            for &q in &g.qubits {
                if q < n {
                    degree[q] += 1;
                }
            }
        }
    }
    let mut logical: Vec<usize> = (0..n).collect();
    logical.sort_by_key(|&l| (std::cmp::Reverse(degree[l]), l));

    let start = (0..device.num_qubits()).max_by_key(|&p| (device.degree(p), std::cmp::Reverse(p))).unwrap_or(0);
    let mut seen = vec![false; device.num_qubits()];
    let mut region = Vec::with_capacity(n);
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(p) = queue.pop_front() {
        if region.len() == n {
            break;
        }
        region.push(p);
        for &v in device.neighbors(p) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    // A disconnected device may leave the region short; top up in index order.
    for p in 0..device.num_qubits() {
        if region.len() == n {
            break;
        }
        if !region.contains(&p) {
            region.push(p);
        }
    }
    let inside = |p: usize, region: &[usize]| device.neighbors(p).iter().filter(|v| region.contains(v)).count();
    let mut physical = region.clone();
    physical.sort_by_key(|&p| (std::cmp::Reverse(inside(p, &region)), p));

    let mut layout = vec![0; n];
    for (l, p) in logical.into_iter().zip(physical) {
        layout[l] = p;
    }
    layout
}
