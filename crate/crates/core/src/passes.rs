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

//! Target-independent passes: parameter binding, block expansion and naive
//! peephole simplification.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::angle::{canonical, is_zero};
use crate::circuit::{Circuit, CircuitError, Gate, GateKind, Level, Param};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PassError {
    #[error("no value bound for parameter `{0}`")]
    MissingBinding(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Symbol name to angle (radians).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Binding {
    values: BTreeMap<String, f64>,
}

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every symbol of `circuit` bound to the same angle.
    pub fn uniform(circuit: &Circuit, value: f64) -> Self {
        circuit.symbols().into_iter().map(|s| (s, value)).collect()
    }

    pub fn insert(&mut self, name: impl Into<String>, value: f64) -> Result<(), CircuitError> {
        if !value.is_finite() {
            return Err(CircuitError::NonFiniteAngle(value));
        }
        self.values.insert(name.into(), value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl FromIterator<(String, f64)> for Binding {
    fn from_iter<I: IntoIterator<Item = (String, f64)>>(iter: I) -> Self {
        Binding { values: iter.into_iter().collect() }
    }
}

/// Replaces every symbol by its bound value.
pub fn bind(circuit: &Circuit, binding: &Binding) -> Result<Circuit, PassError> {
    let mut gates = Vec::with_capacity(circuit.len());
    for g in circuit.gates() {
        let mut g = g.clone();
        for p in g.params.iter_mut() {
            if let Param::Symbol(s) = p {
                let v = binding.get(s).ok_or_else(|| PassError::MissingBinding(s.clone()))?;
                *p = Param::Value(v);
            }
        }
        gates.push(g);
    }
    Ok(circuit.with_gates(gates))
}

/// Stable 64-bit FNV-1a, used to derive per-benchmark RNG seeds.
fn fnv1a(bytes: &[u8], mut h: u64) -> u64 {
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub(crate) fn derive_seed(name: &str, n: usize, seed: u64) -> u64 {
    let mut h = fnv1a(name.as_bytes(), 0xcbf2_9ce4_8422_2325);
    h = fnv1a(&(n as u64).to_le_bytes(), h);
    fnv1a(&seed.to_le_bytes(), h)
}

/// Uniform angles in `[-π, π)` for each symbol in order of appearance,
/// reproducible from `(name, logical width, seed)`.
pub fn seeded_binding(circuit: &Circuit, seed: u64) -> Binding {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(circuit.name(), circuit.logical_qubits(), seed));
    circuit.symbols().into_iter().map(|s| (s, rng.random_range(-PI..PI))).collect()
}

/// The circuit with seeded values substituted for its symbols.
pub fn bind_seeded(circuit: &Circuit, seed: u64) -> Circuit {
    let b = seeded_binding(circuit, seed);
    let mut out = bind(circuit, &b).expect("seeded binding covers every symbol");
    if circuit.seed().is_none() {
        out.set_seed(Some(seed));
    }
    out
}

/// Inlines all blocks, recursively. Multi-controlled gates are kept.
pub fn expand(circuit: &Circuit) -> Circuit {
    fn push(g: &Gate, out: &mut Vec<Gate>) {
        match &g.kind {
            GateKind::Block(b) => {
                for inner in &b.body {
                    push(&inner.remapped(&g.qubits), out);
                }
            }
            _ => out.push(g.clone()),
        }
    }
    let mut out = Vec::with_capacity(circuit.len());
    for g in circuit.gates() {
        push(g, &mut out);
    }
    circuit.with_gates(out)
}

enum Combine {
    Cancel,
    Merge(Gate),
    Keep,
}

fn same_wires(a: &Gate, b: &Gate) -> bool {
    if a.qubits == b.qubits {
        return true;
    }
    if a.kind.is_symmetric() || matches!(a.kind, GateKind::Mcz(_) | GateKind::Mcp(_)) {
        let (mut x, mut y) = (a.qubits.clone(), b.qubits.clone());
        x.sort_unstable();
        y.sort_unstable();
        return x == y;
    }
    false
}

fn combine(prev: &Gate, next: &Gate) -> Combine {
    use GateKind::*;
    if !same_wires(prev, next) {
        return Combine::Keep;
    }
    match (&prev.kind, &next.kind) {
        (H, H) | (X, X) | (Y, Y) | (Z, Z) | (CX, CX) | (CZ, CZ) | (Swap, Swap) | (ECR, ECR) => Combine::Cancel,
        (S, Sdg) | (Sdg, S) | (T, Tdg) | (Tdg, T) => Combine::Cancel,
        (Mcx(a), Mcx(b)) | (Mcz(a), Mcz(b)) if a == b => Combine::Cancel,
        (a, b) if a == b && a.is_additive_rotation() => {
            let (Some(x), Some(y)) = (prev.angle(), next.angle()) else {
                return Combine::Keep;
            };
            let theta = canonical(x + y);
            if is_zero(theta) {
                Combine::Cancel
            } else {
                Combine::Merge(Gate { params: vec![Param::Value(theta)], ..prev.clone() })
            }
        }
        _ => Combine::Keep,
    }
}

fn is_trivial(g: &Gate) -> bool {
    g.kind == GateKind::I || (g.kind.is_additive_rotation() && g.angle().is_some_and(|a| is_zero(canonical(a))))
}

/// One sweep of adjacent-gate cancellation and rotation merging. Works on a
/// per-wire stack, so a cancellation exposes the previous gate to the next
/// one and the result is already a fixpoint.
pub fn simplify(circuit: &Circuit) -> Result<Circuit, CircuitError> {
    if let Some(s) = circuit.symbols().first() {
        return Err(CircuitError::UnboundParam(s.clone()));
    }
    let mut out: Vec<Option<Gate>> = Vec::with_capacity(circuit.len());
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); circuit.num_qubits()];
    for g in circuit.gates() {
        if is_trivial(g) {
            continue;
        }
        let top = g.qubits.first().and_then(|&q| stacks[q].last().copied());
        let prev = top.filter(|&i| !g.kind.is_directive() && g.qubits.iter().all(|&q| stacks[q].last() == Some(&i)));
        if let Some(i) = prev {
            let p = out[i].as_ref().expect("stack entries are live");
            if p.qubits.len() == g.qubits.len() {
                match combine(p, g) {
                    Combine::Cancel => {
                        out[i] = None;
                        for &q in &g.qubits {
                            stacks[q].pop();
                        }
                        continue;
                    }
                    Combine::Merge(m) => {
                        out[i] = Some(m);
                        continue;
                    }
                    Combine::Keep => {}
                }
            }
        }
        for &q in &g.qubits {
            stacks[q].push(out.len());
        }
        out.push(Some(g.clone()));
    }
    Ok(circuit.with_gates(out.into_iter().flatten().collect()))
}

/// `simplify(expand(bind(c, seeded)))`, tagged as target-independent.
pub fn to_indep(circuit: &Circuit, seed: u64) -> Result<Circuit, PassError> {
    let b = seeded_binding(circuit, seed);
    let mut c = to_indep_bound(circuit, &b)?;
    if c.seed().is_none() {
        c.set_seed(Some(seed));
    }
    Ok(c)
}

/// Target-independent form under an explicit binding.
pub fn to_indep_bound(circuit: &Circuit, binding: &Binding) -> Result<Circuit, PassError> {
    let bound = bind(circuit, binding)?;
    let mut c = simplify(&expand(&bound))?;
    c.set_level(Level::Indep);
    Ok(c)
}
