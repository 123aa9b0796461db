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

//! Circuit intermediate representation shared by every compilation stage.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over `num_qubits` wires,
//! tagged with the abstraction [`Level`] it lives at. Circuits are immutable
//! once built: every pass consumes a reference and returns a fresh circuit.
//!
//! Qubit 0 is the least-significant bit when states are indexed. Within a
//! gate, controls are listed before targets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::native::GateSetKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit circuit")]
    IndexOutOfRange { qubit: usize, num_qubits: usize },
    #[error("{kind} expects {expected} {what}, got {got}")]
    ArityMismatch { kind: String, what: &'static str, expected: usize, got: usize },
    #[error("{kind} acts on qubit {qubit} more than once")]
    DuplicateQubit { kind: String, qubit: usize },
    #[error("parameter `{0}` is not bound to a value")]
    UnboundParam(String),
    #[error("angle {0} is not finite")]
    NonFiniteAngle(f64),
    #[error("circuit violates {level} level invariants: {reason}")]
    InvalidLevel { level: Level, reason: String },
}

/// A gate parameter: either still symbolic or bound to an angle in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Symbol(String),
    Value(f64),
}

impl Param {
    pub fn value(&self) -> Option<f64> {
        match self {
            Param::Value(v) => Some(*v),
            Param::Symbol(_) => None,
        }
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Param::Symbol(name.into())
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Value(v)
    }
}

/// A named sub-circuit kept intact at the algorithmic level. The body acts on
/// local wires `0..num_qubits` and carries bound parameters only.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub name: String,
    pub num_qubits: usize,
    pub body: Vec<Gate>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    I,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    SX,
    RX,
    RY,
    RZ,
    P,
    U,
    CX,
    CZ,
    CP,
    Swap,
    RXX,
    ECR,
    /// Multi-controlled X with the given number of controls.
    Mcx(usize),
    Mcz(usize),
    Mcp(usize),
    Measure,
    Barrier,
    Block(Arc<Block>),
}

impl GateKind {
    /// Lowercase identifier, used for op counts and OpenQASM emission.
    pub fn name(&self) -> String {
        match self {
            GateKind::I => "id".into(),
            GateKind::H => "h".into(),
            GateKind::X => "x".into(),
            GateKind::Y => "y".into(),
            GateKind::Z => "z".into(),
            GateKind::S => "s".into(),
            GateKind::Sdg => "sdg".into(),
            GateKind::T => "t".into(),
            GateKind::Tdg => "tdg".into(),
            GateKind::SX => "sx".into(),
            GateKind::RX => "rx".into(),
            GateKind::RY => "ry".into(),
            GateKind::RZ => "rz".into(),
            GateKind::P => "p".into(),
            GateKind::U => "u".into(),
            GateKind::CX => "cx".into(),
            GateKind::CZ => "cz".into(),
            GateKind::CP => "cp".into(),
            GateKind::Swap => "swap".into(),
            GateKind::RXX => "rxx".into(),
            GateKind::ECR => "ecr".into(),
            GateKind::Mcx(k) => format!("mcx_{k}"),
            GateKind::Mcz(k) => format!("mcz_{k}"),
            GateKind::Mcp(k) => format!("mcp_{k}"),
            GateKind::Measure => "measure".into(),
            GateKind::Barrier => "barrier".into(),
            GateKind::Block(b) => b.name.clone(),
        }
    }

    pub fn num_params(&self) -> usize {
        match self {
            GateKind::RX
            | GateKind::RY
            | GateKind::RZ
            | GateKind::P
            | GateKind::CP
            | GateKind::RXX
            | GateKind::Mcp(_) => 1,
            GateKind::U => 3,
            _ => 0,
        }
    }

    /// Number of wires; `None` for the variadic barrier.
    pub fn num_qubits(&self) -> Option<usize> {
        Some(match self {
            GateKind::I
            | GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg
            | GateKind::SX
            | GateKind::RX
            | GateKind::RY
            | GateKind::RZ
            | GateKind::P
            | GateKind::U
            | GateKind::Measure => 1,
            GateKind::CX | GateKind::CZ | GateKind::CP | GateKind::Swap | GateKind::RXX | GateKind::ECR => 2,
            GateKind::Mcx(k) | GateKind::Mcz(k) | GateKind::Mcp(k) => k + 1,
            GateKind::Block(b) => b.num_qubits,
            GateKind::Barrier => return None,
        })
    }

    pub fn is_multi_controlled(&self) -> bool {
        matches!(self, GateKind::Mcx(_) | GateKind::Mcz(_) | GateKind::Mcp(_))
    }

    pub fn is_directive(&self) -> bool {
        matches!(self, GateKind::Measure | GateKind::Barrier)
    }

    /// Rotation kinds whose angles add under composition on the same wires.
    pub fn is_additive_rotation(&self) -> bool {
        matches!(self, GateKind::RX | GateKind::RY | GateKind::RZ | GateKind::P | GateKind::CP | GateKind::RXX)
    }

    /// Kinds whose matrix is symmetric under exchanging its two qubits.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, GateKind::CZ | GateKind::CP | GateKind::Swap | GateKind::RXX)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub params: Vec<Param>,
}

impl Gate {
    /// Builds a gate, checking arity, duplicate wires and angle finiteness.
    pub fn new(kind: GateKind, qubits: Vec<usize>, params: Vec<Param>) -> Result<Self, CircuitError> {
        if let Some(n) = kind.num_qubits() {
            if qubits.len() != n {
                return Err(CircuitError::ArityMismatch {
                    kind: kind.name(),
                    what: "qubits",
                    expected: n,
                    got: qubits.len(),
                });
            }
        }
        if params.len() != kind.num_params() {
            return Err(CircuitError::ArityMismatch {
                kind: kind.name(),
                what: "parameters",
                expected: kind.num_params(),
                got: params.len(),
            });
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(CircuitError::DuplicateQubit { kind: kind.name(), qubit: *q });
            }
        }
        for p in &params {
            if let Param::Value(v) = p {
                if !v.is_finite() {
                    return Err(CircuitError::NonFiniteAngle(*v));
                }
            }
        }
        Ok(Gate { kind, qubits, params })
    }

    fn fixed(kind: GateKind, qubits: Vec<usize>, params: Vec<Param>) -> Self {
        Gate { kind, qubits, params }
    }

    pub fn one(kind: GateKind, q: usize) -> Self {
        Self::fixed(kind, vec![q], vec![])
    }
    pub fn h(q: usize) -> Self {
        Self::one(GateKind::H, q)
    }
    pub fn x(q: usize) -> Self {
        Self::one(GateKind::X, q)
    }
    pub fn sx(q: usize) -> Self {
        Self::one(GateKind::SX, q)
    }
    pub fn rx(theta: impl Into<Param>, q: usize) -> Self {
        Self::fixed(GateKind::RX, vec![q], vec![theta.into()])
    }
    pub fn ry(theta: impl Into<Param>, q: usize) -> Self {
        Self::fixed(GateKind::RY, vec![q], vec![theta.into()])
    }
    pub fn rz(theta: impl Into<Param>, q: usize) -> Self {
        Self::fixed(GateKind::RZ, vec![q], vec![theta.into()])
    }
    pub fn p(theta: impl Into<Param>, q: usize) -> Self {
        Self::fixed(GateKind::P, vec![q], vec![theta.into()])
    }
    pub fn u(theta: f64, phi: f64, lambda: f64, q: usize) -> Self {
        Self::fixed(GateKind::U, vec![q], vec![theta.into(), phi.into(), lambda.into()])
    }
    pub fn cx(control: usize, target: usize) -> Self {
        Self::fixed(GateKind::CX, vec![control, target], vec![])
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Self::fixed(GateKind::CZ, vec![a, b], vec![])
    }
    pub fn cp(theta: impl Into<Param>, control: usize, target: usize) -> Self {
        Self::fixed(GateKind::CP, vec![control, target], vec![theta.into()])
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Self::fixed(GateKind::Swap, vec![a, b], vec![])
    }
    pub fn rxx(theta: impl Into<Param>, a: usize, b: usize) -> Self {
        Self::fixed(GateKind::RXX, vec![a, b], vec![theta.into()])
    }
    pub fn ecr(a: usize, b: usize) -> Self {
        Self::fixed(GateKind::ECR, vec![a, b], vec![])
    }
    pub fn mcx(controls: &[usize], target: usize) -> Self {
        let mut qs = controls.to_vec();
        qs.push(target);
        Self::fixed(GateKind::Mcx(controls.len()), qs, vec![])
    }
    pub fn mcz(controls: &[usize], target: usize) -> Self {
        let mut qs = controls.to_vec();
        qs.push(target);
        Self::fixed(GateKind::Mcz(controls.len()), qs, vec![])
    }
    pub fn mcp(theta: impl Into<Param>, controls: &[usize], target: usize) -> Self {
        let mut qs = controls.to_vec();
        qs.push(target);
        Self::fixed(GateKind::Mcp(controls.len()), qs, vec![theta.into()])
    }
    pub fn block(block: Arc<Block>, qubits: Vec<usize>) -> Self {
        Self::fixed(GateKind::Block(block), qubits, vec![])
    }
    pub fn barrier(qubits: Vec<usize>) -> Self {
        Self::fixed(GateKind::Barrier, qubits, vec![])
    }

    /// Bound parameter values, or the first unbound symbol.
    pub fn values(&self) -> Result<Vec<f64>, CircuitError> {
        self.params
            .iter()
            .map(|p| match p {
                Param::Value(v) => Ok(*v),
                Param::Symbol(s) => Err(CircuitError::UnboundParam(s.clone())),
            })
            .collect()
    }

    /// The single bound angle of a one-parameter gate.
    pub fn angle(&self) -> Option<f64> {
        match self.params.as_slice() {
            [Param::Value(v)] => Some(*v),
            _ => None,
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2 && !matches!(self.kind, GateKind::Barrier)
    }

    /// Same gate relabelled through `map` (local wire -> global wire).
    pub fn remapped(&self, map: &[usize]) -> Gate {
        Gate {
            kind: self.kind.clone(),
            qubits: self.qubits.iter().map(|&q| map[q]).collect(),
            params: self.params.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Alg,
    Indep,
    #[serde(rename = "nativegates")]
    Native,
    Mapped,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Alg, Level::Indep, Level::Native, Level::Mapped];

    /// Token used in file names, headers and directory names.
    pub fn as_str(&self) -> &'static str {
        match self {
            Level::Alg => "alg",
            Level::Indep => "indep",
            Level::Native => "nativegates",
            Level::Mapped => "mapped",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "alg" | "algorithmic" => Ok(Level::Alg),
            "indep" | "target-independent" => Ok(Level::Indep),
            "nativegates" | "native" => Ok(Level::Native),
            "mapped" => Ok(Level::Mapped),
            other => Err(format!("unknown level `{other}`")),
        }
    }
}

/// An immutable quantum circuit plus the metadata the pipeline attaches to it.
///
/// For mapped circuits `num_qubits` is the device width; `logical_qubits`
/// keeps the benchmark width and the layouts are permutations of
/// `0..num_qubits` (entries past `logical_qubits` place the idle wires).
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    name: String,
    num_qubits: usize,
    logical_qubits: usize,
    gates: Vec<Gate>,
    level: Level,
    gateset: Option<GateSetKind>,
    device: Option<String>,
    initial_layout: Option<Vec<usize>>,
    final_layout: Option<Vec<usize>>,
    seed: Option<u64>,
    opt_level: u8,
    info: BTreeMap<String, String>,
}

impl Circuit {
    /// Algorithmic-level circuit from an already checked gate list.
    pub fn from_gates(name: impl Into<String>, num_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut b = CircuitBuilder::new(name, num_qubits);
        for g in gates {
            b.push(g)?;
        }
        Ok(b.build())
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }
    pub fn logical_qubits(&self) -> usize {
        self.logical_qubits
    }
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }
    pub fn level(&self) -> Level {
        self.level
    }
    pub fn gateset(&self) -> Option<GateSetKind> {
        self.gateset
    }
    pub fn device(&self) -> Option<&str> {
        self.device.as_deref()
    }
    pub fn initial_layout(&self) -> Option<&[usize]> {
        self.initial_layout.as_deref()
    }
    pub fn final_layout(&self) -> Option<&[usize]> {
        self.final_layout.as_deref()
    }
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
    pub fn opt_level(&self) -> u8 {
        self.opt_level
    }
    pub fn info(&self) -> &BTreeMap<String, String> {
        &self.info
    }
    pub fn len(&self) -> usize {
        self.gates.len()
    }
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Builder pre-filled with this circuit's metadata and no gates.
    pub fn to_builder(&self) -> CircuitBuilder {
        CircuitBuilder { circuit: Circuit { gates: Vec::new(), ..self.clone() } }
    }

    /// Copy of the metadata with a replacement gate list. Gates are not
    /// rechecked; passes that call this only emit well-formed gates.
    pub(crate) fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit { gates, ..self.clone() }
    }

    /// Same gates on a register of `n ≥ num_qubits` wires.
    pub fn widened(&self, n: usize) -> Circuit {
        Circuit { num_qubits: n.max(self.num_qubits), ..self.clone() }
    }

    pub(crate) fn set_level(&mut self, level: Level) {
        self.level = level;
    }
    pub(crate) fn set_gateset(&mut self, gs: Option<GateSetKind>) {
        self.gateset = gs;
    }
    pub(crate) fn set_opt_level(&mut self, opt: u8) {
        self.opt_level = opt;
    }
    pub(crate) fn set_mapping(&mut self, device: &str, initial: Vec<usize>, fin: Vec<usize>) {
        self.device = Some(device.to_string());
        self.initial_layout = Some(initial);
        self.final_layout = Some(fin);
    }
    pub(crate) fn set_seed(&mut self, seed: Option<u64>) {
        self.seed = seed;
    }
    pub(crate) fn set_info(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.info.insert(key.into(), value.into());
    }

    /// Symbol names in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for g in &self.gates {
            for p in &g.params {
                if let Param::Symbol(s) = p {
                    if !out.contains(s) {
                        out.push(s.clone());
                    }
                }
            }
        }
        out
    }

    pub fn is_bound(&self) -> bool {
        self.gates.iter().all(|g| g.params.iter().all(|p| matches!(p, Param::Value(_))))
    }

    /// Gate kind histogram (barriers excluded) and depth.
    pub fn count_ops(&self) -> OpCounts {
        let mut counts = BTreeMap::new();
        for g in &self.gates {
            if g.kind == GateKind::Barrier {
                continue;
            }
            *counts.entry(g.kind.name()).or_insert(0) += 1;
        }
        OpCounts { counts, depth: self.depth() }
    }

    /// Longest chain of gates that pairwise share a qubit.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for g in &self.gates {
            if g.kind == GateKind::Barrier {
                continue;
            }
            let d = g.qubits.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for &q in &g.qubits {
                level[q] = d;
            }
            depth = depth.max(d);
        }
        depth
    }

    /// Number of gates acting on exactly two qubits.
    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Checks the structural and level invariants. Mapped circuits are checked
    /// against the named builtin device when it is known.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let device = self.device.as_deref().and_then(|d| crate::mapper::Device::builtin(d).ok());
        self.validate_on(device.as_ref())
    }

    /// As [`Circuit::validate`], with an explicit device for the edge check.
    pub fn validate_on(&self, device: Option<&crate::mapper::Device>) -> Result<(), CircuitError> {
        let invalid = |reason: String| CircuitError::InvalidLevel { level: self.level, reason };
        if self.num_qubits == 0 {
            return Err(invalid("circuit has no qubits".into()));
        }
        for g in &self.gates {
            check_gate(g, self.num_qubits)?;
        }
        match self.level {
            Level::Alg | Level::Indep => {}
            Level::Native | Level::Mapped => {
                let gs = self.gateset.ok_or_else(|| invalid("no native gate-set recorded".into()))?.gateset();
                for g in &self.gates {
                    if !gs.accepts(g) {
                        return Err(invalid(format!(
                            "gate {} on {:?} is not native to {}",
                            g.kind,
                            g.qubits,
                            gs.kind()
                        )));
                    }
                }
            }
        }
        if self.level != Level::Mapped {
            return Ok(());
        }
        let dev_name = self.device.as_deref().ok_or_else(|| invalid("no device recorded".into()))?;
        for layout in [&self.initial_layout, &self.final_layout] {
            let layout = layout.as_deref().ok_or_else(|| invalid("layout missing".into()))?;
            if !is_permutation(layout, self.num_qubits) {
                return Err(invalid(format!("layout {layout:?} is not a permutation")));
            }
        }
        if self.logical_qubits > self.num_qubits {
            return Err(invalid("more logical than physical qubits".into()));
        }
        if let Some(dev) = device {
            if dev.name() != dev_name {
                return Err(invalid(format!("device {} does not match {}", dev.name(), dev_name)));
            }
            if dev.num_qubits() != self.num_qubits {
                return Err(invalid("register width differs from device size".into()));
            }
            for g in &self.gates {
                if g.is_two_qubit() && !dev.has_edge(g.qubits[0], g.qubits[1]) {
                    return Err(invalid(format!("{} on {:?} is off the coupling map", g.kind, g.qubits)));
                }
                if g.qubits.len() > 2 && g.kind != GateKind::Barrier {
                    return Err(invalid(format!("{} acts on more than two qubits", g.kind)));
                }
            }
        }
        Ok(())
    }
}

fn check_gate(g: &Gate, num_qubits: usize) -> Result<(), CircuitError> {
    for &q in &g.qubits {
        if q >= num_qubits {
            return Err(CircuitError::IndexOutOfRange { qubit: q, num_qubits });
        }
    }
    Gate::new(g.kind.clone(), g.qubits.clone(), g.params.clone()).map(|_| ())
}

pub(crate) fn is_permutation(layout: &[usize], n: usize) -> bool {
    if layout.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in layout {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Gate histogram keyed by lowercase gate name, plus circuit depth.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub counts: BTreeMap<String, usize>,
    pub depth: usize,
}

impl OpCounts {
    pub fn get(&self, name: &str) -> usize {
        self.counts.get(name).copied().unwrap_or(0)
    }
}

/// Incremental construction of a [`Circuit`]; every appended gate is checked
/// against the register width.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    circuit: Circuit,
}

impl CircuitBuilder {
    pub fn new(name: impl Into<String>, num_qubits: usize) -> Self {
        CircuitBuilder {
            circuit: Circuit {
                name: name.into(),
                num_qubits,
                logical_qubits: num_qubits,
                gates: Vec::new(),
                level: Level::Alg,
                gateset: None,
                device: None,
                initial_layout: None,
                final_layout: None,
                seed: None,
                opt_level: 0,
                info: BTreeMap::new(),
            },
        }
    }

    /// Appends a gate, consuming and returning the builder for chaining.
    pub fn append(mut self, gate: Gate) -> Result<Self, CircuitError> {
        self.push(gate)?;
        Ok(self)
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self, CircuitError> {
        check_gate(&gate, self.circuit.num_qubits)?;
        self.circuit.gates.push(gate);
        Ok(self)
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<&mut Self, CircuitError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    pub fn level(mut self, level: Level) -> Self {
        self.circuit.level = level;
        self
    }
    pub fn gateset(mut self, gs: GateSetKind) -> Self {
        self.circuit.gateset = Some(gs);
        self
    }
    pub fn device(mut self, name: impl Into<String>) -> Self {
        self.circuit.device = Some(name.into());
        self
    }
    pub fn layouts(mut self, initial: Vec<usize>, fin: Vec<usize>) -> Self {
        self.circuit.initial_layout = Some(initial);
        self.circuit.final_layout = Some(fin);
        self
    }
    pub fn logical_qubits(mut self, n: usize) -> Self {
        self.circuit.logical_qubits = n;
        self
    }
    pub fn seed(mut self, seed: u64) -> Self {
        self.circuit.seed = Some(seed);
        self
    }
    pub fn opt_level(mut self, opt: u8) -> Self {
        self.circuit.opt_level = opt;
        self
    }
    pub fn info(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.circuit.info.insert(key.into(), value.into());
        self
    }
    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.circuit.name = name.into();
        self
    }

    pub fn build(self) -> Circuit {
        self.circuit
    }
}
