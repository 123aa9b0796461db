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

//! Lowering to device native gate-sets.
//!
//! Four gate-sets ship with the toolkit:
//!
//! | name      | single-qubit               | two-qubit |
//! |-----------|----------------------------|-----------|
//! | `ibm`     | `id`, `x`, `sx`, `rz`      | `cx`      |
//! | `rigetti` | `rx(±π/2, π)`, `rz`        | `cz`      |
//! | `ionq`    | `rx`, `ry`, `rz`           | `rxx`     |
//! | `oqc`     | `rz`, `sx`, `x`            | `ecr`     |
//!
//! Every rule used here is checked against brute-force matrix products by
//! [`certify::certify_templates`].

pub mod certify;
mod euler;
mod lower;
pub mod mc;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{angles_equal, canonical};
use crate::circuit::{Circuit, CircuitError, Gate, GateKind, Level};

pub use euler::{zyz_decompose, Zyz};
pub use lower::{
    cx_to_native, lower_1q, lower_2q, lower_gate, lower_mc, resynthesize_1q, synthesize_1q, two_qubit_to_cx,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LoweringError {
    #[error("{gate} cannot be realized in gate-set {gateset}")]
    NonUniversalSet { gate: String, gateset: GateSetKind },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateSetKind {
    Ibm,
    Rigetti,
    Ionq,
    Oqc,
}

impl GateSetKind {
    pub const ALL: [GateSetKind; 4] = [GateSetKind::Ibm, GateSetKind::Rigetti, GateSetKind::Ionq, GateSetKind::Oqc];

    pub fn as_str(&self) -> &'static str {
        match self {
            GateSetKind::Ibm => "ibm",
            GateSetKind::Rigetti => "rigetti",
            GateSetKind::Ionq => "ionq",
            GateSetKind::Oqc => "oqc",
        }
    }

    pub fn gateset(&self) -> GateSet {
        use GateKind::*;
        let (one, two) = match self {
            GateSetKind::Ibm => (vec![I, X, SX, RZ], vec![CX]),
            GateSetKind::Rigetti => (vec![RX, RZ], vec![CZ]),
            GateSetKind::Ionq => (vec![RX, RY, RZ], vec![RXX]),
            GateSetKind::Oqc => (vec![RZ, SX, X], vec![ECR]),
        };
        GateSet { kind: *self, one_qubit: one, two_qubit: two }
    }
}

impl fmt::Display for GateSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GateSetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateSetKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown gate-set `{s}`"))
    }
}

/// A native basis: the gate kinds a device executes directly.
#[derive(Clone, Debug, PartialEq)]
pub struct GateSet {
    kind: GateSetKind,
    one_qubit: Vec<GateKind>,
    two_qubit: Vec<GateKind>,
}

/// Rotation angles Rigetti's `rx` may take.
pub const RIGETTI_RX_ANGLES: [f64; 3] = [PI / 2.0, -PI / 2.0, PI];

impl GateSet {
    pub fn kind(&self) -> GateSetKind {
        self.kind
    }
    pub fn one_qubit(&self) -> &[GateKind] {
        &self.one_qubit
    }
    pub fn two_qubit(&self) -> &[GateKind] {
        &self.two_qubit
    }

    /// The (single) native entangling kind.
    pub fn entangler(&self) -> &GateKind {
        &self.two_qubit[0]
    }

    pub fn contains_kind(&self, kind: &GateKind) -> bool {
        self.one_qubit.contains(kind) || self.two_qubit.contains(kind)
    }

    /// Whether the gate may appear in a circuit lowered to this set.
    pub fn accepts(&self, gate: &Gate) -> bool {
        if gate.kind.is_directive() {
            return true;
        }
        if !self.contains_kind(&gate.kind) {
            return false;
        }
        if self.kind == GateSetKind::Rigetti && gate.kind == GateKind::RX {
            return match gate.angle() {
                Some(a) => RIGETTI_RX_ANGLES.iter().any(|&r| angles_equal(canonical(a), r)),
                None => false,
            };
        }
        gate.params.iter().all(|p| p.value().is_some())
    }
}

/// Lowers a bound circuit to `gateset`, then simplifies according to
/// `opt_level`: 0 lowers only, 1 adds one simplification sweep, 2 simplifies
/// to a fixpoint, 3 additionally re-synthesizes single-qubit runs.
pub fn to_native(circuit: &Circuit, gateset: GateSetKind, opt_level: u8) -> Result<Circuit, LoweringError> {
    if let Some(s) = circuit.symbols().first() {
        return Err(CircuitError::UnboundParam(s.clone()).into());
    }
    let flat = crate::passes::expand(circuit);
    let gs = gateset.gateset();
    let mut gates = Vec::with_capacity(flat.len() * 2);
    for g in flat.gates() {
        gates.extend(lower_gate(g, &gs)?);
    }
    let mut out = circuit.with_gates(gates);
    out.set_level(Level::Native);
    out.set_gateset(Some(gateset));
    out.set_opt_level(opt_level);
    optimize(&out, &gs, opt_level)
}

/// Post-lowering clean-up shared by the native and mapped levels.
pub(crate) fn optimize(circuit: &Circuit, gs: &GateSet, opt_level: u8) -> Result<Circuit, LoweringError> {
    let simplify = |c: &Circuit| crate::passes::simplify(c).map_err(LoweringError::from);
    Ok(match opt_level {
        0 => circuit.clone(),
        1 => simplify(circuit)?,
        2 => fixpoint(circuit, simplify)?,
        _ => {
            let c = fixpoint(circuit, simplify)?;
            let c = resynthesize_1q(&c, gs)?;
            fixpoint(&c, simplify)?
        }
    })
}

pub(crate) fn fixpoint<F>(circuit: &Circuit, pass: F) -> Result<Circuit, LoweringError>
where
    F: Fn(&Circuit) -> Result<Circuit, LoweringError>,
{
    let mut cur = pass(circuit)?;
    // Passes never grow a circuit, so this terminates.
    loop {
        let next = pass(&cur)?;
        if next.gates() == cur.gates() {
            return Ok(next);
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ibm_basis() {
        let gs = GateSetKind::Ibm.gateset();
        for k in [GateKind::I, GateKind::X, GateKind::SX, GateKind::RZ, GateKind::CX] {
            assert!(gs.contains_kind(&k));
        }
        assert!(!gs.contains_kind(&GateKind::RY));
    }

    #[test]
    fn rigetti_rx_restriction() {
        let gs = GateSetKind::Rigetti.gateset();
        assert!(gs.accepts(&Gate::rx(PI / 2.0, 0)));
        assert!(gs.accepts(&Gate::rx(-PI, 0)));
        assert!(!gs.accepts(&Gate::rx(0.3, 0)));
    }

    #[test]
    fn parse_names() {
        for k in GateSetKind::ALL {
            assert_eq!(k.as_str().parse::<GateSetKind>().unwrap(), k);
        }
        assert!("google".parse::<GateSetKind>().is_err());
    }
}
