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

//! Brute-force certification of every lowering rule.
//!
//! Each template is expanded on sample angles, multiplied out and compared to
//! the defining matrix of the original gate up to global phase. The output
//! must also be accepted by the target gate-set.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::circuit::{Gate, GateKind, Param};
use crate::matrix::{embed, gate_matrix, sequence_matrix};

use super::{lower_gate, GateSetKind};

pub const CERTIFY_TOL: f64 = 1e-9;

/// Angles that hit every branch of the Euler templates.
const SAMPLE_ANGLES: [f64; 8] = [0.0, FRAC_PI_2, -FRAC_PI_2, PI, -PI, 0.3, -2.1, 2.9];

#[derive(Clone, Debug, PartialEq)]
pub struct TemplateCheck {
    pub gate: String,
    pub gateset: GateSetKind,
    pub params: Vec<f64>,
    pub deviation: f64,
    pub native: bool,
}

impl TemplateCheck {
    pub fn passed(&self) -> bool {
        self.native && self.deviation < CERTIFY_TOL
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CertificationReport {
    pub checks: Vec<TemplateCheck>,
}

impl CertificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(TemplateCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TemplateCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }
}

impl fmt::Display for CertificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        write!(
            f,
            "{} templates checked, {} failed, max deviation {:.3e}",
            self.checks.len(),
            failed,
            self.max_deviation()
        )?;
        for c in self.failures() {
            write!(
                f,
                "\n  {} on {} {:?}: deviation {:.3e} native {}",
                c.gate, c.gateset, c.params, c.deviation, c.native
            )?;
        }
        Ok(())
    }
}

fn sample_gates() -> Vec<Gate> {
    use GateKind::*;
    let mut out = Vec::new();
    for k in [I, H, X, Y, Z, S, Sdg, T, Tdg, SX] {
        out.push(Gate::one(k, 0));
    }
    for a in SAMPLE_ANGLES {
        for g in [Gate::rx(a, 0), Gate::ry(a, 0), Gate::rz(a, 0), Gate::p(a, 0)] {
            out.push(g);
        }
        out.push(Gate::cp(a, 0, 1));
        out.push(Gate::cp(a, 1, 0));
        out.push(Gate::rxx(a, 0, 1));
    }
    out.push(Gate::u(0.4, -1.2, 2.2, 0));
    out.push(Gate::u(PI, 0.5, 0.1, 0));
    for (a, b) in [(0, 1), (1, 0)] {
        out.push(Gate::cx(a, b));
        out.push(Gate::cz(a, b));
        out.push(Gate::swap(a, b));
        out.push(Gate::ecr(a, b));
    }
    for k in 1..=4 {
        let controls: Vec<usize> = (0..k).collect();
        out.push(Gate::mcx(&controls, k));
        out.push(Gate::mcz(&controls, k));
        out.push(Gate::mcp(0.7, &controls, k));
        out.push(Gate::mcp(-PI, &controls, k));
    }
    out
}

fn reference(gate: &Gate, n: usize) -> crate::matrix::UnitaryMatrix {
    let local = gate_matrix(&gate.kind, &gate.params).expect("sample gates are bound");
    embed(&local, &gate.qubits, n)
}

/// Runs every template on every shipped gate-set.
pub fn certify_templates() -> CertificationReport {
    let mut report = CertificationReport::default();
    for gs_kind in GateSetKind::ALL {
        let gs = gs_kind.gateset();
        for gate in sample_gates() {
            let n = gate.qubits.iter().max().map_or(1, |m| m + 1);
            let params: Vec<f64> = gate.params.iter().filter_map(Param::value).collect();
            let (deviation, native) = match lower_gate(&gate, &gs) {
                Ok(seq) => {
                    let dev = sequence_matrix(n, &seq)
                        .map(|m| reference(&gate, n).phase_distance(&m))
                        .unwrap_or(f64::INFINITY);
                    (dev, seq.iter().all(|g| gs.accepts(g)))
                }
                Err(_) => (f64::INFINITY, false),
            };
            report.checks.push(TemplateCheck { gate: gate.kind.name(), gateset: gs_kind, params, deviation, native });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_templates_certify() {
        let r = certify_templates();
        assert!(r.all_passed(), "{r}");
    }
}
