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

//! End-to-end compilation of a benchmark to any of the four levels.

use crate::algorithms::{generate, BenchmarkSpec};
use crate::circuit::{Circuit, Level};
use crate::mapper::{map, Device, LayoutStrategy};
use crate::native::{to_native, GateSetKind};
use crate::passes::to_indep;
use crate::Error;

/// Where to stop compiling, and the target-dependent settings.
#[derive(Clone, Debug, PartialEq)]
pub struct Target {
    pub level: Level,
    pub gateset: Option<GateSetKind>,
    pub device: Option<Device>,
    pub opt_level: u8,
    pub layout: LayoutStrategy,
}

impl Target {
    pub fn alg() -> Self {
        Target { level: Level::Alg, gateset: None, device: None, opt_level: 0, layout: LayoutStrategy::Trivial }
    }

    pub fn indep() -> Self {
        Target { level: Level::Indep, ..Target::alg() }
    }

    pub fn native(gateset: GateSetKind, opt_level: u8) -> Self {
        Target { level: Level::Native, gateset: Some(gateset), opt_level, ..Target::alg() }
    }

    pub fn mapped(gateset: GateSetKind, device: Device, opt_level: u8) -> Self {
        Target { level: Level::Mapped, gateset: Some(gateset), device: Some(device), opt_level, ..Target::alg() }
    }

    pub fn with_layout(mut self, layout: LayoutStrategy) -> Self {
        self.layout = layout;
        self
    }

    /// Checks that the target-dependent settings match the level.
    pub fn check(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::InvalidTarget(m.to_string()));
        match self.level {
            Level::Alg | Level::Indep if self.gateset.is_some() => bad("gate-set given for a target-independent level"),
            Level::Alg | Level::Indep | Level::Native if self.device.is_some() => {
                bad("device given without the mapped level")
            }
            Level::Native | Level::Mapped if self.gateset.is_none() => bad("native levels need a gate-set"),
            Level::Mapped if self.device.is_none() => bad("the mapped level needs a device"),
            _ if self.opt_level > 3 => bad("optimization level must be 0..=3"),
            _ => Ok(()),
        }
    }
}

/// Lowers an algorithmic-level circuit to `target`.
pub fn compile_circuit(alg: &Circuit, seed: u64, target: &Target) -> Result<Circuit, Error> {
    target.check()?;
    if target.level == Level::Alg {
        return Ok(alg.clone());
    }
    let indep = to_indep(alg, seed)?;
    if target.level == Level::Indep {
        return Ok(indep);
    }
    let gs = target.gateset.expect("checked above");
    let native = to_native(&indep, gs, target.opt_level)?;
    if target.level == Level::Native {
        return Ok(native);
    }
    let device = target.device.as_ref().expect("checked above");
    Ok(map(&native, device, target.layout, target.opt_level)?)
}

/// Generates `spec` and compiles it to `target`.
pub fn compile(spec: &BenchmarkSpec, target: &Target) -> Result<Circuit, Error> {
    let alg = generate(spec)?;
    compile_circuit(&alg, spec.seed, target)
}

/// Every level of one benchmark: alg, indep, native, mapped.
pub fn all_levels(
    spec: &BenchmarkSpec,
    gateset: GateSetKind,
    device: &Device,
    opt_level: u8,
) -> Result<[Circuit; 4], Error> {
    let alg = generate(spec)?;
    let indep = to_indep(&alg, spec.seed)?;
    let native = to_native(&indep, gateset, opt_level)?;
    let mapped = map(&native, device, LayoutStrategy::Trivial, opt_level)?;
    Ok([alg, indep, native, mapped])
}
