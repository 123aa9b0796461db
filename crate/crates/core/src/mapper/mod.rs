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

//! Placement and routing onto a device coupling graph.
//!
//! Mapped circuits act on the full device register. Gate `i` of a mapped
//! circuit uses physical wires; `initial_layout[l]` is where logical qubit `l`
//! starts and `final_layout[l]` is where it ends up after routing SWAPs, so
//! that `U_mapped = P_final · U · P_initial⁻¹`.

mod device;
mod layout;
mod optimize;
mod route;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError};
use crate::native::LoweringError;

pub use device::{Device, DeviceSpec, UNREACHABLE};
pub use layout::{initial_layout, LayoutStrategy};
pub use optimize::{cancel_commuting_cx, optimize_mapped};
pub use route::route;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MapError {
    #[error("circuit needs {needed} qubits but {device} has {available}")]
    DeviceTooSmall { device: String, needed: usize, available: usize },
    #[error("cannot route on {device}: {reason}")]
    RoutingImpossible { device: String, reason: String },
    #[error("unknown device `{0}`")]
    UnknownDevice(String),
    #[error("invalid device: {0}")]
    InvalidDevice(String),
    #[error("circuit is not at the native level")]
    NotNative,
    #[error(transparent)]
    Lowering(#[from] LoweringError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Places, routes and optimizes a native circuit.
pub fn map(circuit: &Circuit, device: &Device, strategy: LayoutStrategy, opt_level: u8) -> Result<Circuit, MapError> {
    let layout = initial_layout(circuit, device, strategy)?;
    let routed = route(circuit, device, &layout)?;
    optimize_mapped(&routed, opt_level)
}
