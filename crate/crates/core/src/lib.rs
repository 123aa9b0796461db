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

//! Cross-level quantum circuit benchmarks.
//!
//! Benchmarks are built at the algorithmic level and compiled through three
//! more levels: target-independent, native gates and mapped. A dense
//! simulator checks that every level implements the same unitary.
//!
//! ```
//! use qbench_core::algorithms::{Algorithm, BenchmarkSpec};
//! use qbench_core::native::GateSetKind;
//! use qbench_core::pipeline::{compile, Target};
//!
//! let spec = BenchmarkSpec::new(Algorithm::Ghz, 3);
//! let native = compile(&spec, &Target::native(GateSetKind::Ibm, 2)).unwrap();
//! assert_eq!(native.count_ops().get("cx"), 2);
//! ```

pub mod algorithms;
pub mod angle;
pub mod catalog;
pub mod circuit;
pub mod mapper;
pub mod matrix;
pub mod native;
pub mod passes;
pub mod pipeline;
pub mod qasm;
pub mod sim;

use thiserror::Error;

/// Any failure along the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Algorithm(#[from] algorithms::AlgoError),
    #[error(transparent)]
    Circuit(#[from] circuit::CircuitError),
    #[error(transparent)]
    Pass(#[from] passes::PassError),
    #[error(transparent)]
    Lowering(#[from] native::LoweringError),
    #[error(transparent)]
    Map(#[from] mapper::MapError),
    #[error(transparent)]
    Sim(#[from] sim::SimError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error(transparent)]
    Qasm(#[from] qasm::QasmError),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/algorithms.md")]
mod book_algorithms {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/levels.md")]
mod book_levels {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/gatesets.md")]
mod book_gatesets {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/mapping.md")]
mod book_mapping {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verification.md")]
mod book_verification {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/qasm.md")]
mod book_qasm {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/catalog.md")]
mod book_catalog {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/service.md")]
mod book_service {}
