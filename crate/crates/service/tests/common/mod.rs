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

#![allow(dead_code)]

use qbench_core::algorithms::Algorithm;
use qbench_core::catalog::{generate_grid, Catalog, GridConfig, QubitRange};
use qbench_core::circuit::Level;
use qbench_core::native::GateSetKind;
use qbench_service::{router, ApiConfig};

pub fn ghz_config() -> GridConfig {
    GridConfig {
        algorithms: vec![Algorithm::Ghz],
        qubits: QubitRange { min: 2, max: 5, step: 1 },
        levels: Level::ALL.to_vec(),
        gatesets: vec![GateSetKind::Ibm],
        devices: vec!["ibmq_manila".into()],
        opt_levels: vec![2],
        seed: 0,
    }
}

pub fn grid(cfg: &GridConfig) -> (tempfile::TempDir, Catalog) {
    let dir = tempfile::tempdir().unwrap();
    let (cat, report) = generate_grid(cfg, dir.path()).unwrap();
    assert_eq!(report.failed, 0);
    (dir, cat)
}

/// Starts the API on an ephemeral port; returns its base URL.
pub async fn spawn(catalog: Catalog, config: ApiConfig) -> String {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move {
        axum::serve(listener, router(catalog, config)).await.unwrap();
    });
    format!("http://{addr}")
}
