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

mod common;

use std::io::{BufRead, BufReader};
use std::path::Path;
use std::process::{Command, Output, Stdio};

use common::ghz_config;
use qbench_core::catalog::Catalog;
use qbench_core::circuit::Level;
use qbench_core::mapper::Device;
use qbench_core::qasm::parse;

fn qbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbench")).args(args).env_remove("RUST_LOG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn generate_indep() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qbench(&["generate", "--benchmark", "ghz", "--qubits", "3", "--level", "indep", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let path = Path::new(text.lines().next().unwrap());
    assert_eq!(path.file_name().unwrap(), "ghz_indep_3.qasm");
    assert!(text.contains("counts: cx=2 h=1"), "{text}");
    let c = parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(c.level(), Level::Indep);
}

#[test]
fn generate_mapped_twolocal() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qbench(&[
        "generate",
        "--benchmark",
        "twolocal",
        "--qubits",
        "3",
        "--level",
        "mapped",
        "--gateset",
        "ibm",
        "--device",
        "ibmq_manila",
        "--opt",
        "2",
        "--out",
        out,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let path = dir.path().join("twolocal_mapped_ibm_ibmq_manila_opt2_3.qasm");
    assert_eq!(stdout(&o).lines().next().unwrap(), path.to_str().unwrap());
    let c = parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    c.validate_on(Some(&Device::builtin("ibmq_manila").unwrap())).unwrap();
}

#[test]
fn generate_alg_level_is_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qbench(&["generate", "--benchmark", "vqe", "--qubits", "4", "--level", "alg", "--seed", "3", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    let c = parse(&std::fs::read_to_string(dir.path().join("vqe_alg_4.qasm")).unwrap()).unwrap();
    assert!(c.is_bound());
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let cases: &[&[&str]] = &[
        &["generate", "--benchmark", "ghz", "--qubits", "3", "--level", "mapped", "--gateset", "ibm", "--out", out],
        &[
            "generate",
            "--benchmark",
            "ghz",
            "--qubits",
            "3",
            "--level",
            "indep",
            "--device",
            "ibmq_manila",
            "--out",
            out,
        ],
        &["generate", "--benchmark", "ghz", "--qubits", "3", "--level", "nativegates", "--out", out],
        &["generate", "--benchmark", "ghz", "--qubits", "3", "--level", "indep", "--opt", "2", "--out", out],
        &["generate", "--benchmark", "nosuch", "--qubits", "3", "--level", "indep"],
        &["generate", "--benchmark", "ghz", "--level", "indep"],
        &["generate", "--benchmark", "ghz", "--qubits", "1", "--level", "indep", "--out", out],
        &["frobnicate"],
    ];
    for args in cases {
        let o = qbench(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn runtime_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    // ghz on 6 qubits does not fit the 5-qubit device.
    let o = qbench(&[
        "generate",
        "--benchmark",
        "ghz",
        "--qubits",
        "6",
        "--level",
        "mapped",
        "--gateset",
        "ibm",
        "--device",
        "ibmq_manila",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn environment_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qbench"))
        .arg("generate")
        .env("QBENCH_BENCHMARK", "qft")
        .env("QBENCH_QUBITS", "4")
        .env("QBENCH_LEVEL", "nativegates")
        .env("QBENCH_GATESET", "rigetti")
        .env("QBENCH_OPT", "3")
        .env("QBENCH_OUT", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("qft_nativegates_rigetti_opt3_4.qasm").is_file());
}

#[test]
fn grid_then_serve() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("grid.json");
    std::fs::write(&cfg_path, serde_json::to_string_pretty(&ghz_config()).unwrap()).unwrap();
    let root = dir.path().join("catalog");

    // Serving before the grid exists fails at startup.
    let o = qbench(&["serve", "--dir", root.to_str().unwrap(), "--port", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("manifest"), "{}", stderr(&o));

    let o = qbench(&["grid", "--config", cfg_path.to_str().unwrap(), "--out", root.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("16 files"), "{}", stdout(&o));
    let cat = Catalog::load(&root).unwrap();
    assert_eq!(cat.len(), 16);

    // A taken port is a startup failure too.
    let taken = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let port = taken.local_addr().unwrap().port().to_string();
    let o = qbench(&["serve", "--dir", root.to_str().unwrap(), "--port", &port]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot listen"), "{}", stderr(&o));
    drop(taken);

    let mut child = Command::new(env!("CARGO_BIN_EXE_qbench"))
        .args(["serve", "--dir", root.to_str().unwrap(), "--port", "0"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
    let base = line.trim().strip_prefix("listening on ").unwrap().to_string();
    let runtime = tokio::runtime::Runtime::new().unwrap();
    let page: serde_json::Value =
        runtime.block_on(async { reqwest::get(format!("{base}/api/benchmarks")).await.unwrap().json().await.unwrap() });
    child.kill().unwrap();
    child.wait().unwrap();
    assert_eq!(page["total"], 16);
    assert_eq!(page["records"], serde_json::to_value(cat.records()).unwrap());
}

#[test]
fn grid_rejects_a_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("grid.json");
    let mut cfg = ghz_config();
    cfg.qubits.max = 9;
    std::fs::write(&cfg_path, serde_json::to_string(&cfg).unwrap()).unwrap();
    let o = qbench(&["grid", "--config", cfg_path.to_str().unwrap(), "--out", dir.path().join("x").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("largest device"), "{}", stderr(&o));
}

#[test]
fn certify_passes() {
    let o = qbench(&["certify"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"), "{}", stdout(&o));
}
