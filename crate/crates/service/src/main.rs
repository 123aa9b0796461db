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

use std::fs;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use qbench_core::algorithms::{generate, Algorithm, BenchmarkSpec};
use qbench_core::catalog::{generate_grid, Catalog, GridConfig};
use qbench_core::circuit::{Circuit, Level};
use qbench_core::mapper::{Device, LayoutStrategy};
use qbench_core::native::certify::certify_templates;
use qbench_core::native::GateSetKind;
use qbench_core::passes::bind_seeded;
use qbench_core::pipeline::{compile_circuit, Target};
use qbench_core::qasm::{emit, filename_for};
use qbench_service::{ApiConfig, DEFAULT_BUNDLE_CAP};

/// Cross-level quantum circuit benchmarks.
#[derive(Parser, Debug)]
#[command(name = "qbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate one benchmark file.
    Generate {
        #[arg(long, env = "QBENCH_BENCHMARK")]
        benchmark: Algorithm,
        #[arg(long, env = "QBENCH_QUBITS")]
        qubits: usize,
        #[arg(long, env = "QBENCH_LEVEL")]
        level: Level,
        #[arg(long, env = "QBENCH_GATESET")]
        gateset: Option<GateSetKind>,
        /// Built-in device name or a device JSON file.
        #[arg(long, env = "QBENCH_DEVICE")]
        device: Option<String>,
        /// Optimization level for the native and mapped levels [default: 1].
        #[arg(long, env = "QBENCH_OPT")]
        opt: Option<u8>,
        #[arg(long, env = "QBENCH_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "QBENCH_LAYOUT", default_value = "trivial")]
        layout: LayoutStrategy,
        /// Output directory.
        #[arg(long, env = "QBENCH_OUT", default_value = ".")]
        out: PathBuf,
    },
    /// Generate a whole catalog with its manifest.
    Grid {
        /// JSON grid description; the built-in desk-scale grid if absent.
        #[arg(long, env = "QBENCH_CONFIG")]
        config: Option<PathBuf>,
        #[arg(long, env = "QBENCH_OUT")]
        out: PathBuf,
    },
    /// Serve a generated catalog over HTTP.
    Serve {
        #[arg(long, env = "QBENCH_DIR")]
        dir: PathBuf,
        #[arg(long, env = "QBENCH_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "QBENCH_HOST", default_value = "127.0.0.1")]
        host: IpAddr,
        /// Directory with the web UI bundle, served at `/`.
        #[arg(long, env = "QBENCH_UI")]
        ui: Option<PathBuf>,
        #[arg(long, env = "QBENCH_BUNDLE_CAP", default_value_t = DEFAULT_BUNDLE_CAP)]
        bundle_cap: usize,
    },
    /// Check every lowering template against its matrix.
    Certify,
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn load_device(arg: &str) -> anyhow::Result<Device> {
    if arg.ends_with(".json") || Path::new(arg).is_file() {
        Ok(Device::load(arg)?)
    } else {
        Ok(Device::builtin(arg)?)
    }
}

fn build(alg: &Circuit, seed: u64, target: &Target) -> anyhow::Result<Circuit> {
    if target.level == Level::Alg {
        return Ok(bind_seeded(alg, seed));
    }
    Ok(compile_circuit(alg, seed, target)?)
}

#[allow(clippy::too_many_arguments)]
fn run_generate(
    benchmark: Algorithm,
    qubits: usize,
    level: Level,
    gateset: Option<GateSetKind>,
    device: Option<String>,
    opt: Option<u8>,
    seed: u64,
    layout: LayoutStrategy,
    out: PathBuf,
) -> Result<(), Failure> {
    let target_independent = matches!(level, Level::Alg | Level::Indep);
    if target_independent && opt.is_some() {
        return Err(Failure::Usage(format!("--opt needs the nativegates or mapped level, not {level}")));
    }
    if device.is_some() && level != Level::Mapped {
        return Err(Failure::Usage(format!("--device needs the mapped level, not {level}")));
    }
    let device = device.as_deref().map(load_device).transpose()?;
    let target = Target { level, gateset, device, opt_level: opt.unwrap_or(1), layout };
    target.check().map_err(|e| Failure::Usage(e.to_string()))?;

    let spec = BenchmarkSpec::new(benchmark, qubits).seed(seed);
    let alg = generate(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let circuit = build(&alg, seed, &target)?;
    let text = emit(&circuit).context("emitting OpenQASM")?;
    fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    let path = out.join(filename_for(&circuit));
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;

    let counts = circuit.count_ops();
    let ops: Vec<String> = counts.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!("{}", path.display());
    println!("counts: {}", ops.join(" "));
    println!("depth: {}", counts.depth);
    Ok(())
}

fn run_grid(config: Option<PathBuf>, out: PathBuf) -> Result<(), Failure> {
    let cfg = match config {
        Some(p) => GridConfig::load(&p).map_err(|e| Failure::Usage(e.to_string()))?,
        None => GridConfig::default(),
    };
    cfg.check().map_err(|e| Failure::Usage(e.to_string()))?;
    let (catalog, report) = generate_grid(&cfg, &out).map_err(anyhow::Error::from)?;
    println!(
        "{} files in {} ({} written, {} reused, {} failed)",
        catalog.len(),
        out.display(),
        report.written,
        report.reused,
        report.failed
    );
    Ok(())
}

fn run_serve(dir: PathBuf, host: IpAddr, port: u16, ui: Option<PathBuf>, bundle_cap: usize) -> Result<(), Failure> {
    let catalog = Catalog::load(&dir).with_context(|| format!("loading the catalog in {}", dir.display()))?;
    if let Some(ui) = &ui {
        if !ui.is_dir() {
            return Err(Failure::Runtime(anyhow::anyhow!("UI directory {} does not exist", ui.display())));
        }
    }
    let runtime = tokio::runtime::Runtime::new().context("starting the runtime")?;
    let addr = SocketAddr::new(host, port);
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await.with_context(|| format!("cannot listen on {addr}"))?;
        println!("listening on http://{}", listener.local_addr()?);
        std::io::stdout().flush()?;
        let config = ApiConfig { bundle_cap, static_dir: ui };
        qbench_service::serve(listener, catalog, config).await?;
        Ok::<_, anyhow::Error>(())
    })?;
    Ok(())
}

fn run_certify() -> Result<(), Failure> {
    let report = certify_templates();
    println!("{report}");
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Runtime(anyhow::anyhow!("{} templates failed", report.failures().count())))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("QBENCH_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Generate { benchmark, qubits, level, gateset, device, opt, seed, layout, out } => {
            run_generate(benchmark, qubits, level, gateset, device, opt, seed, layout, out)
        }
        Command::Grid { config, out } => run_grid(config, out),
        Command::Serve { dir, port, host, ui, bundle_cap } => run_serve(dir, host, port, ui, bundle_cap),
        Command::Certify => run_certify(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
