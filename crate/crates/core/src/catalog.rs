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

//! Pre-generated benchmark grids: generation, the manifest index, filter
//! queries and zip bundles.
//!
//! A grid directory holds one file per grid point under
//! `<level>/<filename>.qasm`, plus `manifest.jsonl` with one JSON object per
//! line. Successful entries carry `"status": "ok"` and the record fields;
//! entries that failed to generate carry `"status": "failed"` and the
//! error text.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algorithms::{generate, Algorithm, BenchmarkSpec};
use crate::circuit::{Circuit, Level};
use crate::mapper::{map, Device, LayoutStrategy};
use crate::native::{to_native, GateSetKind};
use crate::passes::{bind_seeded, to_indep};
use crate::qasm::{emit, file_name, filename_for, parse, GENERATOR};

pub const MANIFEST: &str = "manifest.jsonl";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("invalid grid configuration: {0}")]
    Config(String),
    #[error("{path}:{line}: {message}")]
    Manifest { path: PathBuf, line: usize, message: String },
    #[error("no manifest in {0}")]
    MissingManifest(PathBuf),
    #[error("archive: {0}")]
    Zip(#[from] zip::result::ZipError),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CatalogError + '_ {
    move |source| CatalogError::Io { path: path.to_path_buf(), source }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitRange {
    pub min: usize,
    pub max: usize,
    #[serde(default = "one")]
    pub step: usize,
}

fn one() -> usize {
    1
}

impl QubitRange {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        (self.min..=self.max).step_by(self.step.max(1))
    }
}

/// Axes of a benchmark grid. Device entries are built-in names or paths to
/// JSON device files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub algorithms: Vec<Algorithm>,
    pub qubits: QubitRange,
    pub levels: Vec<Level>,
    #[serde(default)]
    pub gatesets: Vec<GateSetKind>,
    #[serde(default)]
    pub devices: Vec<String>,
    #[serde(default)]
    pub opt_levels: Vec<u8>,
    #[serde(default)]
    pub seed: u64,
}

impl Default for GridConfig {
    /// The desk-scale grid: 10 families, 2 to 16 qubits, every level, two
    /// gate-sets, two devices and opt levels 0 and 2.
    fn default() -> Self {
        use Algorithm::*;
        GridConfig {
            algorithms: vec![Ghz, Graphstate, Wstate, Dj, Qft, QpeExact, Ae, Qaoa, Vqe, Twolocal],
            qubits: QubitRange { min: 2, max: 16, step: 1 },
            levels: Level::ALL.to_vec(),
            gatesets: vec![GateSetKind::Ibm, GateSetKind::Rigetti],
            devices: vec!["heavyhex_127".into(), "grid_4x4".into()],
            opt_levels: vec![0, 2],
            seed: 0,
        }
    }
}

impl GridConfig {
    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        serde_json::from_str(text).map_err(|e| CatalogError::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let path = path.as_ref();
        Self::from_json(&fs::read_to_string(path).map_err(io_err(path))?)
    }

    fn load_devices(&self) -> Result<Vec<Device>, CatalogError> {
        self.devices
            .iter()
            .map(|d| {
                if d.ends_with(".json") { Device::load(d) } else { Device::builtin(d) }
                    .map_err(|e| CatalogError::Config(e.to_string()))
            })
            .collect()
    }

    /// Checks the axes and resolves the devices.
    pub fn check(&self) -> Result<Vec<Device>, CatalogError> {
        let bad = |m: String| Err(CatalogError::Config(m));
        if self.qubits.min < 2 {
            return bad(format!("qubit range must start at 2 or more, got {}", self.qubits.min));
        }
        if self.qubits.min > self.qubits.max || self.qubits.step == 0 {
            return bad(format!("empty qubit range {:?}", self.qubits));
        }
        let native = self.levels.iter().any(|l| matches!(l, Level::Native | Level::Mapped));
        if native && (self.gatesets.is_empty() || self.opt_levels.is_empty()) {
            return bad("native and mapped levels need gate-sets and opt levels".into());
        }
        if let Some(o) = self.opt_levels.iter().find(|&&o| o > 3) {
            return bad(format!("optimization level {o} is outside 0..=3"));
        }
        let devices = self.load_devices()?;
        if self.levels.contains(&Level::Mapped) {
            let largest = devices.iter().map(Device::num_qubits).max();
            match largest {
                None => return bad("the mapped level needs at least one device".into()),
                Some(big) if self.qubits.max > big => {
                    return bad(format!("{} qubits exceed the largest device ({big})", self.qubits.max))
                }
                _ => {}
            }
        }
        Ok(devices)
    }

    /// Feasible grid points as `(level, gateset, device index, opt)`, for one
    /// width.
    fn targets(&self, n: usize, devices: &[Device]) -> Vec<(Level, Option<GateSetKind>, Option<usize>, Option<u8>)> {
        let mut out = Vec::new();
        for &level in &self.levels {
            match level {
                Level::Alg | Level::Indep => out.push((level, None, None, None)),
                Level::Native => {
                    for &gs in &self.gatesets {
                        for &o in &self.opt_levels {
                            out.push((level, Some(gs), None, Some(o)));
                        }
                    }
                }
                Level::Mapped => {
                    for &gs in &self.gatesets {
                        for (d, dev) in devices.iter().enumerate() {
                            if dev.num_qubits() < n {
                                log::info!("skipping {n} qubits on {}: device too small", dev.name());
                                continue;
                            }
                            for &o in &self.opt_levels {
                                out.push((level, Some(gs), Some(d), Some(o)));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// One manifest entry: the header metadata of a stored circuit plus where it
/// lives and what it contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub benchmark: String,
    pub level: Level,
    /// Benchmark width; the register of a mapped file spans the device.
    pub num_qubits: usize,
    pub width: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gateset: Option<GateSetKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub device: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub opt_level: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub generator: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub initial_layout: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub final_layout: Option<Vec<usize>>,
    pub filename: String,
    pub path: String,
    pub counts: BTreeMap<String, usize>,
    pub depth: usize,
}

impl BenchmarkRecord {
    pub fn of(circuit: &Circuit) -> Self {
        let filename = filename_for(circuit);
        let ops = circuit.count_ops();
        let opt = matches!(circuit.level(), Level::Native | Level::Mapped).then_some(circuit.opt_level());
        BenchmarkRecord {
            benchmark: circuit.name().to_string(),
            level: circuit.level(),
            num_qubits: circuit.logical_qubits(),
            width: circuit.num_qubits(),
            gateset: circuit.gateset(),
            device: circuit.device().map(str::to_string),
            opt_level: opt,
            seed: circuit.seed(),
            generator: GENERATOR.to_string(),
            initial_layout: circuit.initial_layout().map(<[usize]>::to_vec),
            final_layout: circuit.final_layout().map(<[usize]>::to_vec),
            path: format!("{}/{}", circuit.level().as_str(), filename),
            filename,
            counts: ops.counts,
            depth: ops.depth,
        }
    }

    /// Sort key: name, width, level, gate-set, device, opt level.
    fn key(&self) -> (&str, usize, Level, Option<GateSetKind>, Option<&str>, Option<u8>) {
        (&self.benchmark, self.num_qubits, self.level, self.gateset, self.device.as_deref(), self.opt_level)
    }
}

/// A grid point that could not be produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub benchmark: String,
    pub level: Level,
    pub num_qubits: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gateset: Option<GateSetKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub device: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub opt_level: Option<u8>,
    pub filename: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
enum ManifestLine {
    Ok(BenchmarkRecord),
    Failed(FailureRecord),
}

/// Outcome of a grid run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridReport {
    pub written: usize,
    pub reused: usize,
    pub failed: usize,
}

/// An index of stored benchmarks rooted at a grid directory.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Catalog {
    root: PathBuf,
    records: Vec<BenchmarkRecord>,
    failures: Vec<FailureRecord>,
    by_name: BTreeMap<String, usize>,
}

/// Reads `path` back if it holds a valid file for `expected`.
fn reuse(path: &Path, expected: &str) -> Option<Circuit> {
    let text = fs::read_to_string(path).ok()?;
    let c = parse(&text).ok()?;
    (filename_for(&c) == expected && c.validate().is_ok()).then_some(c)
}

enum Outcome {
    Written(BenchmarkRecord),
    Reused(BenchmarkRecord),
    Failed(FailureRecord),
}

/// Everything for one `(algorithm, n)` pair; stages are built on first
/// use so reused files cost only a parse.
fn grid_point(
    cfg: &GridConfig,
    devices: &[Device],
    root: &Path,
    a: Algorithm,
    n: usize,
) -> Result<Vec<Outcome>, CatalogError> {
    let spec = BenchmarkSpec::new(a, n).seed(cfg.seed);
    let mut alg: Option<Result<Circuit, String>> = None;
    let mut indep: Option<Result<Circuit, String>> = None;
    let mut native: BTreeMap<(GateSetKind, u8), Result<Circuit, String>> = BTreeMap::new();
    let mut out = Vec::new();
    for (level, gs, dev, opt) in cfg.targets(n, devices) {
        let device = dev.map(|d| &devices[d]);
        let fname = file_name(a.as_str(), level, gs, device.map(Device::name), opt, n);
        let dir = root.join(level.as_str());
        let path = dir.join(&fname);
        if let Some(c) = reuse(&path, &fname) {
            out.push(Outcome::Reused(BenchmarkRecord::of(&c)));
            continue;
        }
        let alg_c = alg.get_or_insert_with(|| generate(&spec).map_err(|e| e.to_string())).clone();
        let built = alg_c.and_then(|alg_c| {
            if level == Level::Alg {
                return Ok(bind_seeded(&alg_c, spec.seed));
            }
            let ind = indep.get_or_insert_with(|| to_indep(&alg_c, spec.seed).map_err(|e| e.to_string())).clone()?;
            if level == Level::Indep {
                return Ok(ind);
            }
            let (gs, opt) = (gs.expect("native target"), opt.expect("native target"));
            let nat = native
                .entry((gs, opt))
                .or_insert_with(|| to_native(&ind, gs, opt).map_err(|e| e.to_string()))
                .clone()?;
            match device {
                None => Ok(nat),
                Some(d) => map(&nat, d, LayoutStrategy::Trivial, opt).map_err(|e| e.to_string()),
            }
        });
        let text = built.and_then(|c| emit(&c).map(|t| (c, t)).map_err(|e| e.to_string()));
        match text {
            Ok((c, t)) => {
                fs::create_dir_all(&dir).map_err(io_err(&dir))?;
                let tmp = path.with_extension("qasm.tmp");
                fs::write(&tmp, t).map_err(io_err(&tmp))?;
                fs::rename(&tmp, &path).map_err(io_err(&path))?;
                out.push(Outcome::Written(BenchmarkRecord::of(&c)));
            }
            Err(error) => {
                log::warn!("{fname}: {error}");
                out.push(Outcome::Failed(FailureRecord {
                    benchmark: a.as_str().to_string(),
                    level,
                    num_qubits: n,
                    gateset: gs,
                    device: device.map(|d| d.name().to_string()),
                    opt_level: opt,
                    filename: fname,
                    error,
                }));
            }
        }
    }
    Ok(out)
}

/// Generates every feasible grid point under `root` and writes the
/// manifest. Files already present and valid are kept.
pub fn generate_grid(config: &GridConfig, root: impl AsRef<Path>) -> Result<(Catalog, GridReport), CatalogError> {
    let root = root.as_ref();
    let devices = config.check()?;
    fs::create_dir_all(root).map_err(io_err(root))?;
    let points: Vec<(Algorithm, usize)> =
        config.algorithms.iter().flat_map(|&a| config.qubits.iter().map(move |n| (a, n))).collect();
    let results: Vec<Vec<Outcome>> =
        points.par_iter().map(|&(a, n)| grid_point(config, &devices, root, a, n)).collect::<Result<_, _>>()?;
    let mut report = GridReport::default();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for o in results.into_iter().flatten() {
        match o {
            Outcome::Written(r) => {
                report.written += 1;
                records.push(r);
            }
            Outcome::Reused(r) => {
                report.reused += 1;
                records.push(r);
            }
            Outcome::Failed(f) => {
                report.failed += 1;
                failures.push(f);
            }
        }
    }
    let catalog = Catalog::from_parts(root.to_path_buf(), records, failures);
    catalog.write_manifest()?;
    Ok((catalog, report))
}

/// Conjunctive filter; an empty axis does not constrain. Values are matched
/// exactly, so a gate-set constraint excludes the gate-set-free levels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterQuery {
    pub algorithms: Vec<String>,
    pub nmin: Option<usize>,
    pub nmax: Option<usize>,
    pub levels: Vec<Level>,
    pub gatesets: Vec<GateSetKind>,
    pub devices: Vec<String>,
    pub opt_levels: Vec<u8>,
}

impl FilterQuery {
    pub fn matches(&self, r: &BenchmarkRecord) -> bool {
        fn axis<T: PartialEq>(set: &[T], v: Option<&T>) -> bool {
            set.is_empty() || v.is_some_and(|v| set.contains(v))
        }
        axis(&self.algorithms, Some(&r.benchmark))
            && self.nmin.is_none_or(|m| r.num_qubits >= m)
            && self.nmax.is_none_or(|m| r.num_qubits <= m)
            && axis(&self.levels, Some(&r.level))
            && axis(&self.gatesets, r.gateset.as_ref())
            && axis(&self.devices, r.device.as_ref())
            && axis(&self.opt_levels, r.opt_level.as_ref())
    }
}

impl Catalog {
    fn from_parts(root: PathBuf, mut records: Vec<BenchmarkRecord>, mut failures: Vec<FailureRecord>) -> Self {
        records.sort_by(|a, b| a.key().cmp(&b.key()));
        records.dedup_by(|a, b| a.filename == b.filename);
        failures.sort_by(|a, b| a.filename.cmp(&b.filename));
        let by_name = records.iter().enumerate().map(|(i, r)| (r.filename.clone(), i)).collect();
        Catalog { root, records, failures, by_name }
    }

    /// Loads the manifest of a grid directory.
    pub fn load(root: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let root = root.as_ref();
        let path = root.join(MANIFEST);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(CatalogError::MissingManifest(root.to_path_buf()))
            }
            Err(e) => return Err(io_err(&path)(e)),
        };
        let mut records = Vec::new();
        let mut failures = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry: ManifestLine = serde_json::from_str(line).map_err(|e| CatalogError::Manifest {
                path: path.clone(),
                line: i + 1,
                message: e.to_string(),
            })?;
            match entry {
                ManifestLine::Ok(r) => records.push(r),
                ManifestLine::Failed(f) => failures.push(f),
            }
        }
        Ok(Catalog::from_parts(root.to_path_buf(), records, failures))
    }

    fn manifest_text<'a>(records: impl IntoIterator<Item = &'a BenchmarkRecord>, failures: &[FailureRecord]) -> String {
        let mut s = String::new();
        for r in records {
            s.push_str(&serde_json::to_string(&ManifestLine::Ok(r.clone())).expect("serializable"));
            s.push('\n');
        }
        for f in failures {
            s.push_str(&serde_json::to_string(&ManifestLine::Failed(f.clone())).expect("serializable"));
            s.push('\n');
        }
        s
    }

    fn write_manifest(&self) -> Result<(), CatalogError> {
        let path = self.root.join(MANIFEST);
        let tmp = self.root.join("manifest.jsonl.tmp");
        fs::write(&tmp, Self::manifest_text(&self.records, &self.failures)).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Records in query order.
    pub fn records(&self) -> &[BenchmarkRecord] {
        &self.records
    }

    pub fn failures(&self) -> &[FailureRecord] {
        &self.failures
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, filename: &str) -> Option<&BenchmarkRecord> {
        self.by_name.get(filename).map(|&i| &self.records[i])
    }

    /// Matching records, ordered by name, width, level, gate-set, device and
    /// opt level.
    pub fn query(&self, filter: &FilterQuery) -> Vec<&BenchmarkRecord> {
        self.records.iter().filter(|r| filter.matches(r)).collect()
    }

    pub fn read_qasm(&self, record: &BenchmarkRecord) -> Result<String, CatalogError> {
        let path = self.root.join(&record.path);
        fs::read_to_string(&path).map_err(io_err(&path))
    }

    /// Qubit bounds and every value present on each axis.
    pub fn options(&self) -> CatalogOptions {
        let mut o = CatalogOptions::default();
        let mut algorithms = BTreeSet::new();
        let mut levels = BTreeSet::new();
        let mut gatesets = BTreeSet::new();
        let mut devices = BTreeSet::new();
        let mut opts = BTreeSet::new();
        for r in &self.records {
            algorithms.insert(r.benchmark.clone());
            levels.insert(r.level);
            gatesets.extend(r.gateset);
            devices.extend(r.device.clone());
            opts.extend(r.opt_level);
        }
        o.algorithms = algorithms.into_iter().collect();
        o.levels = levels.into_iter().collect();
        o.gatesets = gatesets.into_iter().collect();
        o.devices = devices.into_iter().collect();
        o.opt_levels = opts.into_iter().collect();
        o.nmin = self.records.iter().map(|r| r.num_qubits).min();
        o.nmax = self.records.iter().map(|r| r.num_qubits).max();
        o
    }

    /// A zip of the given records plus their manifest lines. Entries are
    /// sorted by path, duplicates dropped and every timestamp fixed, so the
    /// same selection always gives the same bytes.
    pub fn bundle<'a>(&self, records: impl IntoIterator<Item = &'a BenchmarkRecord>) -> Result<Vec<u8>, CatalogError> {
        use zip::write::SimpleFileOptions;
        let mut chosen: Vec<&BenchmarkRecord> = records.into_iter().collect();
        chosen.sort_by(|a, b| a.path.cmp(&b.path));
        chosen.dedup_by(|a, b| a.path == b.path);
        let options = SimpleFileOptions::default()
            .compression_method(zip::CompressionMethod::Stored)
            .last_modified_time(zip::DateTime::default())
            .unix_permissions(0o644);
        let mut zw = zip::ZipWriter::new(io::Cursor::new(Vec::new()));
        for r in &chosen {
            let text = self.read_qasm(r)?;
            zw.start_file(r.path.as_str(), options)?;
            zw.write_all(text.as_bytes()).map_err(io_err(Path::new(&r.path)))?;
        }
        let mut listed = chosen.clone();
        listed.sort_by(|a, b| a.key().cmp(&b.key()));
        zw.start_file(MANIFEST, options)?;
        zw.write_all(Self::manifest_text(listed, &[]).as_bytes()).map_err(io_err(Path::new(MANIFEST)))?;
        Ok(zw.finish()?.into_inner())
    }
}

/// What a catalog offers on each filter axis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogOptions {
    pub algorithms: Vec<String>,
    pub levels: Vec<Level>,
    pub gatesets: Vec<GateSetKind>,
    pub devices: Vec<String>,
    pub opt_levels: Vec<u8>,
    pub nmin: Option<usize>,
    pub nmax: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_default_checks() {
        let cfg = GridConfig::default();
        let devices = cfg.check().unwrap();
        let per_width = cfg.targets(16, &devices).len();
        assert_eq!(per_width, 1 + 1 + 4 + 8);
    }

    #[test]
    fn rejects_one_qubit_grids() {
        let cfg = GridConfig { qubits: QubitRange { min: 1, max: 3, step: 1 }, ..GridConfig::default() };
        assert!(matches!(cfg.check(), Err(CatalogError::Config(_))));
    }

    #[test]
    fn rejects_widths_beyond_every_device() {
        let cfg = GridConfig { qubits: QubitRange { min: 2, max: 200, step: 1 }, ..GridConfig::default() };
        assert!(cfg.check().is_err());
    }

    #[test]
    fn config_json_uses_level_tokens() {
        let cfg = GridConfig::from_json(
            r#"{"algorithms":["ghz","qpe_exact"],"qubits":{"min":2,"max":5},"levels":["alg","nativegates"],"gatesets":["ibm"],"opt_levels":[2]}"#,
        )
        .unwrap();
        assert_eq!(cfg.qubits.step, 1);
        assert_eq!(cfg.levels, vec![Level::Alg, Level::Native]);
        assert_eq!(serde_json::to_string(&Level::Native).unwrap(), "\"nativegates\"");
    }
}
