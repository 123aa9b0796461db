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

//! End-to-end acceptance run. Prints one PASS or FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use qbench_core::algorithms::{
    ghz, grover_iterations, grover_marked, qft, qpe_exact, twolocal, wstate, Algorithm, BenchmarkSpec, Entanglement,
};
use qbench_core::catalog::{generate_grid, Catalog, FilterQuery, GridConfig};
use qbench_core::circuit::{Circuit, Level};
use qbench_core::mapper::{map, Device, LayoutStrategy};
use qbench_core::native::certify::certify_templates;
use qbench_core::native::{to_native, GateSetKind};
use qbench_core::passes::{bind_seeded, expand, to_indep_bound, Binding};
use qbench_core::pipeline::{all_levels, compile, Target};
use qbench_core::qasm::{emit, parse};
use qbench_core::sim::{equiv_unitaries, equiv_up_to_phase, simulate, unitary_of};
use qbench_service::{query_string, ApiConfig, MAX_PAGE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EQUIV_TOL: f64 = 1e-8;
const STATE_TOL: f64 = 1e-10;
const DFT_TOL: f64 = 1e-9;
const CERTIFY_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn certification() -> Outcome {
    let r = certify_templates();
    let bad: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !(c.native && c.deviation < CERTIFY_TOL))
        .map(|c| format!("{} on {}", c.gate, c.gateset))
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} templates, max deviation {:.2e}, failures {:?}", r.checks.len(), r.max_deviation(), bad),
    )
}

fn mapped_layouts(c: &Circuit) -> Option<(&[usize], &[usize])> {
    Some((c.initial_layout()?, c.final_layout()?))
}

/// Max deviation over all pairs of the four levels; mapped pairs account
/// for the layouts. Each unitary is built once.
fn pairwise(levels: &[Circuit; 4], seed: u64) -> Result<f64, String> {
    let err = |e: qbench_core::sim::SimError| e.to_string();
    let alg = expand(&bind_seeded(&levels[0], seed));
    let flat = [&alg, &levels[1], &levels[2]];
    let us: Vec<_> = flat.iter().map(|c| unitary_of(c)).collect::<Result<_, _>>().map_err(err)?;
    let mut worst: f64 = 0.0;
    let mut note = |e: qbench_core::sim::Equivalence| {
        worst = worst.max(if e.equivalent { e.max_deviation } else { f64::INFINITY })
    };
    for i in 0..3 {
        for j in i + 1..3 {
            note(equiv_unitaries(&us[i], &us[j], None).map_err(err)?);
        }
    }
    let mapped = &levels[3];
    let lay = mapped_layouts(mapped).ok_or("mapped circuit without layouts")?;
    let um = unitary_of(mapped).map_err(err)?;
    let width = mapped.num_qubits();
    for (c, u) in flat.iter().zip(&us) {
        let e = if c.num_qubits() == width {
            equiv_unitaries(&um, u, Some(lay))
        } else {
            equiv_unitaries(&um, &unitary_of(&c.widened(width)).map_err(err)?, Some(lay))
        };
        note(e.map_err(err)?);
    }
    Ok(worst)
}

fn cross_level() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let mut failures = Vec::new();
    for a in Algorithm::ALL {
        for n in 2..=6 {
            let spec = BenchmarkSpec::new(a, n).seed(7);
            let device = Device::builtin(if n <= 5 { "ibmq_manila" } else { "grid_2x3" }).unwrap();
            for gs in GateSetKind::ALL {
                for opt in 0..=3 {
                    cases += 1;
                    let dev = all_levels(&spec, gs, &device, opt)
                        .map_err(|e| e.to_string())
                        .and_then(|l| pairwise(&l, spec.seed));
                    match dev {
                        Ok(d) if d < EQUIV_TOL => worst = worst.max(d),
                        Ok(d) => failures.push(format!("{a} n={n} {gs} opt{opt}: {d:.2e}")),
                        Err(e) => failures.push(format!("{a} n={n} {gs} opt{opt}: {e}")),
                    }
                }
            }
        }
    }
    let took = start.elapsed();
    let pass = failures.is_empty() && took < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "{cases} compilations, 6 level pairs each, max deviation {worst:.2e} (< 1e-8), {} (< 120s) {failures:?}",
            secs(took)
        ),
    )
}

fn pipeline_vector() -> Outcome {
    let alg = twolocal(3, 1, Entanglement::Full).unwrap();
    let indep = to_indep_bound(&alg, &Binding::uniform(&alg, -PI)).unwrap();
    let native = to_native(&indep, GateSetKind::Ibm, 2).unwrap();
    let manila = Device::builtin("ibmq_manila").unwrap();
    let mapped = map(&native, &manila, LayoutStrategy::Trivial, 2).unwrap();
    let ic = indep.count_ops();
    let nc = native.count_ops();
    let mc = mapped.count_ops();
    let indep_ok = ic.counts.len() == 2 && ic.get("ry") == 6 && ic.get("cx") == 3;
    let native_ok = nc.counts.len() == 3 && nc.get("rz") == 6 && nc.get("x") == 6 && nc.get("cx") == 3;
    let edges_ok =
        mapped.gates().iter().filter(|g| g.is_two_qubit()).all(|g| manila.has_edge(g.qubits[0], g.qubits[1]));
    let bound = expand(&bind_seeded_uniform(&alg));
    let lay = mapped_layouts(&mapped).unwrap();
    let eqs = [
        equiv_up_to_phase(&indep, &bound, None).unwrap(),
        equiv_up_to_phase(&native, &indep, None).unwrap(),
        equiv_up_to_phase(&mapped, &native, Some(lay)).unwrap(),
        equiv_up_to_phase(&mapped, &bound, Some(lay)).unwrap(),
    ];
    let worst = eqs.iter().map(|e| e.max_deviation).fold(0.0, f64::max);
    let equiv_ok = eqs.iter().all(|e| e.equivalent) && worst < EQUIV_TOL;
    outcome(
        indep_ok && native_ok && edges_ok && mc.get("cx") <= 4 && equiv_ok,
        format!(
            "indep {:?}, native {:?}, mapped cx={} (<= 4) on edges={edges_ok}, max deviation {worst:.2e}",
            ic.counts,
            nc.counts,
            mc.get("cx")
        ),
    )
}

fn bind_seeded_uniform(alg: &Circuit) -> Circuit {
    qbench_core::passes::bind(alg, &Binding::uniform(alg, -PI)).unwrap()
}

fn state_checks() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=10 {
        let sv = simulate(&expand(&ghz(n).unwrap())).unwrap();
        let all = (1usize << n) - 1;
        let dev = (0..=all)
            .map(|i| {
                let want = if i == 0 || i == all { 1.0 / 2f64.sqrt() } else { 0.0 };
                let a = sv.amplitude(i);
                ((a.re - want).powi(2) + a.im.powi(2)).sqrt()
            })
            .fold(0.0, f64::max);
        if dev >= STATE_TOL {
            bad.push(format!("ghz {n}: {dev:.2e}"));
        }
        let sv = simulate(&expand(&wstate(n).unwrap())).unwrap();
        let want = 1.0 / (n as f64).sqrt();
        let dev = (0..1usize << n)
            .map(|i| {
                let a = sv.amplitude(i).norm();
                if i.count_ones() == 1 {
                    (a - want).abs()
                } else {
                    a
                }
            })
            .fold(0.0, f64::max);
        if dev >= STATE_TOL {
            bad.push(format!("wstate {n}: {dev:.2e}"));
        }
    }
    for n in 1..=5 {
        let u = unitary_of(&expand(&qft(n).unwrap())).unwrap();
        let dim = 1usize << n;
        let norm = 1.0 / (dim as f64).sqrt();
        let mut dev: f64 = 0.0;
        for j in 0..dim {
            for k in 0..dim {
                let angle = 2.0 * PI * (j * k % dim) as f64 / dim as f64;
                let got = u.get(j, k);
                dev = dev.max(((got.re - norm * angle.cos()).powi(2) + (got.im - norm * angle.sin()).powi(2)).sqrt());
            }
        }
        if dev >= DFT_TOL {
            bad.push(format!("qft {n}: {dev:.2e}"));
        }
    }
    for n in 3..=5 {
        let k = grover_iterations(n);
        let theta = 2f64.powf(-(n as f64) / 2.0).asin();
        let bound = ((2.0 * k as f64 + 1.0) * theta).sin().powi(2) - 1e-9;
        for marked in 0..1u64 << n {
            let p = simulate(&expand(&grover_marked(n, marked, k).unwrap())).unwrap().probability(marked as usize);
            if p < bound {
                bad.push(format!("grover {n} marked {marked}: {p:.4} < {bound:.4}"));
            }
        }
    }
    for n in 2..=6 {
        let m = n - 1;
        for k in 0..1u64 << m {
            let sv = simulate(&expand(&qpe_exact(n, k).unwrap())).unwrap();
            let p = sv.marginal(&(0..m).collect::<Vec<_>>(), k as usize);
            if (p - 1.0).abs() >= 1e-9 {
                bad.push(format!("qpe_exact {n} k={k}: {p}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("ghz/wstate n<=10, qft n<=5, grover n=3..5 all marks, qpe_exact n<=6 all k {bad:?}"),
    )
}

fn scale(root: &std::path::Path) -> (Outcome, Option<Catalog>) {
    let start = Instant::now();
    let result = generate_grid(&GridConfig::default(), root);
    let took = start.elapsed();
    match result {
        Ok((cat, report)) => {
            let o = cat.options();
            let span = o.nmin == Some(2) && o.nmax == Some(16);
            let pass = cat.len() >= 2000 && span && report.failed == 0 && took < Duration::from_secs(300);
            let detail = format!(
                "desk grid {} files (>= 2000), n={}..{}, {} failed, {} (< 300s)",
                cat.len(),
                o.nmin.unwrap_or(0),
                o.nmax.unwrap_or(0),
                report.failed,
                secs(took)
            );
            (outcome(pass, detail), Some(cat))
        }
        Err(e) => (outcome(false, format!("grid generation failed: {e}")), None),
    }
}

fn large_widths() -> Outcome {
    let heavy = Device::builtin("heavyhex_127").unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for a in [Algorithm::Ghz, Algorithm::Graphstate] {
        let start = Instant::now();
        let r = compile(&BenchmarkSpec::new(a, 127), &Target::mapped(GateSetKind::Ibm, heavy.clone(), 1))
            .map_err(|e| e.to_string())
            .and_then(|c| c.validate_on(Some(&heavy)).map(|_| c).map_err(|e| e.to_string()));
        let took = start.elapsed();
        match r {
            Ok(c) => {
                pass &= took < Duration::from_secs(30);
                parts.push(format!("{a} {} gates {} (< 30s)", c.len(), secs(took)));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{a}: {e}"));
            }
        }
    }
    outcome(pass, format!("127 qubits on heavyhex_127: {}", parts.join(", ")))
}

fn conformance(cat: &Catalog) -> Outcome {
    let mut native = 0;
    let mut mapped = 0;
    let mut bad = Vec::new();
    for r in cat.records() {
        if !matches!(r.level, Level::Native | Level::Mapped) {
            continue;
        }
        let c = match cat.read_qasm(r).map_err(|e| e.to_string()).and_then(|t| parse(&t).map_err(|e| e.to_string())) {
            Ok(c) => c,
            Err(e) => {
                bad.push(format!("{}: {e}", r.filename));
                continue;
            }
        };
        let gs = c.gateset().expect("native files record their gate-set").gateset();
        if r.level == Level::Native {
            native += 1;
            if let Some(g) = c.gates().iter().find(|g| !gs.accepts(g)) {
                bad.push(format!("{}: {} is not native", r.filename, g.kind));
            }
        } else {
            mapped += 1;
            let device = Device::builtin(c.device().unwrap()).unwrap();
            if let Some(g) = c.gates().iter().find(|g| g.is_two_qubit() && !device.has_edge(g.qubits[0], g.qubits[1])) {
                bad.push(format!("{}: {:?} off the coupling map", r.filename, g.qubits));
            }
        }
    }
    outcome(
        bad.is_empty() && native > 0 && mapped > 0,
        format!("{native} native files in their gate-set, {mapped} mapped files on coupling edges {bad:?}"),
    )
}

fn round_trip(cat: &Catalog) -> Outcome {
    let mut bad = Vec::new();
    for r in cat.records() {
        let text = cat.read_qasm(r).unwrap();
        let ok = parse(&text).ok().and_then(|c| {
            let again = emit(&c).ok()?;
            (again == text && parse(&again).ok()? == c).then_some(())
        });
        if ok.is_none() {
            bad.push(r.filename.clone());
        }
    }
    outcome(bad.is_empty(), format!("{} of {} files round-trip {bad:?}", cat.len() - bad.len(), cat.len()))
}

fn random_filter(rng: &mut ChaCha8Rng, cfg: &GridConfig) -> FilterQuery {
    fn pick<T: Clone>(rng: &mut ChaCha8Rng, from: &[T]) -> Vec<T> {
        from.iter().filter(|_| rng.random_bool(0.25)).cloned().collect()
    }
    let algorithms: Vec<String> = cfg.algorithms.iter().map(|a| a.as_str().to_string()).collect();
    let mut devices = cfg.devices.clone();
    devices.push("ibmq_manila".into());
    let nmin = rng.random_bool(0.5).then(|| rng.random_range(1..=17));
    FilterQuery {
        algorithms: pick(rng, &algorithms),
        nmin,
        nmax: rng.random_bool(0.5).then(|| rng.random_range(nmin.unwrap_or(1)..=18)),
        levels: pick(rng, &Level::ALL),
        gatesets: pick(rng, &GateSetKind::ALL),
        devices: pick(rng, &devices),
        opt_levels: pick(rng, &[0u8, 1, 2, 3]),
    }
}

fn api_parity(cat: &Catalog) -> Outcome {
    let runtime = tokio::runtime::Runtime::new().unwrap();
    runtime.block_on(async {
        let base = common::spawn(cat.clone(), ApiConfig::default()).await;
        let client = reqwest::Client::new();
        let mut rng = ChaCha8Rng::seed_from_u64(2026);
        let cfg = GridConfig::default();
        let mut bad = Vec::new();
        let mut records = 0;
        for i in 0..200 {
            let f = random_filter(&mut rng, &cfg);
            let want: Vec<serde_json::Value> =
                cat.query(&f).into_iter().map(|r| serde_json::to_value(r).unwrap()).collect();
            let mut got = Vec::new();
            let mut cursor = 0;
            loop {
                let url = format!("{base}/api/benchmarks?{}", query_string(&f, cursor, MAX_PAGE));
                let page: serde_json::Value = client.get(url).send().await.unwrap().json().await.unwrap();
                got.extend(page["records"].as_array().cloned().unwrap_or_default());
                match page["next"].as_u64() {
                    Some(n) => cursor = n as usize,
                    None => break,
                }
            }
            records += got.len();
            if got != want {
                bad.push(format!("query {i}: {f:?}"));
            }
        }
        outcome(bad.is_empty(), format!("200 random filters, {records} records compared {bad:?}"))
    })
}

fn main() {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut report = |name, o: Outcome| {
        println!("{} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((name, o));
    };
    report("template certification", certification());
    report("cross-level semantic preservation", cross_level());
    report("pipeline vector", pipeline_vector());
    report("state checks", state_checks());

    let dir = tempfile::tempdir().unwrap();
    let (o, cat) = scale(dir.path());
    let large = large_widths();
    report("catalog scale", outcome(o.pass && large.pass, format!("{}; {}", o.detail, large.detail)));
    match &cat {
        Some(cat) => {
            report("conformance scans", conformance(cat));
            report("round-trip", round_trip(cat));
            report("API parity", api_parity(cat));
        }
        None => {
            for name in ["conformance scans", "round-trip", "API parity"] {
                report(name, outcome(false, "no catalog"));
            }
        }
    }
    let failed = results.iter().filter(|(_, o)| !o.pass).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
