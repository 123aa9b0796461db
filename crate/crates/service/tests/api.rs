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

use common::{ghz_config, grid, spawn};
use qbench_core::catalog::{Catalog, FilterQuery, MANIFEST};
use qbench_core::circuit::Level;
use qbench_service::{query_string, ApiConfig, ErrorBody, Options, Page};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reqwest::StatusCode;
use serde_json::Value;

async fn get_page(client: &reqwest::Client, base: &str, query: &str) -> Page {
    let r = client.get(format!("{base}/api/benchmarks?{query}")).send().await.unwrap();
    assert_eq!(r.status(), StatusCode::OK, "{query}");
    r.json().await.unwrap()
}

/// Every record the API returns for `filter`, following the cursor.
async fn all_pages(client: &reqwest::Client, base: &str, filter: &FilterQuery, limit: usize) -> Vec<Value> {
    let mut out = Vec::new();
    let mut cursor = 0;
    loop {
        let r =
            client.get(format!("{base}/api/benchmarks?{}", query_string(filter, cursor, limit))).send().await.unwrap();
        assert_eq!(r.status(), StatusCode::OK);
        let page: Value = r.json().await.unwrap();
        out.extend(page["records"].as_array().unwrap().iter().cloned());
        match page["next"].as_u64() {
            Some(n) => cursor = n as usize,
            None => return out,
        }
    }
}

fn in_process(cat: &Catalog, f: &FilterQuery) -> Vec<Value> {
    cat.query(f).into_iter().map(|r| serde_json::to_value(r).unwrap()).collect()
}

#[tokio::test]
async fn options_and_full_index() {
    let (_dir, cat) = grid(&ghz_config());
    let base = spawn(cat.clone(), ApiConfig::default()).await;
    let client = reqwest::Client::new();

    let o: Options = client.get(format!("{base}/api/options")).send().await.unwrap().json().await.unwrap();
    assert_eq!(o.options, cat.options());
    assert_eq!((o.options.nmin, o.options.nmax), (Some(2), Some(5)));
    assert_eq!((o.page_default, o.page_max, o.bundle_cap), (100, 1000, 10_000));

    let page = get_page(&client, &base, "").await;
    assert_eq!((page.status.as_str(), page.total, page.next), ("ok", 16, None));
    assert_eq!(page.records.iter().collect::<Vec<_>>(), cat.query(&FilterQuery::default()));
}

#[tokio::test]
async fn ghz_indep_range_matches_the_catalog() {
    let (_dir, cat) = grid(&ghz_config());
    let base = spawn(cat.clone(), ApiConfig::default()).await;
    let client = reqwest::Client::new();
    let page = get_page(&client, &base, "algo=ghz&level=indep&nmin=3&nmax=4").await;
    let names: Vec<&str> = page.records.iter().map(|r| r.filename.as_str()).collect();
    assert_eq!(names, ["ghz_indep_3.qasm", "ghz_indep_4.qasm"]);
    let f = FilterQuery {
        algorithms: vec!["ghz".into()],
        levels: vec![Level::Indep],
        nmin: Some(3),
        nmax: Some(4),
        ..Default::default()
    };
    assert_eq!(page.records.iter().collect::<Vec<_>>(), cat.query(&f));
}

#[tokio::test]
async fn pagination() {
    let (_dir, cat) = grid(&ghz_config());
    let base = spawn(cat.clone(), ApiConfig::default()).await;
    let client = reqwest::Client::new();
    let first = get_page(&client, &base, "limit=5").await;
    assert_eq!((first.records.len(), first.total, first.next), (5, 16, Some(5)));
    let last = get_page(&client, &base, "limit=5&cursor=15").await;
    assert_eq!((last.records.len(), last.next), (1, None));
    let beyond = get_page(&client, &base, "cursor=99").await;
    assert!(beyond.records.is_empty());
    assert_eq!(all_pages(&client, &base, &FilterQuery::default(), 3).await, in_process(&cat, &FilterQuery::default()));
}

#[tokio::test]
async fn malformed_filters_are_rejected() {
    let (_dir, cat) = grid(&ghz_config());
    let base = spawn(cat, ApiConfig::default()).await;
    let client = reqwest::Client::new();
    for q in ["level=bogus", "nmin=three", "limit=5000", "gateset=acme", "sort=name"] {
        let r = client.get(format!("{base}/api/benchmarks?{q}")).send().await.unwrap();
        assert_eq!(r.status(), StatusCode::BAD_REQUEST, "{q}");
        let e: ErrorBody = r.json().await.unwrap();
        assert_eq!(e.status, "error");
        assert!(!e.error.is_empty());
    }
    let r = client.post(format!("{base}/api/download")).body("{\"levels\": [\"bogus\"]}").send().await.unwrap();
    assert_eq!(r.status(), StatusCode::BAD_REQUEST);
    let r = client.post(format!("{base}/api/download")).body("not json").send().await.unwrap();
    assert_eq!(r.status(), StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn raw_files_and_missing_files() {
    let (_dir, cat) = grid(&ghz_config());
    let base = spawn(cat.clone(), ApiConfig::default()).await;
    let client = reqwest::Client::new();
    let r = client.get(format!("{base}/api/benchmarks/ghz_indep_3.qasm")).send().await.unwrap();
    assert_eq!(r.status(), StatusCode::OK);
    assert!(r.headers()["content-type"].to_str().unwrap().starts_with("text/plain"));
    assert_eq!(r.text().await.unwrap(), cat.read_qasm(cat.get("ghz_indep_3.qasm").unwrap()).unwrap());
    for missing in ["ghz_indep_99.qasm", "..%2Fmanifest.jsonl", MANIFEST] {
        let r = client.get(format!("{base}/api/benchmarks/{missing}")).send().await.unwrap();
        assert_eq!(r.status(), StatusCode::NOT_FOUND, "{missing}");
    }
    let r = client.get(format!("{base}/api/nothing")).send().await.unwrap();
    assert_eq!(r.status(), StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn downloads_are_deterministic_and_capped() {
    let (dir, cat) = grid(&ghz_config());
    let manifest = std::fs::read(dir.path().join(MANIFEST)).unwrap();
    let base = spawn(cat.clone(), ApiConfig { bundle_cap: 8, static_dir: None }).await;
    let client = reqwest::Client::new();
    let f = FilterQuery { levels: vec![Level::Mapped, Level::Native], ..Default::default() };
    let body = serde_json::to_string(&f).unwrap();
    let mut zips = Vec::new();
    for _ in 0..2 {
        let r = client.post(format!("{base}/api/download")).body(body.clone()).send().await.unwrap();
        assert_eq!(r.status(), StatusCode::OK);
        assert_eq!(r.headers()["content-type"], "application/zip");
        zips.push(r.bytes().await.unwrap());
    }
    assert_eq!(zips[0], zips[1]);
    assert_eq!(zips[0].as_ref(), cat.bundle(cat.query(&f)).unwrap().as_slice());

    let r = client.post(format!("{base}/api/download")).body("{}").send().await.unwrap();
    assert_eq!(r.status(), StatusCode::PAYLOAD_TOO_LARGE);
    let r = client.post(format!("{base}/api/download")).send().await.unwrap();
    assert_eq!(r.status(), StatusCode::PAYLOAD_TOO_LARGE);

    // Nothing above touched the catalog on disk.
    assert_eq!(std::fs::read(dir.path().join(MANIFEST)).unwrap(), manifest);
    assert_eq!(Catalog::load(dir.path()).unwrap(), cat);
    let r = client.post(format!("{base}/api/benchmarks")).send().await.unwrap();
    assert_eq!(r.status(), StatusCode::METHOD_NOT_ALLOWED);
}

#[tokio::test]
async fn static_ui_is_served() {
    let (_dir, cat) = grid(&ghz_config());
    let ui = tempfile::tempdir().unwrap();
    std::fs::write(ui.path().join("index.html"), "<html>qbench</html>").unwrap();
    let base = spawn(cat, ApiConfig { static_dir: Some(ui.path().to_path_buf()), ..Default::default() }).await;
    let client = reqwest::Client::new();
    let r = client.get(format!("{base}/")).send().await.unwrap();
    assert_eq!(r.text().await.unwrap(), "<html>qbench</html>");
    let r = client.get(format!("{base}/api/options")).send().await.unwrap();
    assert_eq!(r.status(), StatusCode::OK);
}

fn random_filter(rng: &mut ChaCha8Rng) -> FilterQuery {
    fn pick<T: Clone>(rng: &mut ChaCha8Rng, from: &[T]) -> Vec<T> {
        from.iter().filter(|_| rng.random_bool(0.3)).cloned().collect()
    }
    FilterQuery {
        algorithms: pick(rng, &["ghz".to_string(), "qft".to_string()]),
        nmin: rng.random_bool(0.5).then(|| rng.random_range(1..7)),
        nmax: rng.random_bool(0.5).then(|| rng.random_range(7..9)),
        levels: pick(rng, &Level::ALL),
        gatesets: pick(rng, &qbench_core::native::GateSetKind::ALL),
        devices: pick(rng, &["ibmq_manila".to_string(), "line_4".to_string()]),
        opt_levels: pick(rng, &[0u8, 1, 2]),
    }
}

#[tokio::test]
async fn random_queries_match_in_process() {
    let (_dir, cat) = grid(&ghz_config());
    let base = spawn(cat.clone(), ApiConfig::default()).await;
    let client = reqwest::Client::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let f = random_filter(&mut rng);
        assert_eq!(all_pages(&client, &base, &f, 4).await, in_process(&cat, &f), "{f:?}");
        let r = client.post(format!("{base}/api/download")).json(&f).send().await.unwrap();
        assert_eq!(r.bytes().await.unwrap().as_ref(), cat.bundle(cat.query(&f)).unwrap().as_slice());
    }
}
