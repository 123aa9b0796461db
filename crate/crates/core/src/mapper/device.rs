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

use std::collections::VecDeque;
use std::path::Path;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::MapError;

/// A named, undirected coupling graph over physical qubits `0..num_qubits`.
#[derive(Clone, Debug)]
pub struct Device {
    name: String,
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    distances: OnceLock<Arc<Vec<Vec<u32>>>>,
}

impl PartialEq for Device {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.num_qubits == other.num_qubits && self.edges == other.edges
    }
}

/// On-disk device description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviceSpec {
    pub name: String,
    pub num_qubits: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Unreachable pairs in the distance matrix.
pub const UNREACHABLE: u32 = u32::MAX;

impl Device {
    /// Edges are stored normalized as `(low, high)`, sorted and deduplicated.
    pub fn new(name: impl Into<String>, num_qubits: usize, edges: &[(usize, usize)]) -> Result<Self, MapError> {
        let name = name.into();
        if num_qubits == 0 {
            return Err(MapError::InvalidDevice(format!("{name} has no qubits")));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= num_qubits || b >= num_qubits {
                return Err(MapError::InvalidDevice(format!("edge ({a}, {b}) outside {name}")));
            }
            if a == b {
                return Err(MapError::InvalidDevice(format!("self-loop on {a} in {name}")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adjacency = vec![Vec::new(); num_qubits];
        for &(a, b) in &norm {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(Device { name, num_qubits, edges: norm, adjacency, distances: OnceLock::new() })
    }

    pub fn from_spec(spec: &DeviceSpec) -> Result<Self, MapError> {
        let edges: Vec<(usize, usize)> = spec.edges.iter().map(|e| (e[0], e[1])).collect();
        Device::new(spec.name.clone(), spec.num_qubits, &edges)
    }

    pub fn to_spec(&self) -> DeviceSpec {
        DeviceSpec {
            name: self.name.clone(),
            num_qubits: self.num_qubits,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Reads `{"name": .., "num_qubits": .., "edges": [[a, b], ..]}`.
    pub fn from_json(text: &str) -> Result<Self, MapError> {
        let spec: DeviceSpec =
            serde_json::from_str(text).map_err(|e| MapError::InvalidDevice(format!("device file: {e}")))?;
        Device::from_spec(&spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, MapError> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| MapError::InvalidDevice(format!("{}: {e}", path.display())))?;
        Device::from_json(&text)
    }

    /// Builtin devices by name: `ibmq_manila`, `heavyhex_127`, and the
    /// families `line_<n>`, `ring_<n>`, `grid_<r>x<c>`, `alltoall_<n>`.
    pub fn builtin(name: &str) -> Result<Self, MapError> {
        let unknown = || MapError::UnknownDevice(name.to_string());
        let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(unknown);
        match name {
            "ibmq_manila" => return Device::new(name, 5, &line_edges(5)),
            "heavyhex_127" => return Device::new(name, 127, &heavy_hex_127()),
            _ => {}
        }
        let (family, size) = name.rsplit_once('_').ok_or_else(unknown)?;
        match family {
            "line" => {
                let n = num(size)?;
                Device::new(name, n, &line_edges(n))
            }
            "ring" => {
                let n = num(size)?;
                let mut e = line_edges(n);
                if n > 2 {
                    e.push((n - 1, 0));
                }
                Device::new(name, n, &e)
            }
            "alltoall" => {
                let n = num(size)?;
                let e: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
                Device::new(name, n, &e)
            }
            "grid" => {
                let (r, c) = size.split_once('x').ok_or_else(unknown)?;
                let (r, c) = (num(r)?, num(c)?);
                let mut e = Vec::new();
                for i in 0..r {
                    for j in 0..c {
                        let q = i * c + j;
                        if j + 1 < c {
                            e.push((q, q + 1));
                        }
                        if i + 1 < r {
                            e.push((q, q + c));
                        }
                    }
                }
                Device::new(name, r * c, &e)
            }
            _ => Err(unknown()),
        }
    }

    /// Names of the fixed builtins plus one example per family.
    pub fn builtin_names() -> Vec<String> {
        ["ibmq_manila", "heavyhex_127", "line_5", "ring_5", "grid_4x4", "alltoall_5"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }
    pub fn degree(&self, q: usize) -> usize {
        self.adjacency[q].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.num_qubits && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Position of the edge in [`Device::edges`].
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// All-pairs hop distances, computed on first use by one BFS per qubit.
    pub fn distances(&self) -> &[Vec<u32>] {
        self.distances.get_or_init(|| Arc::new((0..self.num_qubits).map(|s| self.bfs(s)).collect()))
    }

    pub fn distance(&self, a: usize, b: usize) -> u32 {
        self.distances()[a][b]
    }

    fn bfs(&self, start: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.num_qubits];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// A shortest path `a → b` (inclusive), preferring low-index neighbours.
    pub fn shortest_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let d = &self.distances()[b];
        if d[a] == UNREACHABLE {
            return None;
        }
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *self.adjacency[cur].iter().find(|&&v| d[v] + 1 == d[cur])?;
            path.push(cur);
        }
        Some(path)
    }

    pub fn is_connected(&self) -> bool {
        self.distances()[0].iter().all(|&d| d != UNREACHABLE)
    }
}

fn line_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// The 127-qubit heavy-hex lattice with IBM Eagle numbering: seven rows
/// (14, 15, 15, 15, 15, 15, 14 qubits) joined by four bridge qubits between
/// consecutive rows, at columns 0, 4, 8, 12 below even rows and 2, 6, 10, 14
/// below odd rows.
fn heavy_hex_127() -> Vec<(usize, usize)> {
    const ROWS: usize = 7;
    let mut edges = Vec::new();
    let mut next = 0;
    let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
    let mut bridges: Vec<Vec<(usize, usize)>> = Vec::new();
    for r in 0..ROWS {
        let cols: Vec<Option<usize>> = (0..15)
            .map(|c| {
                let absent = (r == 0 && c == 14) || (r == ROWS - 1 && c == 0);
                if absent {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect();
        rows.push(cols);
        if r + 1 < ROWS {
            let start = if r % 2 == 0 { 0 } else { 2 };
            let b: Vec<(usize, usize)> = (start..15)
                .step_by(4)
                .map(|c| {
                    next += 1;
                    (c, next - 1)
                })
                .collect();
            bridges.push(b);
        }
    }
    for row in &rows {
        let ids: Vec<usize> = row.iter().flatten().copied().collect();
        edges.extend(ids.windows(2).map(|w| (w[0], w[1])));
    }
    for (r, b) in bridges.iter().enumerate() {
        for &(c, q) in b {
            edges.push((rows[r][c].expect("bridge above"), q));
            edges.push((q, rows[r + 1][c].expect("bridge below")));
        }
    }
    edges
}
