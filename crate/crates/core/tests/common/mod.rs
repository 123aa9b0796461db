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

//! Strategies shared by the property tests.

use std::f64::consts::PI;

use proptest::prelude::*;
use qbench_core::circuit::{Circuit, Gate, GateKind};

/// Any bound gate on `n ≥ 2` wires, multi-controlled ones included.
pub fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    let angle = prop_oneof![-10.0f64..10.0, Just(PI), Just(-PI / 2.0), Just(1e-9)];
    let pair = (0..n, 0..n).prop_filter("distinct", |(a, b)| a != b);
    prop_oneof![
        (q.clone(), 0..10usize).prop_map(|(q, k)| {
            let kinds = [
                GateKind::H,
                GateKind::X,
                GateKind::Y,
                GateKind::Z,
                GateKind::S,
                GateKind::Sdg,
                GateKind::T,
                GateKind::Tdg,
                GateKind::SX,
                GateKind::I,
            ];
            Gate::one(kinds[k].clone(), q)
        }),
        (q.clone(), angle.clone(), 0..4usize).prop_map(|(q, a, k)| match k {
            0 => Gate::rx(a, q),
            1 => Gate::ry(a, q),
            2 => Gate::rz(a, q),
            _ => Gate::p(a, q),
        }),
        (q.clone(), angle.clone(), angle.clone(), angle.clone()).prop_map(|(q, a, b, c)| Gate::u(a, b, c, q)),
        (pair.clone(), angle.clone(), 0..6usize).prop_map(|((a, b), t, k)| match k {
            0 => Gate::cx(a, b),
            1 => Gate::cz(a, b),
            2 => Gate::cp(t, a, b),
            3 => Gate::swap(a, b),
            4 => Gate::rxx(t, a, b),
            _ => Gate::ecr(a, b),
        }),
        (
            Just(()).prop_perturb(move |_, mut rng| {
                let mut qs: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    qs.swap(i, rng.random_range(0..=i));
                }
                qs
            }),
            0..3usize,
            angle
        )
            .prop_map(|(qs, k, a)| {
                let (t, cs) = qs.split_last().unwrap();
                match k {
                    0 => Gate::mcx(cs, *t),
                    1 => Gate::mcz(cs, *t),
                    _ => Gate::mcp(a, cs, *t),
                }
            }),
        proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n).prop_map(Gate::barrier),
    ]
}

#[allow(dead_code)]
pub fn arb_circuit(n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(arb_gate(n), 0..max_len).prop_map(move |g| Circuit::from_gates("random", n, g).unwrap())
}
