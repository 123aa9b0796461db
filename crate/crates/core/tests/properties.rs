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

//! Randomized checks of the pass, lowering, routing and simulator laws.

mod common;

use std::f64::consts::PI;

use common::{arb_circuit, arb_gate};
use proptest::prelude::*;
use qbench_core::algorithms::{generate, Algorithm, BenchmarkSpec};
use qbench_core::circuit::{Circuit, GateKind, Level};
use qbench_core::mapper::{map, Device, LayoutStrategy};
use qbench_core::matrix::{gate_matrix, sequence_matrix};
use qbench_core::native::{to_native, GateSetKind, RIGETTI_RX_ANGLES};
use qbench_core::passes::{expand, simplify};
use qbench_core::sim::{equiv_up_to_phase, simulate, unitary_of, Statevector};

fn arb_gateset() -> impl Strategy<Value = GateSetKind> {
    proptest::sample::select(GateSetKind::ALL.to_vec())
}

fn arb_device() -> impl Strategy<Value = Device> {
    proptest::sample::select(vec!["line_4", "ring_5", "ibmq_manila", "grid_2x3", "alltoall_4"])
        .prop_map(|d| Device::builtin(d).unwrap())
}

fn native(c: &Circuit, gs: GateSetKind, opt: u8) -> Circuit {
    let mut indep = c.clone();
    indep = qbench_core::passes::to_indep(&indep, 0).unwrap();
    to_native(&indep, gs, opt).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gate_matrices_are_unitary(g in arb_gate(4)) {
        prop_assume!(!g.kind.is_directive());
        let m = gate_matrix(&g.kind, &g.params).unwrap();
        prop_assert!(m.unitarity_error() < 1e-12);
    }

    #[test]
    fn depth_is_subadditive(a in arb_circuit(4, 20), b in arb_circuit(4, 20)) {
        let mut gates = a.gates().to_vec();
        gates.extend(b.gates().iter().cloned());
        let ab = Circuit::from_gates("ab", 4, gates).unwrap();
        prop_assert!(ab.depth() <= a.depth() + b.depth());
    }

    #[test]
    fn simplify_is_idempotent_and_shrinks(c in arb_circuit(4, 40)) {
        let c = expand(&c);
        let once = simplify(&c).unwrap();
        prop_assert_eq!(simplify(&once).unwrap(), once.clone());
        prop_assert!(once.len() <= c.len());
        prop_assert!(once.depth() <= c.depth());
        let eq = equiv_up_to_phase(&once, &c, None).unwrap();
        prop_assert!(eq.max_deviation < 1e-9, "{}", eq.max_deviation);
    }

    #[test]
    fn lowering_preserves_semantics(c in arb_circuit(4, 25), gs in arb_gateset(), opt in 0u8..=3) {
        let n = native(&c, gs, opt);
        n.validate().unwrap();
        let set = gs.gateset();
        for g in n.gates() {
            prop_assert!(set.accepts(g), "{:?} not native to {}", g, gs);
            if gs == GateSetKind::Rigetti && g.kind == GateKind::RX {
                let a = qbench_core::angle::canonical(g.angle().unwrap());
                prop_assert!(RIGETTI_RX_ANGLES.iter().any(|r| (a - r).abs() < 1e-10), "rx({a})");
            }
        }
        let eq = equiv_up_to_phase(&n, &expand(&c), None).unwrap();
        prop_assert!(eq.max_deviation < 1e-9, "{}", eq.max_deviation);
    }

    #[test]
    fn routing_respects_the_device(c in arb_circuit(4, 25), gs in arb_gateset(), device in arb_device(), opt in 0u8..=3, degree in any::<bool>()) {
        let nat = native(&c, gs, opt);
        let strategy = if degree { LayoutStrategy::Degree } else { LayoutStrategy::Trivial };
        let m = map(&nat, &device, strategy, opt).unwrap();
        m.validate_on(Some(&device)).unwrap();
        prop_assert_eq!(m.level(), Level::Mapped);
        for g in m.gates().iter().filter(|g| g.is_two_qubit()) {
            prop_assert!(device.has_edge(g.qubits[0], g.qubits[1]));
        }
        if opt < 2 {
            prop_assert!(m.two_qubit_count() >= nat.two_qubit_count());
        }
        prop_assert_eq!(map(&nat, &device, strategy, opt).unwrap(), m.clone());

        // Statevector check: the mapped state is the logical state with
        // qubit i moved to physical final_layout[i].
        let fin = m.final_layout().unwrap();
        let logical = simulate(&nat).unwrap();
        let got = simulate(&m).unwrap();
        let mut want = vec![num_complex::Complex64::new(0.0, 0.0); 1 << device.num_qubits()];
        for (x, a) in logical.amplitudes().iter().enumerate() {
            want[qbench_core::sim::place(x, fin)] = *a;
        }
        let want = Statevector::from_amplitudes(want);
        prop_assert!(got.phase_distance(&want) < 1e-8, "{}", got.phase_distance(&want));
    }

    #[test]
    fn simulation_matches_the_unitary(c in arb_circuit(4, 30)) {
        let sv = simulate(&c).unwrap();
        let u = unitary_of(&c).unwrap();
        for i in 0..16 {
            prop_assert!((sv.amplitude(i) - u.get(i, 0)).norm() < 1e-10);
        }
    }

    #[test]
    fn every_gate_preserves_the_norm(c in arb_circuit(4, 30), basis in 0usize..16) {
        let mut sv = Statevector::basis(4, basis);
        for g in expand(&c).gates() {
            sv.apply(g).unwrap();
            prop_assert!((sv.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(a in arb_circuit(3, 15), b in arb_circuit(3, 15)) {
        prop_assert!(equiv_up_to_phase(&a, &a, None).unwrap().equivalent);
        let ab = equiv_up_to_phase(&a, &b, None).unwrap();
        let ba = equiv_up_to_phase(&b, &a, None).unwrap();
        prop_assert_eq!(ab.equivalent, ba.equivalent);
    }

    #[test]
    fn sequence_matrix_agrees_with_unitary_of(c in arb_circuit(3, 20)) {
        let m = sequence_matrix(3, c.gates()).unwrap();
        prop_assert!(m.max_abs_diff(&unitary_of(&c).unwrap()) < 1e-10);
    }
}

#[test]
fn generation_is_deterministic() {
    for a in Algorithm::ALL {
        for n in [2, 5, 9] {
            for seed in [0, 1, 42] {
                let spec = BenchmarkSpec::new(a, n).seed(seed);
                assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
            }
        }
    }
}

#[test]
fn variational_circuits_use_simple_kinds() {
    use GateKind::*;
    for a in [Algorithm::Qaoa, Algorithm::Vqe, Algorithm::Twolocal, Algorithm::Realamplitudes, Algorithm::Efficientsu2]
    {
        let c = generate(&BenchmarkSpec::new(a, 5)).unwrap();
        assert!(!c.is_bound(), "{a}");
        for g in c.gates() {
            assert!(matches!(g.kind, RY | RZ | RX | CX | CZ | H | P), "{a}: {}", g.kind);
        }
    }
}

#[test]
fn rigetti_rx_angles_are_restricted() {
    let c = generate(&BenchmarkSpec::new(Algorithm::Qft, 5)).unwrap();
    let n = native(&c, GateSetKind::Rigetti, 2);
    for g in n.gates().iter().filter(|g| g.kind == GateKind::RX) {
        let a = qbench_core::angle::canonical(g.angle().unwrap());
        assert!([PI / 2.0, -PI / 2.0, PI].iter().any(|r| (a - r).abs() < 1e-10));
    }
}
