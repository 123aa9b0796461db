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

//! Dense statevector and unitary simulation, used as the verification oracle
//! for every equivalence and distribution check in the toolkit.

use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, GateKind};
use crate::matrix::{gate_matrix, UnitaryMatrix, C64};

pub const DEFAULT_STATE_CAP: usize = 14;
pub const DEFAULT_UNITARY_CAP: usize = 10;
/// Deviation below which two unitaries are reported equivalent.
pub const EQUIV_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("{qubits} qubits exceeds the simulation cap of {cap}")]
    TooLarge { qubits: usize, cap: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("cannot simulate {0}")]
    NonUnitary(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl Statevector {
    /// `|0…0>` on `n` qubits.
    pub fn zero(n: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[0] = C64::new(1.0, 0.0);
        Statevector { num_qubits: n, amps }
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[index] = C64::new(1.0, 0.0);
        Statevector { num_qubits: n, amps }
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Self {
        assert!(amps.len().is_power_of_two());
        Statevector { num_qubits: amps.len().trailing_zeros() as usize, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }
    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }
    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability that the qubits in `qubits` read `value` (bit `i` of
    /// `value` is the outcome of `qubits[i]`).
    pub fn marginal(&self, qubits: &[usize], value: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(idx, _)| qubits.iter().enumerate().all(|(i, &q)| ((idx >> q) & 1) == ((value >> i) & 1)))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// `max |a_i − e^{iφ} b_i|` after aligning on the largest entry of `self`.
    pub fn phase_distance(&self, other: &Statevector) -> f64 {
        let (best, _) =
            self.amps
                .iter()
                .enumerate()
                .fold((0, -1.0), |(bi, bn), (i, v)| if v.norm() > bn + 1e-12 { (i, v.norm()) } else { (bi, bn) });
        let o = other.amps[best];
        if o.norm() < 1e-12 {
            return f64::INFINITY;
        }
        let r = self.amps[best] / o;
        let ph = r / r.norm();
        self.amps.iter().zip(&other.amps).map(|(x, y)| (x - y * ph).norm()).fold(0.0, f64::max)
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        apply_gate(&mut self.amps, gate)
    }
}

/// A gate reduced to index masks and a dense matrix, ready to apply to
/// many vectors.
enum Kernel {
    Controlled { cmask: usize, tbit: usize, m: [C64; 4] },
    Local { mask: usize, offsets: Vec<usize>, m: Vec<C64> },
}

fn compile(gate: &Gate, out: &mut Vec<Kernel>) -> Result<(), SimError> {
    match &gate.kind {
        GateKind::Barrier | GateKind::I => {}
        GateKind::Measure => return Err(SimError::NonUnitary("measure".into())),
        GateKind::Block(b) => {
            for g in &b.body {
                compile(&g.remapped(&gate.qubits), out)?;
            }
        }
        GateKind::Mcx(_) | GateKind::Mcz(_) | GateKind::Mcp(_) | GateKind::CX | GateKind::CZ | GateKind::CP => {
            let k = gate.qubits.len() - 1;
            let t = gate_matrix(&target_kind(&gate.kind), &gate.params)?;
            out.push(Kernel::Controlled {
                cmask: gate.qubits[..k].iter().map(|&q| 1usize << q).sum(),
                tbit: 1 << gate.qubits[k],
                m: [t.get(0, 0), t.get(0, 1), t.get(1, 0), t.get(1, 1)],
            });
        }
        kind => {
            let m = gate_matrix(kind, &gate.params)?;
            let qubits = &gate.qubits;
            let k = qubits.len();
            let size = 1usize << k;
            let offsets = (0..size)
                .map(|l| {
                    qubits
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| (l >> (k - 1 - i)) & 1 == 1)
                        .map(|(_, &q)| 1usize << q)
                        .sum()
                })
                .collect();
            let data = (0..size * size).map(|i| m.get(i / size, i % size)).collect();
            out.push(Kernel::Local { mask: qubits.iter().map(|&q| 1usize << q).sum(), offsets, m: data });
        }
    }
    Ok(())
}

fn compile_all<'a>(gates: impl IntoIterator<Item = &'a Gate>) -> Result<Vec<Kernel>, SimError> {
    let mut out = Vec::new();
    for g in gates {
        compile(g, &mut out)?;
    }
    Ok(out)
}

fn run(amps: &mut [C64], kernels: &[Kernel]) {
    let mut buf = Vec::new();
    for k in kernels {
        match k {
            Kernel::Controlled { cmask, tbit, m } => {
                for i in 0..amps.len() {
                    if i & tbit == 0 && i & cmask == *cmask {
                        let j = i | tbit;
                        let (x, y) = (amps[i], amps[j]);
                        amps[i] = m[0] * x + m[1] * y;
                        amps[j] = m[2] * x + m[3] * y;
                    }
                }
            }
            Kernel::Local { mask, offsets, m } => {
                let size = offsets.len();
                buf.resize(size, C64::new(0.0, 0.0));
                for base in 0..amps.len() {
                    if base & mask != 0 {
                        continue;
                    }
                    for (l, off) in offsets.iter().enumerate() {
                        buf[l] = amps[base + off];
                    }
                    for (r, off) in offsets.iter().enumerate() {
                        let row = &m[r * size..(r + 1) * size];
                        amps[base + off] = row.iter().zip(&buf).map(|(a, b)| a * b).sum();
                    }
                }
            }
        }
    }
}

fn apply_gate(amps: &mut [C64], gate: &Gate) -> Result<(), SimError> {
    run(amps, &compile_all([gate])?);
    Ok(())
}

fn target_kind(kind: &GateKind) -> GateKind {
    match kind {
        GateKind::Mcx(_) | GateKind::CX => GateKind::X,
        GateKind::Mcz(_) | GateKind::CZ => GateKind::Z,
        _ => GateKind::P,
    }
}

/// Outcome of an equivalence check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub max_deviation: f64,
}

/// Dense simulator with configurable size caps.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub state_cap: usize,
    pub unitary_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { state_cap: DEFAULT_STATE_CAP, unitary_cap: DEFAULT_UNITARY_CAP }
    }
}

impl Oracle {
    /// `U|0…0>` for a bound, measurement-free circuit.
    pub fn simulate(&self, circuit: &Circuit) -> Result<Statevector, SimError> {
        let n = circuit.num_qubits();
        if n > self.state_cap {
            return Err(SimError::TooLarge { qubits: n, cap: self.state_cap });
        }
        let kernels = compile_all(circuit.gates())?;
        let mut sv = Statevector::zero(n);
        run(&mut sv.amps, &kernels);
        Ok(sv)
    }

    /// Full `2^n × 2^n` product of the gate matrices in circuit order.
    pub fn unitary_of(&self, circuit: &Circuit) -> Result<UnitaryMatrix, SimError> {
        let n = circuit.num_qubits();
        if n > self.unitary_cap {
            return Err(SimError::TooLarge { qubits: n, cap: self.unitary_cap });
        }
        let dim = 1usize << n;
        let kernels = compile_all(circuit.gates())?;
        let columns: Vec<Vec<C64>> = (0..dim)
            .into_par_iter()
            .map(|col| {
                let mut sv = Statevector::basis(n, col);
                run(&mut sv.amps, &kernels);
                sv.amps
            })
            .collect();
        let mut m = UnitaryMatrix::zeros(dim);
        for (col, amps) in columns.into_iter().enumerate() {
            for (row, v) in amps.into_iter().enumerate() {
                m.set(row, col, v);
            }
        }
        Ok(m)
    }

    /// Checks `U_a ≈ e^{iφ} P_final U_b P_initial⁻¹`.
    ///
    /// `b` may be narrower than `a`; it is padded with identity on the extra
    /// wires. The layouts are permutations of `a`'s wires.
    pub fn equiv_up_to_phase(
        &self,
        a: &Circuit,
        b: &Circuit,
        layouts: Option<(&[usize], &[usize])>,
    ) -> Result<Equivalence, SimError> {
        let n = a.num_qubits();
        if b.num_qubits() > n {
            return Err(SimError::ShapeMismatch(format!("{} qubits vs {} qubits", n, b.num_qubits())));
        }
        if layouts.is_none() && b.num_qubits() != n {
            return Err(SimError::ShapeMismatch(format!("{} qubits vs {} qubits without a layout", n, b.num_qubits())));
        }
        let ua = self.unitary_of(a)?;
        let ub = self.unitary_of(&b.widened(n))?;
        equiv_unitaries(&ua, &ub, layouts)
    }
}

/// [`Oracle::equiv_up_to_phase`] on unitaries already in hand; `ub` must
/// have the width of `ua`.
pub fn equiv_unitaries(
    ua: &UnitaryMatrix,
    ub: &UnitaryMatrix,
    layouts: Option<(&[usize], &[usize])>,
) -> Result<Equivalence, SimError> {
    if ua.dim() != ub.dim() {
        return Err(SimError::ShapeMismatch(format!("dimension {} vs {}", ua.dim(), ub.dim())));
    }
    let n = ua.dim().trailing_zeros() as usize;
    let permuted;
    let target = match layouts {
        None => ub,
        Some((initial, fin)) => {
            for l in [initial, fin] {
                if !crate::circuit::is_permutation(l, n) {
                    return Err(SimError::ShapeMismatch(format!("layout {l:?} is not a permutation of {n} wires")));
                }
            }
            permuted = permute(ub, initial, fin);
            &permuted
        }
    };
    let dev = ua.phase_distance(target);
    Ok(Equivalence { equivalent: dev < EQUIV_TOL, max_deviation: dev })
}

/// `P_final · U · P_initial⁻¹` for wire placements `layout[virtual] = physical`.
pub fn permute(u: &UnitaryMatrix, initial: &[usize], fin: &[usize]) -> UnitaryMatrix {
    let dim = u.dim();
    let inv_i: Vec<usize> = (0..dim).map(|p| unplace(p, initial)).collect();
    let inv_f: Vec<usize> = (0..dim).map(|p| unplace(p, fin)).collect();
    let mut m = UnitaryMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            m.set(r, c, u.get(inv_f[r], inv_i[c]));
        }
    }
    m
}

/// Maps a virtual basis index to its physical index under `layout`.
pub fn place(index: usize, layout: &[usize]) -> usize {
    layout.iter().enumerate().filter(|(v, _)| (index >> v) & 1 == 1).map(|(_, &p)| 1usize << p).sum()
}

fn unplace(index: usize, layout: &[usize]) -> usize {
    layout.iter().enumerate().filter(|(_, &p)| (index >> p) & 1 == 1).map(|(v, _)| 1usize << v).sum()
}

pub fn simulate(circuit: &Circuit) -> Result<Statevector, SimError> {
    Oracle::default().simulate(circuit)
}

pub fn unitary_of(circuit: &Circuit) -> Result<UnitaryMatrix, SimError> {
    Oracle::default().unitary_of(circuit)
}

pub fn equiv_up_to_phase(
    a: &Circuit,
    b: &Circuit,
    layouts: Option<(&[usize], &[usize])>,
) -> Result<Equivalence, SimError> {
    Oracle::default().equiv_up_to_phase(a, b, layouts)
}
