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

//! Dense complex matrices and the defining unitary of every gate kind.
//!
//! Local ordering: for a gate on qubits `[q0, q1, ..]` the first listed qubit
//! is the most significant bit of the local index, so `CX` has the textbook
//! matrix swapping `|10>` and `|11>`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::ops::Mul;

use num_complex::Complex64;

use crate::circuit::{CircuitError, GateKind, Param};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Row-major square complex matrix of dimension `2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl UnitaryMatrix {
    pub fn zeros(dim: usize) -> Self {
        UnitaryMatrix { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix must be square");
            data.extend_from_slice(r);
        }
        UnitaryMatrix { dim, data }
    }

    pub fn from_vec(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        UnitaryMatrix { dim, data }
    }

    fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = *e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.data[c * self.dim + r] = self.get(r, c).conj();
            }
        }
        m
    }

    /// Kronecker product `self ⊗ other`; `self` occupies the high bits.
    pub fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut m = Self::zeros(dim);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                if a == ZERO {
                    continue;
                }
                for r2 in 0..other.dim {
                    for c2 in 0..other.dim {
                        m.data[(r1 * other.dim + r2) * dim + c1 * other.dim + c2] = a * other.get(r2, c2);
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        UnitaryMatrix { dim: self.dim, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() < tol
    }

    /// Smallest `‖self − e^{iφ}·other‖_max`, with `φ` chosen from the entry of
    /// largest magnitude in `self` (lowest index on ties).
    pub fn phase_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut best = 0;
        let mut best_norm = -1.0;
        for (i, v) in self.data.iter().enumerate() {
            let n = v.norm();
            if n > best_norm + 1e-12 {
                best = i;
                best_norm = n;
            }
        }
        let o = other.data[best];
        if o.norm() < 1e-12 {
            return self.max_abs_diff(other).max(best_norm);
        }
        let ratio = self.data[best] / o;
        let phase = ratio / ratio.norm();
        self.max_abs_diff(&other.scale(phase))
    }

    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        self.phase_distance(other) < tol
    }
}

impl Mul for &UnitaryMatrix {
    type Output = UnitaryMatrix;

    fn mul(self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut m = UnitaryMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    m.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        m
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn expi(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn rx(theta: f64) -> UnitaryMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    UnitaryMatrix::from_rows(&[&[c(co, 0.0), c(0.0, -s)], &[c(0.0, -s), c(co, 0.0)]])
}

pub fn ry(theta: f64) -> UnitaryMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    UnitaryMatrix::from_rows(&[&[c(co, 0.0), c(-s, 0.0)], &[c(s, 0.0), c(co, 0.0)]])
}

pub fn rz(theta: f64) -> UnitaryMatrix {
    UnitaryMatrix::diag(&[expi(-theta / 2.0), expi(theta / 2.0)])
}

pub fn phase(theta: f64) -> UnitaryMatrix {
    UnitaryMatrix::diag(&[ONE, expi(theta)])
}

pub fn u3(theta: f64, phi: f64, lambda: f64) -> UnitaryMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    UnitaryMatrix::from_rows(&[&[c(co, 0.0), -expi(lambda) * s], &[expi(phi) * s, expi(phi + lambda) * co]])
}

pub fn pauli_x() -> UnitaryMatrix {
    UnitaryMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]])
}

pub fn pauli_y() -> UnitaryMatrix {
    UnitaryMatrix::from_rows(&[&[ZERO, -I], &[I, ZERO]])
}

pub fn pauli_z() -> UnitaryMatrix {
    UnitaryMatrix::diag(&[ONE, -ONE])
}

pub fn hadamard() -> UnitaryMatrix {
    let h = c(FRAC_1_SQRT_2, 0.0);
    UnitaryMatrix::from_rows(&[&[h, h], &[h, -h]])
}

pub fn sqrt_x() -> UnitaryMatrix {
    let a = c(0.5, 0.5);
    let b = c(0.5, -0.5);
    UnitaryMatrix::from_rows(&[&[a, b], &[b, a]])
}

/// `target` controlled on all higher local bits (controls first).
pub fn controlled(target: &UnitaryMatrix, num_controls: usize) -> UnitaryMatrix {
    let dim = 2 * (1 << num_controls);
    let mut m = UnitaryMatrix::identity(dim);
    let base = dim - 2;
    for r in 0..2 {
        for col in 0..2 {
            m.set(base + r, base + col, target.get(r, col));
        }
    }
    m
}

fn swap() -> UnitaryMatrix {
    let mut m = UnitaryMatrix::zeros(4);
    m.set(0, 0, ONE);
    m.set(1, 2, ONE);
    m.set(2, 1, ONE);
    m.set(3, 3, ONE);
    m
}

/// `exp(-i θ/2 X⊗X)`.
pub fn rxx(theta: f64) -> UnitaryMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    let xx = pauli_x().kron(&pauli_x());
    let mut m = UnitaryMatrix::identity(4).scale(c(co, 0.0));
    for r in 0..4 {
        for col in 0..4 {
            let v = m.get(r, col) + xx.get(r, col) * c(0.0, -s);
            m.set(r, col, v);
        }
    }
    m
}

/// Echoed cross-resonance gate `(X⊗I − Y⊗X)/√2`, first qubit on the left.
pub fn ecr() -> UnitaryMatrix {
    let xi = pauli_x().kron(&UnitaryMatrix::identity(2));
    let yx = pauli_y().kron(&pauli_x());
    let mut m = UnitaryMatrix::zeros(4);
    for r in 0..4 {
        for col in 0..4 {
            m.set(r, col, (xi.get(r, col) - yx.get(r, col)) * FRAC_1_SQRT_2);
        }
    }
    m
}

/// Defining unitary of a gate kind with bound parameters.
///
/// Blocks, measurements and barriers have no standalone matrix here; the
/// simulator handles blocks by applying their bodies.
pub fn gate_matrix(kind: &GateKind, params: &[Param]) -> Result<UnitaryMatrix, CircuitError> {
    let vals: Vec<f64> = params
        .iter()
        .map(|p| match p {
            Param::Value(v) => Ok(*v),
            Param::Symbol(s) => Err(CircuitError::UnboundParam(s.clone())),
        })
        .collect::<Result<_, _>>()?;
    if vals.len() != kind.num_params() {
        return Err(CircuitError::ArityMismatch {
            kind: kind.name(),
            what: "parameters",
            expected: kind.num_params(),
            got: vals.len(),
        });
    }
    let t = vals.first().copied().unwrap_or(0.0);
    Ok(match kind {
        GateKind::I => UnitaryMatrix::identity(2),
        GateKind::H => hadamard(),
        GateKind::X => pauli_x(),
        GateKind::Y => pauli_y(),
        GateKind::Z => pauli_z(),
        GateKind::S => phase(PI / 2.0),
        GateKind::Sdg => phase(-PI / 2.0),
        GateKind::T => phase(PI / 4.0),
        GateKind::Tdg => phase(-PI / 4.0),
        GateKind::SX => sqrt_x(),
        GateKind::RX => rx(t),
        GateKind::RY => ry(t),
        GateKind::RZ => rz(t),
        GateKind::P => phase(t),
        GateKind::U => u3(vals[0], vals[1], vals[2]),
        GateKind::CX => controlled(&pauli_x(), 1),
        GateKind::CZ => controlled(&pauli_z(), 1),
        GateKind::CP => controlled(&phase(t), 1),
        GateKind::Swap => swap(),
        GateKind::RXX => rxx(t),
        GateKind::ECR => ecr(),
        GateKind::Mcx(k) => controlled(&pauli_x(), *k),
        GateKind::Mcz(k) => controlled(&pauli_z(), *k),
        GateKind::Mcp(k) => controlled(&phase(t), *k),
        GateKind::Block(b) => {
            return Err(CircuitError::InvalidLevel {
                level: crate::circuit::Level::Alg,
                reason: format!("block {} has no closed-form matrix", b.name),
            })
        }
        GateKind::Measure | GateKind::Barrier => {
            return Err(CircuitError::InvalidLevel {
                level: crate::circuit::Level::Alg,
                reason: format!("{kind} is not unitary"),
            })
        }
    })
}

/// Unitary of a gate sequence on `n` local wires (time order), built by
/// embedding each gate matrix. Barriers are identities and blocks are
/// expanded. Intended for small template checks.
pub fn sequence_matrix(n: usize, gates: &[crate::circuit::Gate]) -> Result<UnitaryMatrix, CircuitError> {
    let mut acc = UnitaryMatrix::identity(1 << n);
    for g in gates {
        let m = match &g.kind {
            GateKind::Barrier => continue,
            GateKind::Block(b) => {
                let body: Vec<_> = b.body.iter().map(|x| x.remapped(&g.qubits)).collect();
                sequence_matrix(n, &body)?
            }
            _ => embed(&gate_matrix(&g.kind, &g.params)?, &g.qubits, n),
        };
        acc = &m * &acc;
    }
    Ok(acc)
}

/// Embed a local gate matrix acting on `qubits` into an `n`-qubit space where
/// qubit 0 is the least-significant bit of the global index.
pub fn embed(local: &UnitaryMatrix, qubits: &[usize], n: usize) -> UnitaryMatrix {
    let dim = 1usize << n;
    let k = qubits.len();
    let mut m = UnitaryMatrix::zeros(dim);
    let local_index = |global: usize| -> usize {
        let mut l = 0;
        for (i, &q) in qubits.iter().enumerate() {
            if (global >> q) & 1 == 1 {
                l |= 1 << (k - 1 - i);
            }
        }
        l
    };
    let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    for col in 0..dim {
        let lc = local_index(col);
        let rest = col & !mask;
        for lr in 0..(1usize << k) {
            let v = local.get(lr, lc);
            if v == ZERO {
                continue;
            }
            let mut row = rest;
            for (i, &q) in qubits.iter().enumerate() {
                if (lr >> (k - 1 - i)) & 1 == 1 {
                    row |= 1 << q;
                }
            }
            m.set(row, col, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_kinds() -> Vec<(GateKind, Vec<Param>)> {
        let a = Param::Value(0.731);
        vec![
            (GateKind::I, vec![]),
            (GateKind::H, vec![]),
            (GateKind::X, vec![]),
            (GateKind::Y, vec![]),
            (GateKind::Z, vec![]),
            (GateKind::S, vec![]),
            (GateKind::Sdg, vec![]),
            (GateKind::T, vec![]),
            (GateKind::Tdg, vec![]),
            (GateKind::SX, vec![]),
            (GateKind::RX, vec![a.clone()]),
            (GateKind::RY, vec![a.clone()]),
            (GateKind::RZ, vec![a.clone()]),
            (GateKind::P, vec![a.clone()]),
            (GateKind::U, vec![a.clone(), Param::Value(-1.2), Param::Value(2.5)]),
            (GateKind::CX, vec![]),
            (GateKind::CZ, vec![]),
            (GateKind::CP, vec![a.clone()]),
            (GateKind::Swap, vec![]),
            (GateKind::RXX, vec![a.clone()]),
            (GateKind::ECR, vec![]),
            (GateKind::Mcx(3), vec![]),
            (GateKind::Mcz(2), vec![]),
            (GateKind::Mcp(2), vec![a]),
        ]
    }

    #[test]
    fn every_kind_is_unitary() {
        for (kind, params) in all_kinds() {
            let m = gate_matrix(&kind, &params).unwrap();
            assert!(m.unitarity_error() < 1e-12, "{kind} not unitary");
            assert_eq!(m.num_qubits(), kind.num_qubits().unwrap());
        }
    }

    #[test]
    fn rz_zero_is_identity() {
        let m = gate_matrix(&GateKind::RZ, &[Param::Value(0.0)]).unwrap();
        assert!(m.max_abs_diff(&UnitaryMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn x_times_rz_minus_pi_is_ry_pi_up_to_i() {
        let prod = &pauli_x() * &rz(-PI);
        let target = ry(PI).scale(I);
        assert!(prod.max_abs_diff(&target) < 1e-15);
        assert!(prod.equal_up_to_phase(&ry(PI), 1e-12));
    }

    #[test]
    fn cx_swaps_10_and_11() {
        let m = gate_matrix(&GateKind::CX, &[]).unwrap();
        assert_eq!(m.get(3, 2), ONE);
        assert_eq!(m.get(2, 3), ONE);
        assert_eq!(m.get(0, 0), ONE);
        assert_eq!(m.get(1, 1), ONE);
        assert_eq!(m.get(2, 2), ZERO);
    }

    #[test]
    fn symbol_is_unbound() {
        let err = gate_matrix(&GateKind::RZ, &[Param::symbol("a")]).unwrap_err();
        assert_eq!(err, CircuitError::UnboundParam("a".into()));
    }

    #[test]
    fn embed_respects_lsb_order() {
        // CX with control on qubit 0, target qubit 1: |01> (index 1) -> |11> (index 3)
        let m = embed(&gate_matrix(&GateKind::CX, &[]).unwrap(), &[0, 1], 2);
        assert_eq!(m.get(3, 1), ONE);
        assert_eq!(m.get(2, 2), ONE);
    }
}
