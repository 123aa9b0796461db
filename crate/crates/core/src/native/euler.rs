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

use num_complex::Complex64;

use crate::matrix::UnitaryMatrix;

/// `U = e^{iα} RZ(φ) RY(θ) RZ(λ)` with `θ ∈ [0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Zyz {
    pub global_phase: f64,
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

const DEGENERATE: f64 = 1e-12;

/// ZYZ Euler angles of a 2×2 unitary. When `θ` is 0 (or π) only the sum (or
/// difference) of `φ` and `λ` is determined; the free angle is set to zero.
pub fn zyz_decompose(u: &UnitaryMatrix) -> Zyz {
    assert_eq!(u.dim(), 2, "ZYZ decomposition needs a single-qubit unitary");
    let det = u.get(0, 0) * u.get(1, 1) - u.get(0, 1) * u.get(1, 0);
    let alpha = det.arg() / 2.0;
    let inv = Complex64::from_polar(1.0, -alpha);
    let a = u.get(0, 0) * inv;
    let b = u.get(1, 0) * inv;
    let theta = 2.0 * b.norm().atan2(a.norm());
    let (phi, lambda) = if b.norm() < DEGENERATE {
        (0.0, -2.0 * a.arg())
    } else if a.norm() < DEGENERATE {
        (2.0 * b.arg(), 0.0)
    } else {
        let sum = -2.0 * a.arg();
        let diff = 2.0 * b.arg();
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    Zyz { global_phase: alpha, theta, phi, lambda }
}
