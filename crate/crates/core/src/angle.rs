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

//! Angle canonicalization shared by the passes and the comparison helpers.

use std::f64::consts::PI;

/// Angles closer than this are considered equal after canonicalization.
pub const ANGLE_EPS: f64 = 1e-10;

/// Maps an angle into `(-pi, pi]`.
pub fn canonical(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    // rem_euclid can land on exactly two_pi for tiny negative inputs.
    if t <= -PI {
        t += two_pi;
    }
    t
}

/// Leaves angles in `[-pi, pi]` untouched and wraps everything else into
/// `(-pi, pi]`. Lowering rules use this so that e.g. `-pi` survives as `-pi`.
pub fn normalize(theta: f64) -> f64 {
    if (-PI..=PI).contains(&theta) {
        theta
    } else {
        canonical(theta)
    }
}

/// True when the two angles coincide modulo `2*pi`.
pub fn angles_equal(a: f64, b: f64) -> bool {
    canonical(a - b).abs() < ANGLE_EPS
}

/// True when the angle is zero modulo `2*pi`.
pub fn is_zero(theta: f64) -> bool {
    canonical(theta).abs() < ANGLE_EPS
}
