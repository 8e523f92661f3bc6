// Copyright 2026 The iontrap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "iontrap/model.hpp"

namespace iontrap {

// Canonical Mathieu form x'' + [a - 2q cos(2 tau)] x = 0 with tau = omega_L t.
struct MathieuParams {
    double a;
    double q;  // sign kept; stability depends on |q| only
    double drive_angular_frequency;  // 2 omega_L for the optical potential
    double time_scale;               // omega_L, tau = time_scale * t
};

struct FloquetResult {
    Eigen::Matrix2d monodromy;
    std::array<std::complex<double>, 2> multipliers;
    bool stable;  // |trace| < 2
    // beta in [0, 1] when stable; growth rate mu = acosh(|trace|/2)/pi otherwise.
    double characteristic_exponent;
    // (|c_{+1}| + |c_{-1}|) / |c_0| of the Floquet solution; NaN when unstable.
    double micromotion_ratio;
    // Set when max(|a|, |q|) < 1e-14: stability and micromotion then come from
    // the small-parameter law instead of the numerics.
    bool stiffness_warning;
};

inline constexpr int kDefaultMonodromySteps = 4096;

// Maps the time-dependent optical potential V_eff [1 + cos(2 omega_L t)] on a lab
// axis to (a, q): a = (w_opt^2 + w_static^2)/omega_L^2, q = -w_opt^2/(2 omega_L^2).
// Throws PhysicsError(AnticonfinedAxis) if the axis is not stable.
MathieuParams optical_mathieu_params(const TrapSetup& setup, int axis);

FloquetResult monodromy_stability(const MathieuParams& params, int steps = kDefaultMonodromySteps);
FloquetResult monodromy_stability(double a, double q, int steps = kDefaultMonodromySteps);

// First characteristic curve a_0(q) (series), the lower edge of the first stability region.
double first_stability_boundary(double q);

// Three-harmonic approximation |q| [1/((2+b)^2-a) + 1/((2-b)^2-a)], b^2 = a + q^2/2,
// which tends to |q|/2 as a, q -> 0.
double micromotion_ratio_small_parameter(double a, double q);

double micromotion_ratio_optical(const TrapSetup& setup, int axis);

struct ScanRange {
    double min;
    double max;
    double step;

    std::size_t count() const;
    double value(std::size_t i) const { return min + static_cast<double>(i) * step; }
};

struct StabilityPoint {
    double a;
    double q;
    bool stable;
    double exponent;
};

// Row-major over a (outer) and q (inner). Points are evaluated on worker
// threads and written back by index, so the result does not depend on the
// thread count.
std::vector<StabilityPoint> stability_scan(const ScanRange& a_range, const ScanRange& q_range,
                                           int steps = kDefaultMonodromySteps,
                                           unsigned threads = 0);

// Header `a,q,stable,exponent`, 9 significant digits.
std::string stability_csv(const std::vector<StabilityPoint>& grid);

}  // namespace iontrap
