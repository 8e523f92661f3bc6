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

#include "iontrap/mathieu_floquet.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <thread>

#include "iontrap/dipole_trap.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/ode.hpp"

namespace iontrap {

namespace {

constexpr double kStiffThreshold = 1e-14;

bool is_dynamically_stable(double a, double q) { return a > first_stability_boundary(q); }

// Fourier coefficient c_n of a pi-periodic sampled function, n in harmonics of 2 tau.
std::complex<double> fourier_coefficient(const std::vector<std::complex<double>>& phi, int n) {
    const std::size_t count = phi.size();
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < count; ++j) {
        const double angle = -2.0 * n * kPi * static_cast<double>(j) / static_cast<double>(count);
        sum += phi[j] * std::polar(1.0, angle);
    }
    return sum / static_cast<double>(count);
}

}  // namespace

double first_stability_boundary(double q) {
    const double q2 = q * q;
    return -q2 / 2.0 + 7.0 * q2 * q2 / 128.0 - 29.0 * q2 * q2 * q2 / 2304.0 +
           68687.0 * q2 * q2 * q2 * q2 / 18874368.0;
}

double micromotion_ratio_small_parameter(double a, double q) {
    const double beta2 = a + 0.5 * q * q;
    if (beta2 <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double beta = std::sqrt(beta2);
    return std::abs(q) * (1.0 / ((2.0 + beta) * (2.0 + beta) - a) + 1.0 / ((2.0 - beta) * (2.0 - beta) - a));
}

MathieuParams optical_mathieu_params(const TrapSetup& setup, int axis) {
    if (axis < 0 || axis > 2) throw ConfigError("axis index must be 0, 1 or 2");
    const auto freq = axis_frequencies(setup, PotentialModel::low_saturation)[axis];
    const double wl = setup.beam.omega_L();
    MathieuParams p{};
    p.a = freq.combined_squared / (wl * wl);
    p.q = -freq.optical_squared / (2.0 * wl * wl);
    p.drive_angular_frequency = 2.0 * wl;
    p.time_scale = wl;
    if (p.a <= 0.0 && !is_dynamically_stable(p.a, p.q)) {
        throw PhysicsError(PhysicsError::Kind::AnticonfinedAxis,
                           "axis " + std::to_string(axis) + " is anticonfined (a = " +
                               std::to_string(p.a) + ")");
    }
    return p;
}

FloquetResult monodromy_stability(const MathieuParams& params, int steps) {
    return monodromy_stability(params.a, params.q, steps);
}

FloquetResult monodromy_stability(double a, double q, int steps) {
    if (!std::isfinite(a) || !std::isfinite(q)) throw ConfigError("Mathieu parameters must be finite");
    if (steps < 16) throw ConfigError("monodromy needs at least 16 steps per period");

    // Two fundamental solutions side by side: (x1, v1, x2, v2).
    using S = ode::State<4>;
    auto rhs = [a, q](double tau, const S& y) -> S {
        const double w2 = a - 2.0 * q * std::cos(2.0 * tau);
        return {y[1], -w2 * y[0], y[3], -w2 * y[2]};
    };
    const double h = kPi / steps;
    std::vector<double> x1(steps), x2(steps);
    const S end = ode::integrate_rk8<4>(rhs, 0.0, S{1.0, 0.0, 0.0, 1.0}, h, steps,
                                        [&](long n, double, const S& y) {
                                            if (n < steps) {
                                                x1[n] = y[0];
                                                x2[n] = y[2];
                                            }
                                        });

    FloquetResult out{};
    out.monodromy << end[0], end[2], end[1], end[3];
    const double trace = out.monodromy.trace();
    const double det = out.monodromy.determinant();
    const std::complex<double> disc = std::sqrt(std::complex<double>(trace * trace - 4.0 * det, 0.0));
    out.multipliers = {(trace + disc) / 2.0, (trace - disc) / 2.0};
    out.stiffness_warning = std::max(std::abs(a), std::abs(q)) < kStiffThreshold;

    if (out.stiffness_warning) {
        // The trace equals 2 - O(1e-14) here; decide from the analytic boundary.
        out.stable = a + 0.5 * q * q > 0.0;
        out.characteristic_exponent = out.stable ? std::sqrt(a + 0.5 * q * q) : 0.0;
        out.micromotion_ratio = out.stable ? micromotion_ratio_small_parameter(a, q)
                                           : std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    out.stable = std::abs(trace) < 2.0;
    if (!out.stable) {
        out.characteristic_exponent = std::acosh(std::abs(trace) / 2.0) / kPi;
        out.micromotion_ratio = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.characteristic_exponent = std::acos(std::clamp(trace / 2.0, -1.0, 1.0)) / kPi;

    // Floquet solution x(tau) = exp(i beta tau) phi(tau) for the multiplier
    // lambda = exp(i pi beta) with Im(lambda) >= 0.
    const double beta = out.characteristic_exponent;
    const std::complex<double> lambda = std::polar(1.0, kPi * beta);
    const auto& m = out.monodromy;
    // Eigenvector of m for lambda, from whichever row is better conditioned.
    std::complex<double> v1, v2;
    if (std::abs(m(0, 1)) + std::abs(lambda - m(0, 0)) >= std::abs(m(1, 0)) + std::abs(lambda - m(1, 1))) {
        v1 = m(0, 1);
        v2 = lambda - m(0, 0);
    } else {
        v1 = lambda - m(1, 1);
        v2 = m(1, 0);
    }

    std::vector<std::complex<double>> phi(steps);
    for (int j = 0; j < steps; ++j) {
        const double tau = j * h;
        phi[j] = (x1[j] * v1 + x2[j] * v2) * std::polar(1.0, -beta * tau);
    }
    constexpr int kHarmonics = 3;
    std::array<double, 2 * kHarmonics + 1> mag{};
    for (int n = -kHarmonics; n <= kHarmonics; ++n) mag[n + kHarmonics] = std::abs(fourier_coefficient(phi, n));
    // The secular line is the dominant harmonic; its neighbours are the drive sidebands.
    int peak = 1;
    for (int i = 1; i < 2 * kHarmonics; ++i)
        if (mag[i] > mag[peak]) peak = i;
    out.micromotion_ratio = (mag[peak - 1] + mag[peak + 1]) / mag[peak];
    return out;
}

double micromotion_ratio_optical(const TrapSetup& setup, int axis) {
    const auto p = optical_mathieu_params(setup, axis);
    return micromotion_ratio_small_parameter(p.a, p.q);
}

std::size_t ScanRange::count() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step))
        throw ConfigError("scan range must be finite");
    if (!(step > 0.0)) throw ConfigError("scan step must be positive");
    if (max < min) throw ConfigError("scan range max must be >= min");
    const double n = std::floor((max - min) / step + 1e-9);
    if (n > 1e7) throw ConfigError("scan range has too many points");
    return static_cast<std::size_t>(n) + 1;
}

std::vector<StabilityPoint> stability_scan(const ScanRange& a_range, const ScanRange& q_range, int steps,
                                           unsigned threads) {
    const std::size_t na = a_range.count();
    const std::size_t nq = q_range.count();
    std::vector<StabilityPoint> grid(na * nq);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nq; ++j) grid[i * nq + j] = {a_range.value(i), q_range.value(j), false, 0.0};

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
    auto work = [&](unsigned worker) {
        for (std::size_t idx = worker; idx < grid.size(); idx += threads) {
            const auto r = monodromy_stability(grid[idx].a, grid[idx].q, steps);
            grid[idx].stable = r.stable;
            grid[idx].exponent = r.characteristic_exponent;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    return grid;
}

std::string stability_csv(const std::vector<StabilityPoint>& grid) {
    std::string out = "a,q,stable,exponent\n";
    char line[128];
    for (const auto& p : grid) {
        std::snprintf(line, sizeof line, "%.9g,%.9g,%d,%.9g\n", p.a, p.q, p.stable ? 1 : 0, p.exponent);
        out += line;
    }
    return out;
}

}  // namespace iontrap
