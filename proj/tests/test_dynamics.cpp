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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "iontrap/dynamics.hpp"
#include "iontrap/errors.hpp"
#include "reference.hpp"

using namespace iontrap;
using iontrap::testing::mg24_setup;
using iontrap::testing::rel;

namespace {

// Independent frequency oracle: upward zero crossings with linear interpolation.
double zero_crossing_frequency(const TrajectoryRecord& rec, int c) {
    double mean = 0.0;
    for (const auto& p : rec.positions) mean += p[c];
    mean /= static_cast<double>(rec.size());
    std::vector<double> crossings;
    for (std::size_t i = 1; i < rec.size(); ++i) {
        const double a = rec.positions[i - 1][c] - mean;
        const double b = rec.positions[i][c] - mean;
        if (a < 0.0 && b >= 0.0) {
            crossings.push_back(rec.times[i - 1] + (rec.times[i] - rec.times[i - 1]) * a / (a - b));
        }
    }
    REQUIRE(crossings.size() > 2);
    return kTwoPi * static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());
}

FullOptions conservative(std::size_t samples = 4000) {
    FullOptions o;
    o.radiation_pressure = false;
    o.samples = samples;
    return o;
}

DrivenOscillatorSpec driven(double ratio, double charge_e = 1.0) {
    DrivenOscillatorSpec s{};
    s.omega0 = kTwoPi * 100e3;
    s.drive_frequency = ratio * s.omega0;
    s.charge = charge_e * kConstants.e_charge;
    s.field_amplitude = 0.01;
    s.mass = 24.0 * kConstants.atomic_mass_unit;
    return s;
}

}  // namespace

TEST_CASE("the focus is a fixed point of the conservative motion") {
    const TrajectoryRecord rec = integrate_full(mg24_setup(true), {}, 1e-4, conservative(100));
    for (const auto& p : rec.positions) CHECK(p.norm() == 0.0);
}

TEST_CASE("record layout and metadata") {
    const TrapSetup s = mg24_setup(true);
    InitialState init;
    init.position = Vec3(70e-9, 0, 0);
    const TrajectoryRecord rec = integrate_full(s, init, 2e-5, conservative(200));
    CHECK(rec.size() == 201);
    CHECK(rec.positions.size() == rec.size());
    CHECK(rec.velocities.size() == rec.size());
    CHECK(rec.kinetic.size() == rec.size());
    CHECK(rec.potential.size() == rec.size());
    CHECK(rec.total.size() == rec.size());
    CHECK(rec.times.front() == 0.0);
    CHECK(rec.times.back() == 2e-5);
    for (std::size_t i = 1; i < rec.size(); ++i) CHECK(rec.times[i] > rec.times[i - 1]);
    CHECK(rec.metadata.integrator == "dormand-prince-5(4)");
    CHECK(rec.metadata.rel_tol == 1e-10);
    CHECK(rec.metadata.abs_tol == 1e-16);
    CHECK(rec.metadata.setup_hash == setup_hash(s));
    CHECK(rec.metadata.accepted_steps > 0);
    CHECK(rec.metadata.warnings.empty());
    CHECK(rel(rec.total[0], rec.kinetic[0] + rec.potential[0]) < 1e-15);
}

TEST_CASE("small radial oscillation runs at the hessian frequency") {
    const TrapSetup s = mg24_setup(true);
    const double expected = trap_summary(s).axes_exact_log[0].combined();
    InitialState init;
    init.position = Vec3(0.01 * s.beam.waist(), 0, 0);
    const TrajectoryRecord rec = integrate_full(s, init, 2e-4, conservative());
    CHECK(dominant_component(rec) == 0);
    CHECK(rel(zero_crossing_frequency(rec, 0), expected) < 1e-3);
    CHECK(rel(estimate_frequency(rec, 0), expected) < 1e-3);
}

TEST_CASE("low-saturation model oscillates at the low-saturation hessian frequency") {
    const TrapSetup s = mg24_setup(true);
    const double expected = trap_summary(s).axes[0].combined();
    InitialState init;
    init.position = Vec3(0.01 * s.beam.waist(), 0, 0);
    FullOptions o = conservative();
    o.potential = PotentialModel::low_saturation;
    const TrajectoryRecord rec = integrate_full(s, init, 2e-4, o);
    CHECK(rel(zero_crossing_frequency(rec, 0), expected) < 1e-3);
}

TEST_CASE("small-amplitude frequencies converge to the hessian value") {
    const TrapSetup s = mg24_setup(true);
    const double expected = trap_summary(s).axes_exact_log[0].combined();
    std::vector<double> f;
    for (double amp : {0.02, 0.01, 0.005}) {
        InitialState init;
        init.position = Vec3(amp * s.beam.waist(), 0, 0);
        f.push_back(zero_crossing_frequency(integrate_full(s, init, 2e-3, conservative(40000)), 0));
    }
    const double d1 = f[0] - f[1];
    const double d2 = f[1] - f[2];
    // quadratic amplitude dependence: successive differences shrink by 4
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.05));
    const double extrapolated = f[2] - d2 / 3.0;
    CHECK(rel(extrapolated, expected) < 1e-6);
    CHECK(std::abs(extrapolated - expected) < std::abs(f[2] - expected));
}

TEST_CASE("conservative energy drift over a thousand periods") {
    const TrapSetup s = mg24_setup(true);
    const double w = trap_summary(s).axes_exact_log[0].combined();
    InitialState init;
    init.position = Vec3(0.01 * s.beam.waist(), 0, 0);
    const TrajectoryRecord rec = integrate_full(s, init, 1000.0 * kTwoPi / w, conservative(20000));
    double drift = 0.0;
    for (double e : rec.total) drift = std::max(drift, std::abs(e - rec.total[0]));
    CHECK(drift / std::abs(rec.total[0]) < 1e-8);
}

TEST_CASE("radiation pressure displaces the mean axial position to the equilibrium shift") {
    const TrapSetup s = mg24_setup(true);
    const double shift = equilibrium_shift(s);
    const double wz = trap_summary(s).axes_exact_log[2].combined();
    FullOptions o;
    o.samples = 20000;
    const TrajectoryRecord rec = integrate_full(s, {}, 100.0 * kTwoPi / wz, o);
    double mean = 0.0;
    for (std::size_t i = 0; i + 1 < rec.size(); ++i) mean += rec.positions[i][2];
    mean /= static_cast<double>(rec.size() - 1);
    CHECK(rel(mean, shift) < 0.01);
}

TEST_CASE("equilibrium shift") {
    const TrapSetup s = mg24_setup(true);
    CHECK(equilibrium_shift(s, false) == 0.0);

    const double shift = equilibrium_shift(s);
    const double linear = 6.427214660705483e-07;  // F_rad / (M omega_z^2)
    CHECK(rel(shift, linear) < 0.05);
    CHECK(rel(equilibrium_shift(s, true, PotentialModel::low_saturation), 6.427151155985143e-07) < 0.05);

    const double doubled = equilibrium_shift(mg24_setup(true, 1.0, 50e-3, 2.0 * testing::kLinewidth));
    CHECK(rel(doubled / shift, 2.0) < 0.05);

    // Without the static field the optical axial force cannot balance radiation pressure.
    try {
        equilibrium_shift(mg24_setup(false));
        FAIL("expected an exception");
    } catch (const PhysicsError& e) {
        CHECK(e.kind() == PhysicsError::Kind::NoRoot);
    }
}

TEST_CASE("escape and far-start diagnostics") {
    const TrapSetup s = mg24_setup(false);
    InitialState fast;
    fast.velocity = Vec3(100.0, 0, 0);
    try {
        integrate_full(s, fast, 1e-3, conservative(10));
        FAIL("expected an exception");
    } catch (const PhysicsError& e) {
        CHECK(e.kind() == PhysicsError::Kind::EscapedTrap);
    }

    InitialState far;
    far.position = Vec3(6.0 * s.beam.waist(), 0, 0);
    const TrajectoryRecord rec = integrate_full(s, far, 1e-6, conservative(10));
    CHECK(rec.metadata.warnings.size() == 1);

    CHECK_THROWS_AS(integrate_full(s, {}, 0.0), ConfigError);
    CHECK_THROWS_AS(integrate_full(s, {}, 1e-3, conservative(0)), ConfigError);
    InitialState bad;
    bad.position = Vec3(NAN, 0, 0);
    CHECK_THROWS_AS(integrate_full(s, bad, 1e-3), ConfigError);
}

TEST_CASE("driven oscillator matches the analytic steady amplitude and phase") {
    for (double ratio : {10.0, 100.0, 1000.0}) {
        const DrivenOscillatorSpec spec = driven(ratio);
        const double t_end = 2.0 * kTwoPi / spec.omega0;
        const TrajectoryRecord rec = integrate_driven(spec, t_end);
        const DrivenSolution exact = analytic_driven_solution(spec);
        const DrivenFit fit = fit_driven_response(rec, spec.omega0, spec.drive_frequency);
        CAPTURE(ratio);
        CHECK(rel(-fit.drive_cos, exact.steady_amplitude) < 1e-6);
        CHECK(std::abs(fit.drive_sin) < 1e-6 * exact.steady_amplitude);
        CHECK(rel(fit.secular_amplitude(), exact.secular_amplitude) < 1e-6);
    }
}

TEST_CASE("amplitude ratio follows the inverse-square law") {
    std::vector<double> lx, ly;
    for (double ratio : {10.0, 100.0, 1000.0}) {
        DrivenOscillatorSpec spec = driven(ratio);
        spec.x0 = 2.0 * spec.charge * spec.field_amplitude / (spec.mass * spec.omega0 * spec.omega0);
        const TrajectoryRecord rec = integrate_driven(spec, 2.0 * kTwoPi / spec.omega0);
        const DrivenFit fit = fit_driven_response(rec, spec.omega0, spec.drive_frequency);
        lx.push_back(std::log(1.0 / ratio));
        ly.push_back(std::log(fit.drive_amplitude() / fit.secular_amplitude()));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / 3.0;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < 3; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    CHECK(std::abs(sxy / sxx - 2.0) < 0.02);
}

TEST_CASE("uncharged driven oscillator conserves energy over a thousand periods") {
    DrivenOscillatorSpec spec = driven(10.0, 0.0);
    spec.x0 = 1e-6;
    spec.v0 = 0.3;
    DrivenOptions o;
    o.samples = 10000;
    const TrajectoryRecord rec = integrate_driven(spec, 1000.0 * kTwoPi / spec.omega0, o);
    double drift = 0.0;
    for (double e : rec.total) drift = std::max(drift, std::abs(e / rec.total[0] - 1.0));
    CHECK(drift < 1e-9);
    CHECK(rec.times.back() == doctest::Approx(1000.0 * kTwoPi / spec.omega0).epsilon(1e-15));
}

TEST_CASE("analytic driven solution") {
    DrivenOscillatorSpec spec = driven(50.0);
    spec.field_amplitude = 0.0;
    CHECK(analytic_driven_solution(spec).steady_amplitude == 0.0);

    spec = driven(50.0);
    spec.x0 = 3e-9;
    spec.v0 = 1e-3;
    const DrivenSolution sol = analytic_driven_solution(spec);
    const double wd = spec.drive_frequency;
    const double a = spec.charge * spec.field_amplitude / (spec.mass * (wd * wd - spec.omega0 * spec.omega0));
    CHECK(rel(sol.steady_amplitude, a) < 1e-15);
    CHECK(rel(sol.drive_kinetic_energy, spec.mass * a * a * wd * wd / 4.0) < 1e-15);
    CHECK(rel(sol.secular_amplitude, std::hypot(spec.x0 + a, spec.v0 / spec.omega0)) < 1e-15);

    // far above resonance the amplitude loses its omega0 dependence
    spec = driven(1e4);
    const double free_charge = spec.charge * spec.field_amplitude / (spec.mass * std::pow(spec.drive_frequency, 2));
    CHECK(rel(analytic_driven_solution(spec).steady_amplitude, free_charge) < 2e-8);
}

TEST_CASE("monopole drive of the Mg+ reference at the optical frequency") {
    const TrapSetup s = mg24_setup(true);
    DrivenOscillatorSpec spec{};
    spec.omega0 = trap_summary(s).omega0;
    spec.drive_frequency = s.beam.omega_L();
    spec.charge = s.ion.total_charge();
    spec.field_amplitude = field_amplitudes_at(s, Vec3::Zero()).electric;
    spec.mass = s.ion.total_mass();
    const DrivenSolution sol = analytic_driven_solution(spec);
    CHECK(rel(sol.steady_amplitude, 1.4883619311042617e-19) < 1e-7);
    // (Q E)^2 / (4 M w_d^2) is half of (Q A)^2 / (2 M)
    const double qa = spec.charge * field_amplitudes_at(s, Vec3::Zero()).vector_potential;
    CHECK(rel(sol.drive_kinetic_energy, 0.5 * qa * qa / (2.0 * spec.mass)) < 1e-9);
    CHECK_THROWS_AS(integrate_driven(spec, 1e-12), PhysicsError);
}

TEST_CASE("drive energy scales with E^2 and its ratio to the depth is intensity-invariant") {
    auto ke_over_depth = [](double depth_k) {
        const TrapSetup s = mg24_setup(true, 1.0, depth_k);
        DrivenOscillatorSpec spec = driven(1e3);
        spec.field_amplitude = field_amplitudes_at(s, Vec3::Zero()).electric;
        return analytic_driven_solution(spec).drive_kinetic_energy / trap_summary(s).depth;
    };
    CHECK(rel(ke_over_depth(100e-3), ke_over_depth(50e-3)) < 1e-9);
    DrivenOscillatorSpec a = driven(1e3);
    DrivenOscillatorSpec b = a;
    b.field_amplitude *= 3.0;
    CHECK(rel(analytic_driven_solution(b).drive_kinetic_energy, 9.0 * analytic_driven_solution(a).drive_kinetic_energy) <
          1e-14);
}

TEST_CASE("driven error paths") {
    DrivenOscillatorSpec spec = driven(1.0005);
    try {
        analytic_driven_solution(spec);
        FAIL("expected an exception");
    } catch (const PhysicsError& e) {
        CHECK(e.kind() == PhysicsError::Kind::Resonance);
    }
    spec = driven(2e6);
    try {
        integrate_driven(spec, 1e-6);
        FAIL("expected an exception");
    } catch (const PhysicsError& e) {
        CHECK(e.kind() == PhysicsError::Kind::UnreachableScale);
    }
    DrivenOptions o;
    o.steps_per_drive_period = 32;
    CHECK_THROWS_AS(integrate_driven(driven(10.0), 1e-5, o), ConfigError);
    CHECK_THROWS_AS(integrate_driven(driven(10.0), -1.0), ConfigError);
    spec = driven(10.0);
    spec.mass = 0.0;
    CHECK_THROWS_AS(analytic_driven_solution(spec), ConfigError);
}

TEST_CASE("frequency estimator on a synthetic record") {
    TrajectoryRecord rec;
    const double w = 1234.5;
    for (int i = 0; i < 3000; ++i) {
        const double t = i * 1e-4;
        rec.times.push_back(t);
        rec.positions.emplace_back(0.1 * std::sin(3.0 * w * t), 2.0 + std::cos(w * t + 0.3), 0.0);
    }
    CHECK(dominant_component(rec) == 1);
    CHECK(rel(estimate_frequency(rec, 1), w) < 1e-6);
    CHECK(rel(estimate_frequency(rec, 0), 3.0 * w) < 1e-6);
}

TEST_CASE("trajectory CSV and setup hash") {
    const TrapSetup s = mg24_setup(true);
    InitialState init;
    init.position = Vec3(1e-7, 0, 0);
    const TrajectoryRecord rec = integrate_full(s, init, 1e-6, conservative(2));
    const std::string csv = trajectory_csv(rec);
    CHECK(csv.rfind("t,x,y,z,vx,vy,vz,E_kin,E_pot,E_tot\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("\n0,1e-07,0,0,0,0,0,0,") != std::string::npos);

    TrapSetup warm = s;
    warm.temperature = 301.0;
    CHECK(setup_hash(s) == setup_hash(mg24_setup(true)));
    CHECK(setup_hash(s) != setup_hash(warm));
}
