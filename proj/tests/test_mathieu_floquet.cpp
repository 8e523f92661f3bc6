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
#include <random>

#include <Eigen/LU>

#include "iontrap/errors.hpp"
#include "iontrap/mathieu_floquet.hpp"
#include "reference.hpp"

using namespace iontrap;
using iontrap::testing::mg24_setup;
using iontrap::testing::rel;

TEST_CASE("liouville: unit determinant and reciprocal multipliers") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng);
        const double q = u(rng);
        const FloquetResult r = monodromy_stability(a, q);
        CHECK(std::abs(r.monodromy.determinant() - 1.0) < 1e-9);
        CHECK(std::abs(r.multipliers[0] * r.multipliers[1] - 1.0) < 1e-9);
    }
}

TEST_CASE("monodromy traces on the a = 0 line") {
    // Reference traces from an independent adaptive high-order integration.
    CHECK(monodromy_stability(0.0, 0.90).monodromy.trace() == doctest::Approx(-1.9306).epsilon(1e-4));
    CHECK(monodromy_stability(0.0, 0.905).monodromy.trace() == doctest::Approx(-1.9737).epsilon(1e-4));
    CHECK(monodromy_stability(0.0, 0.91).monodromy.trace() == doctest::Approx(-2.0169).epsilon(1e-4));
    CHECK(monodromy_stability(0.0, 0.92).monodromy.trace() == doctest::Approx(-2.1041).epsilon(1e-4));
    CHECK(monodromy_stability(0.0, 0.90).stable);
    CHECK_FALSE(monodromy_stability(0.0, 0.92).stable);
}

TEST_CASE("first stability boundary at a = 0") {
    double lo = 0.85;
    double hi = 0.95;
    for (int i = 0; i < 50; ++i) {
        const double mid = 0.5 * (lo + hi);
        (monodromy_stability(0.0, mid).stable ? lo : hi) = mid;
    }
    CHECK(std::abs(lo - 0.9080463337) < 1e-6);
}

TEST_CASE("boundary series agrees with the monodromy") {
    for (double q : {0.1, 0.2, 0.3, 0.4}) {
        const double a0 = first_stability_boundary(q);
        CHECK(monodromy_stability(a0 + 1e-4, q).stable);
        CHECK_FALSE(monodromy_stability(a0 - 1e-4, q).stable);
    }
    CHECK(first_stability_boundary(0.0) == 0.0);
    CHECK(first_stability_boundary(0.3) == first_stability_boundary(-0.3));
}

TEST_CASE("harmonic limit q = 0") {
    const FloquetResult r = monodromy_stability(0.25, 0.0);
    CHECK(r.stable);
    CHECK(r.characteristic_exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(r.multipliers[0] - std::complex<double>(0.0, 1.0)) < 1e-12);
    CHECK(std::abs(r.multipliers[1] - std::complex<double>(0.0, -1.0)) < 1e-12);
    CHECK(r.micromotion_ratio < 1e-12);
    for (double a : {0.01, 0.3, 0.6, 0.99}) CHECK(monodromy_stability(a, 0.0).stable);
    CHECK_FALSE(monodromy_stability(-0.1, 0.0).stable);
}

TEST_CASE("marginal origin is unstable under the strict trace test") {
    const FloquetResult r = monodromy_stability(0.0, 0.0);
    CHECK_FALSE(r.stable);
    CHECK(r.stiffness_warning);
}

TEST_CASE("micromotion ratio against the long-integration oracle") {
    CHECK(rel(monodromy_stability(0.02, 0.01).micromotion_ratio, 0.00510225) < 1e-4);
    CHECK(rel(monodromy_stability(0.0, 0.01).micromotion_ratio, 0.0050002) < 1e-4);
    CHECK(rel(monodromy_stability(0.0, 0.05).micromotion_ratio, 0.0250245) < 1e-4);
    CHECK(rel(monodromy_stability(0.5, 0.05).micromotion_ratio, 0.0501661) < 1e-4);
    CHECK(rel(monodromy_stability(0.02, -0.01).micromotion_ratio, 0.00510225) < 1e-4);
}

TEST_CASE("small-parameter law over a in [q, 10q]") {
    for (double q : {0.002, 0.01, 0.05}) {
        for (double f : {1.0, 2.0, 5.0, 10.0}) {
            const double a = f * q;
            const double numeric = monodromy_stability(a, q).micromotion_ratio;
            CAPTURE(a);
            CAPTURE(q);
            CHECK(rel(numeric, micromotion_ratio_small_parameter(a, q)) < 5e-3);
        }
    }
}

TEST_CASE("micromotion ratio is |q|/2 within 5% near the a = 0 line") {
    for (double q : {0.001, 0.01, 0.03, 0.05}) {
        for (double a : {0.0, q * q}) {
            CAPTURE(q);
            CHECK(rel(monodromy_stability(a, q).micromotion_ratio, q / 2.0) < 0.05);
            CHECK(rel(monodromy_stability(a, -q).micromotion_ratio, q / 2.0) < 0.05);
        }
    }
}

TEST_CASE("stability decision is converged in the step count") {
    for (double a = -1.9; a < 2.0; a += 0.37) {
        for (double q = -1.9; q < 2.0; q += 0.41) {
            CHECK(monodromy_stability(a, q, 2048).stable == monodromy_stability(a, q, 4096).stable);
        }
    }
}

TEST_CASE("optical mapping for the Mg+ reference") {
    const TrapSetup s = mg24_setup(true);
    const MathieuParams p = optical_mathieu_params(s, 0);
    CHECK(rel(p.a, 3.037817002080531e-20) < 1e-7);
    CHECK(rel(p.q, -1.5630943394955635e-20) < 1e-7);
    CHECK(p.drive_angular_frequency == 2.0 * s.beam.omega_L());
    CHECK(p.time_scale == s.beam.omega_L());

    const FloquetResult r = monodromy_stability(p);
    CHECK(r.stiffness_warning);
    CHECK(r.stable);
    CHECK(rel(micromotion_ratio_optical(s, 0), 7.8155e-21) < 1e-4);

    const MathieuParams plain = optical_mathieu_params(mg24_setup(false), 0);
    CHECK(rel(plain.a, -2.0 * plain.q) < 1e-15);
    CHECK_THROWS_AS(optical_mathieu_params(s, 3), ConfigError);
}

TEST_CASE("zero optical frequency maps to the origin") {
    const TrapSetup ref = mg24_setup();
    const LaserBeam dark = LaserBeam::with_power(ref.beam.wavelength(), ref.beam.waist(), 0.0, ref.beam.detuning());
    const double w = kTwoPi * 1e3;
    const TrapSetup s(ref.ion, ref.transition, dark, Vec3(w * w, w * w, w * w));
    const MathieuParams p = optical_mathieu_params(s, 0);
    CHECK(p.q == 0.0);
    CHECK(micromotion_ratio_optical(s, 0) == 0.0);
}

TEST_CASE("anticonfined axis is reported") {
    const TrapSetup ref = mg24_setup();
    const double w = kTwoPi * 500e3;
    const TrapSetup s(ref.ion, ref.transition, ref.beam, Vec3(-w * w, 0.0, 0.0));
    try {
        optical_mathieu_params(s, 0);
        FAIL("expected an exception");
    } catch (const PhysicsError& e) {
        CHECK(e.kind() == PhysicsError::Kind::AnticonfinedAxis);
    }
}

TEST_CASE("scaled optical drive: law and numerics agree") {
    // omega_L / omega0 = 1e3 with no static field: a = (omega0/omega_L)^2, q = -a/2
    const double a = 1e-6;
    const double q = -5e-7;
    const FloquetResult r = monodromy_stability(a, q);
    CHECK_FALSE(r.stiffness_warning);
    CHECK(r.stable);
    CHECK(rel(r.micromotion_ratio, 2.5e-7) < 0.05);
    CHECK(rel(r.micromotion_ratio, micromotion_ratio_small_parameter(a, q)) < 0.05);
}

TEST_CASE("scan ranges") {
    CHECK(ScanRange{0.0, 1.0, 0.01}.count() == 101);
    CHECK(ScanRange{0.0, 0.5, 0.5}.count() == 2);
    CHECK(ScanRange{0.3, 0.3, 0.1}.count() == 1);
    CHECK_THROWS_AS((ScanRange{0.0, 1.0, 0.0}.count()), ConfigError);
    CHECK_THROWS_AS((ScanRange{1.0, 0.0, 0.1}.count()), ConfigError);
    CHECK_THROWS_AS((ScanRange{0.0, INFINITY, 0.1}.count()), ConfigError);
}

TEST_CASE("stability scan") {
    const auto grid = stability_scan({0.0, 0.5, 0.5}, {0.0, 0.5, 0.5});
    REQUIRE(grid.size() == 4);
    CHECK(grid[0].a == 0.0);
    CHECK(grid[0].q == 0.0);
    CHECK(grid[1].a == 0.0);
    CHECK(grid[1].q == 0.5);
    CHECK(grid[2].a == 0.5);
    CHECK_FALSE(grid[0].stable);
    CHECK(grid[1].stable);
    CHECK(grid[2].stable);
    // (0.5, 0.5) sits just inside the instability tongue that starts at a = 1
    CHECK_FALSE(grid[3].stable);
    CHECK(monodromy_stability(0.5, 0.5).monodromy.trace() == doctest::Approx(-2.0899).epsilon(1e-4));
}

TEST_CASE("scan is symmetric in q and independent of the thread count") {
    const auto grid = stability_scan({-0.5, 1.0, 0.25}, {-0.9, 0.9, 0.3}, 2048, 3);
    const auto serial = stability_scan({-0.5, 1.0, 0.25}, {-0.9, 0.9, 0.3}, 2048, 1);
    CHECK(stability_csv(grid) == stability_csv(serial));
    const std::size_t nq = 7;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& p = grid[i];
        const auto& mirror = grid[(i / nq) * nq + (nq - 1 - i % nq)];
        CHECK(mirror.q == doctest::Approx(-p.q).epsilon(1e-12));
        CHECK(mirror.stable == p.stable);
    }
}

TEST_CASE("boundary cell on the a = 0 line at 0.01 resolution") {
    const auto line = stability_scan({0.0, 0.0, 0.01}, {0.0, 1.0, 0.01});
    REQUIRE(line.size() == 101);
    CHECK(line[90].stable);
    CHECK_FALSE(line[91].stable);
}

TEST_CASE("stability CSV format") {
    const std::string csv = stability_csv(stability_scan({0.25, 0.25, 1.0}, {0.0, 0.0, 1.0}));
    CHECK(csv == "a,q,stable,exponent\n0.25,0,1,0.5\n");
}
