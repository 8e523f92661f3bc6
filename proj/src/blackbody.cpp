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

#include "iontrap/blackbody.hpp"

#include <cmath>
#include <limits>

#include "iontrap/errors.hpp"

namespace iontrap {

double mean_occupation(double omega0, double temperature) {
    if (!(omega0 > 0.0)) throw ConfigError("mode frequency must be positive");
    if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    const double x = kConstants.hbar * omega0 / (kConstants.kB * temperature);
    return 1.0 / std::expm1(x);
}

double larmor_rate(double charge, double mass, double omega0, double prefactor_multiplier) {
    const auto& k = kConstants;
    return prefactor_multiplier * charge * charge * omega0 * omega0 /
           (6.0 * kPi * k.eps0 * mass * k.c * k.c * k.c);
}

HeatingEstimate heating_rate(const TrapSetup& setup, double omega0, double prefactor_multiplier) {
    HeatingEstimate out{};
    out.mean_occupation = mean_occupation(omega0, setup.temperature);
    out.larmor_rate =
        larmor_rate(setup.ion.total_charge(), setup.ion.total_mass(), omega0, prefactor_multiplier);
    out.heating_rate = out.larmor_rate * out.mean_occupation;
    out.heating_timescale = out.heating_rate > 0.0 ? 1.0 / out.heating_rate
                                                   : std::numeric_limits<double>::infinity();
    out.motional_temperature = kConstants.hbar * omega0 / kConstants.kB;
    out.neutral = setup.ion.total_charge() == 0.0;
    out.outside_recommended_range = omega0 < kTwoPi * 1e4 || omega0 > kTwoPi * 1e6;
    return out;
}

}  // namespace iontrap
