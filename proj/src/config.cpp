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

#include "iontrap/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "iontrap/errors.hpp"

namespace iontrap {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("'" + path + "' must be an object");
    return j;
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || item.key() == k;
        if (!known) throw ConfigError("unknown key '" + join(path, item.key()) + "'");
    }
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("'" + path + "' must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ConfigError("'" + path + "' must be finite");
    return x;
}

double required_number(const json& section, const std::string& path, const char* key) {
    if (!section.contains(key)) throw ConfigError("missing key '" + join(path, key) + "'");
    return number(section.at(key), join(path, key));
}

std::optional<double> optional_number(const json& section, const std::string& path, const char* key) {
    if (!section.contains(key)) return std::nullopt;
    return number(section.at(key), join(path, key));
}

double positive(double x, const std::string& path) {
    if (!(x > 0.0)) throw ConfigError("'" + path + "' must be positive");
    return x;
}

std::array<double, 3> triple(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) throw ConfigError("'" + path + "' must be an array of 3 numbers");
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = number(j[i], path + "[" + std::to_string(i) + "]");
    return out;
}

ScanRange scan_range(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) throw ConfigError("'" + path + "' must be [min, max, step]");
    ScanRange r{number(j[0], path + "[0]"), number(j[1], path + "[1]"), number(j[2], path + "[2]")};
    try {
        (void)r.count();
    } catch (const ConfigError& e) {
        throw ConfigError("'" + path + "': " + e.what());
    }
    return r;
}

std::size_t count(const json& j, const std::string& path, bool allow_zero) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError("'" + path + "' must be an integer");
    const auto n = j.get<long long>();
    if (n < 0 || (!allow_zero && n == 0)) throw ConfigError("'" + path + "' out of range");
    return static_cast<std::size_t>(n);
}

SimulateConfig parse_simulate(const json& j) {
    const std::string path = "simulate";
    require_object(j, path);
    check_keys(j, path, {"mode", "initial", "t_end_ms", "options", "driven"});
    SimulateConfig sim;

    if (!j.contains("mode") || !j.at("mode").is_string())
        throw ConfigError("'simulate.mode' must be \"full\" or \"driven\"");
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "full") {
        sim.mode = SimulateConfig::Mode::full;
    } else if (mode == "driven") {
        sim.mode = SimulateConfig::Mode::driven;
    } else {
        throw ConfigError("'simulate.mode' must be \"full\" or \"driven\"");
    }

    sim.t_end_ms = positive(required_number(j, path, "t_end_ms"), "simulate.t_end_ms");

    if (j.contains("initial")) {
        const json& init = require_object(j.at("initial"), "simulate.initial");
        check_keys(init, "simulate.initial", {"position_um", "velocity_m_per_s"});
        if (init.contains("position_um")) sim.position_um = triple(init.at("position_um"), "simulate.initial.position_um");
        if (init.contains("velocity_m_per_s"))
            sim.velocity_m_per_s = triple(init.at("velocity_m_per_s"), "simulate.initial.velocity_m_per_s");
    }

    if (j.contains("options")) {
        const std::string op = "simulate.options";
        const json& o = require_object(j.at("options"), op);
        check_keys(o, op, {"rel_tol", "abs_tol_m", "samples", "radiation_pressure", "potential",
                           "steps_per_drive_period"});
        if (auto v = optional_number(o, op, "rel_tol")) sim.rel_tol = positive(*v, op + ".rel_tol");
        if (auto v = optional_number(o, op, "abs_tol_m")) sim.abs_tol_m = positive(*v, op + ".abs_tol_m");
        if (o.contains("samples")) {
            sim.samples = count(o.at("samples"), op + ".samples", sim.mode == SimulateConfig::Mode::driven);
            sim.driven_samples = sim.samples;
        }
        if (o.contains("radiation_pressure")) {
            if (!o.at("radiation_pressure").is_boolean()) throw ConfigError("'" + op + ".radiation_pressure' must be a boolean");
            sim.radiation_pressure = o.at("radiation_pressure").get<bool>();
        }
        if (o.contains("potential")) {
            const json& p = o.at("potential");
            if (p == "exact_log") {
                sim.potential = PotentialModel::exact_log;
            } else if (p == "low_saturation") {
                sim.potential = PotentialModel::low_saturation;
            } else {
                throw ConfigError("'" + op + ".potential' must be \"exact_log\" or \"low_saturation\"");
            }
        }
        if (o.contains("steps_per_drive_period")) {
            const auto n = count(o.at("steps_per_drive_period"), op + ".steps_per_drive_period", false);
            if (n < 64 || n > 1'000'000) throw ConfigError("'" + op + ".steps_per_drive_period' must be in [64, 1e6]");
            sim.steps_per_drive_period = static_cast<int>(n);
        }
    }

    if (j.contains("driven")) {
        const std::string dp = "simulate.driven";
        const json& d = require_object(j.at("driven"), dp);
        check_keys(d, dp, {"omega0_2pi_kHz", "drive_ratio", "field_V_per_m"});
        if (auto v = optional_number(d, dp, "omega0_2pi_kHz")) sim.omega0_2pi_kHz = positive(*v, dp + ".omega0_2pi_kHz");
        if (auto v = optional_number(d, dp, "drive_ratio")) sim.drive_ratio = positive(*v, dp + ".drive_ratio");
        sim.field_V_per_m = optional_number(d, dp, "field_V_per_m");
    }
    return sim;
}

}  // namespace

Config parse_config(const json& doc) {
    require_object(doc, "<root>");
    check_keys(doc, "", {"ion", "transition", "laser", "static", "environment", "blackbody", "simulate", "scan"});
    for (const char* s : {"ion", "transition", "laser", "environment"})
        if (!doc.contains(s)) throw ConfigError(std::string("missing section '") + s + "'");

    Config c;
    c.source = doc;

    const json& ion = require_object(doc.at("ion"), "ion");
    check_keys(ion, "ion", {"mass_u", "charge_e"});
    c.mass_u = positive(required_number(ion, "ion", "mass_u"), "ion.mass_u");
    c.charge_e = required_number(ion, "ion", "charge_e");

    const json& tr = require_object(doc.at("transition"), "transition");
    check_keys(tr, "transition", {"wavelength_nm", "linewidth_2pi_MHz"});
    c.wavelength_nm = positive(required_number(tr, "transition", "wavelength_nm"), "transition.wavelength_nm");
    c.linewidth_2pi_MHz =
        positive(required_number(tr, "transition", "linewidth_2pi_MHz"), "transition.linewidth_2pi_MHz");

    const json& laser = require_object(doc.at("laser"), "laser");
    check_keys(laser, "laser", {"waist_um", "detuning_2pi_GHz", "power_mW", "depth_mK"});
    c.waist_um = positive(required_number(laser, "laser", "waist_um"), "laser.waist_um");
    c.detuning_2pi_GHz = required_number(laser, "laser", "detuning_2pi_GHz");
    if (c.detuning_2pi_GHz == 0.0) throw ConfigError("'laser.detuning_2pi_GHz' must be nonzero");
    c.power_mW = optional_number(laser, "laser", "power_mW");
    c.depth_mK = optional_number(laser, "laser", "depth_mK");
    if (c.power_mW.has_value() == c.depth_mK.has_value())
        throw ConfigError("exactly one of 'laser.power_mW' and 'laser.depth_mK' is required");
    if (c.power_mW) positive(*c.power_mW, "laser.power_mW");
    if (c.depth_mK) positive(*c.depth_mK, "laser.depth_mK");

    if (doc.contains("static")) {
        const json& st = require_object(doc.at("static"), "static");
        check_keys(st, "static", {"curvatures_2pi_kHz_squared"});
        if (st.contains("curvatures_2pi_kHz_squared"))
            c.curvatures_2pi_kHz_squared = triple(st.at("curvatures_2pi_kHz_squared"), "static.curvatures_2pi_kHz_squared");
    }

    const json& env = require_object(doc.at("environment"), "environment");
    check_keys(env, "environment", {"temperature_K"});
    c.temperature_K = required_number(env, "environment", "temperature_K");
    if (c.temperature_K < 0.0) throw ConfigError("'environment.temperature_K' must be >= 0");

    if (doc.contains("blackbody")) {
        const json& bb = require_object(doc.at("blackbody"), "blackbody");
        check_keys(bb, "blackbody", {"prefactor_multiplier"});
        if (auto v = optional_number(bb, "blackbody", "prefactor_multiplier"))
            c.prefactor_multiplier = positive(*v, "blackbody.prefactor_multiplier");
    }

    if (doc.contains("simulate")) c.simulate = parse_simulate(doc.at("simulate"));

    if (doc.contains("scan")) {
        const json& sc = require_object(doc.at("scan"), "scan");
        check_keys(sc, "scan", {"a", "q"});
        if (!sc.contains("a") || !sc.contains("q")) throw ConfigError("'scan' needs both 'a' and 'q'");
        c.scan = ScanConfig{scan_range(sc.at("a"), "scan.a"), scan_range(sc.at("q"), "scan.q")};
    }
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc);
}

TrapSetup build_setup(const Config& c) {
    const IonSpecies ion = IonSpecies::from_atomic_units(c.mass_u, c.charge_e);
    const Transition transition =
        Transition::from_wavelength(c.wavelength_nm * 1e-9, units::angular_from_hz(c.linewidth_2pi_MHz * 1e6));
    const double detuning = units::angular_from_hz(c.detuning_2pi_GHz * 1e9);
    // The beam is tuned relative to the transition, so its wavelength follows from omega_eg + delta.
    const double omega_L = transition.omega_eg() + detuning;
    if (!(omega_L > 0.0)) throw ConfigError("'laser.detuning_2pi_GHz' exceeds the transition frequency");
    const double wavelength = kTwoPi * kConstants.c / omega_L;
    const double waist = c.waist_um * 1e-6;

    const LaserBeam beam =
        c.power_mW ? LaserBeam::with_power(wavelength, waist, *c.power_mW * 1e-3, detuning)
                   : LaserBeam::with_peak_intensity(
                         wavelength, waist,
                         peak_intensity_for_depth(ion, transition, detuning, units::kelvin_to_joule(*c.depth_mK * 1e-3)),
                         detuning);

    const double khz2 = units::angular_from_hz(1e3) * units::angular_from_hz(1e3);
    const Vec3 curvatures(c.curvatures_2pi_kHz_squared[0] * khz2, c.curvatures_2pi_kHz_squared[1] * khz2,
                          c.curvatures_2pi_kHz_squared[2] * khz2);
    return TrapSetup(ion, transition, beam, curvatures, c.temperature_K);
}

}  // namespace iontrap
