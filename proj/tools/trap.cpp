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

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "iontrap/config.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/mathieu_floquet.hpp"
#include "iontrap/report.hpp"

namespace {

using namespace iontrap;

ScanRange parse_range(const std::string& text, const std::string& flag) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos)
        throw ConfigError("'" + flag + "' must be min:max:step");
    auto part = [&](std::size_t from, std::size_t to) {
        const std::string s = text.substr(from, to - from);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size()) throw ConfigError("'" + flag + "' has a non-numeric field '" + s + "'");
        return v;
    };
    ScanRange r{part(0, first), part(first + 1, second), part(second + 1, text.size())};
    try {
        (void)r.count();
    } catch (const ConfigError& e) {
        throw ConfigError("'" + flag + "': " + e.what());
    }
    return r;
}

std::string out_path(const std::string& dir, const char* name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

int run_report(const std::string& config_path, const std::string& out_dir) {
    const Config config = load_config(config_path);
    const nlohmann::json report = build_report(config);
    write_file_atomic(out_path(out_dir, "report.json"), report_json_text(report));
    write_file_atomic(out_path(out_dir, "report.txt"), render_report_text(report, float_digits_from_env()));
    return 0;
}

int run_stability(const std::string& config_path, const std::string& out_dir, const std::string& a_text,
                  const std::string& q_text) {
    const Config config = load_config(config_path);
    std::optional<ScanRange> a;
    std::optional<ScanRange> q;
    if (config.scan) {
        a = config.scan->a;
        q = config.scan->q;
    }
    if (!a_text.empty()) a = parse_range(a_text, "--a");
    if (!q_text.empty()) q = parse_range(q_text, "--q");
    if (!a || !q) throw ConfigError("scan ranges missing: pass --a and --q or add a 'scan' block");
    const auto grid = stability_scan(*a, *q);
    write_file_atomic(out_path(out_dir, "stability.csv"), stability_csv(grid));
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
    const Config config = load_config(config_path);
    const SimulationOutcome outcome = run_simulation(config);
    write_file_atomic(out_path(out_dir, "trajectory.csv"), trajectory_csv(outcome.record));
    std::cout << simulation_summary(outcome);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optical dipole trap analysis for a single charged ion"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "Directory for output files");

    std::string config_path;
    std::string a_text;
    std::string q_text;
    auto* report = app.add_subcommand("report", "Write report.json and report.txt");
    report->add_option("config", config_path, "Trap configuration (JSON)")->required();
    auto* stability = app.add_subcommand("stability", "Write a Mathieu stability grid to stability.csv");
    stability->add_option("config", config_path, "Trap configuration (JSON)")->required();
    stability->add_option("--a", a_text, "a range as min:max:step");
    stability->add_option("--q", q_text, "q range as min:max:step");
    auto* simulate = app.add_subcommand("simulate", "Integrate a trajectory into trajectory.csv");
    simulate->add_option("config", config_path, "Trap configuration (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*report) return run_report(config_path, out_dir);
        if (*stability) return run_stability(config_path, out_dir, a_text, q_text);
        return run_simulate(config_path, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PhysicsError& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
