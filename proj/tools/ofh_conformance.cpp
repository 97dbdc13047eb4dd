/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The ofhct Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// ofh-conformance: list, run and report the O-RU conformance catalog.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "ofh/runner/campaign.hpp"
#include "ofh/runner/catalog.hpp"
#include "ofh/runner/profile.hpp"
#include "ofh/runner/report.hpp"

namespace {

using namespace ofh::runner;

constexpr int kUsageError = 2;

std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv("OFH_CONFORMANCE_OUT"); env && *env) return env;
    return "conformance-runs";
}

int list_cases() {
    for (const auto& tc : load_catalog()) {
        std::cout << tc.id << '\t' << to_string(tc.plane) << '\t' << to_string(tc.category) << '\t' << tc.title
                  << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"O-RAN fronthaul O-RU conformance runner"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "Print the test catalog, one case per line");

    auto* run = app.add_subcommand("run", "Run cases against the reference O-RU emulator");
    std::string profile_file;
    std::vector<std::string> cases;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    unsigned jobs = 0;
    std::string run_format = "human";
    bool quiet = false;
    run->add_option("--profile", profile_file, "Lab profile (JSON)")->check(CLI::ExistingFile);
    run->add_option("--case", cases, "Case id; repeat to select several (default: all)");
    run->add_option("--seed", seed, "Override the profile seed");
    run->add_option("--out", out_dir, "Parent directory for run directories (default: $OFH_CONFORMANCE_OUT or ./conformance-runs)");
    run->add_option("--jobs,-j", jobs, "Parallel cases (default: hardware threads)");
    run->add_option("--format", run_format, "Report printed to stdout: human, markdown, structured")
        ->check(CLI::IsMember({"human", "markdown", "structured"}));
    run->add_flag("--quiet,-q", quiet, "No per-case progress on stderr");

    auto* report = app.add_subcommand("report", "Render a stored run");
    std::string in_dir;
    std::string report_format = "human";
    report->add_option("--in", in_dir, "Run directory or report.json")->required();
    report->add_option("--format", report_format, "human, markdown or structured")
        ->check(CLI::IsMember({"human", "markdown", "structured"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*list) return list_cases();

        if (*run) {
            CampaignOptions options;
            if (!profile_file.empty()) options.profile = load_profile(profile_file);
            options.selection = cases;
            options.seed = seed;
            options.jobs = jobs;
            if (!quiet) {
                options.on_record = [](const CaseRecord& r) {
                    std::cerr << r.id << ' ' << ofh::to_string(r.verdict) << '\n';
                };
            }
            const auto result = run_campaign(options);
            const auto dir = write_run_directory(result, out_dir.empty() ? default_out_dir() : std::filesystem::path(out_dir));
            std::cout << render_report(result, parse_format(run_format));
            std::cerr << "run directory: " << dir.string() << '\n';
            return exit_code(result);
        }

        const auto stored = read_run_directory(in_dir);
        std::cout << render_report(stored, parse_format(report_format));
        return exit_code(stored);
    } catch (const SelectionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    }
}
