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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ofh/mplane/envelope.hpp"
#include "ofh/runner/catalog.hpp"
#include "ofh/verdict.hpp"

namespace ofh::runner {

struct CaseRecord {
    std::string id;
    std::string title;
    Plane plane = Plane::M;
    Category category = Category::mandatory;
    Expectation expected = Expectation::positive;
    Verdict verdict = Verdict::fail;
    mplane::Json metrics = mplane::Json::object();
    std::string detail;
    /// Fault toggles the O-RU carried for this case.
    std::vector<std::string> faults;
    std::int64_t sim_duration_ns = 0;
    /// Relative to the run directory.
    std::vector<std::string> evidence;
    /// Host-dependent; kept out of the comparable report body.
    double wall_ms = 0.0;
    /// Contents for `evidence`, only held until the run directory is written.
    std::map<std::string, std::string> evidence_data;
};

struct Summary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t blocked = 0;
    std::size_t total() const noexcept { return pass + fail + blocked; }
};

struct TestReport {
    std::string run_id;
    std::string started_at;
    std::string finished_at;
    double wall_ms = 0.0;
    mplane::Json profile = mplane::Json::object();
    std::uint64_t seed = 0;
    /// Catalog order, each executed case exactly once.
    std::vector<CaseRecord> records;
    mplane::Json environment = mplane::Json::object();

    Summary summary() const noexcept;
    const CaseRecord* find(std::string_view id) const noexcept;
};

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ReportFormat { structured, human, markdown };
ReportFormat parse_format(std::string_view name);

mplane::Json to_json(const TestReport& report);
/// Throws ReportError when the document is not a report or its summary
/// disagrees with its records.
TestReport report_from_json(const mplane::Json& doc);

/// The structured report without run_id, timestamps and wall-clock timing:
/// what two runs with the same profile and seed must agree on.
mplane::Json report_body(const mplane::Json& structured);

/// Structured output is sorted-key JSON; human output mirrors the
/// "Test | Description | Result" table.
std::string render_report(const TestReport& report, ReportFormat format);

/// 0 iff no record is FAIL or BLOCKED.
int exit_code(const TestReport& report) noexcept;

/// Writes `root`/<run_id>/ with report.json, report.txt, report.md and
/// evidence/<case>/<file>. Returns the run directory.
std::filesystem::path write_run_directory(const TestReport& report, const std::filesystem::path& root);
TestReport read_run_directory(const std::filesystem::path& dir);

/// Fresh run id: UTC timestamp plus a random suffix.
std::string make_run_id();
std::string utc_now();
mplane::Json environment_info();

} // namespace ofh::runner
