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

#include "ofh/runner/report.hpp"

#include <openssl/opensslv.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#ifndef OFH_VERSION
#define OFH_VERSION "0.0.0"
#endif

namespace ofh::runner {

namespace {

using mplane::Json;

std::string_view table_verdict(Verdict v) {
    switch (v) {
    case Verdict::pass: return "Pass";
    case Verdict::fail: return "Fail";
    case Verdict::blocked: return "Blocked";
    }
    return "?";
}

template <typename E, std::size_t N>
E parse_enum(const std::string& text, const std::array<E, N>& values, const char* what) {
    for (auto v : values) {
        if (to_string(v) == text) return v;
    }
    throw ReportError(std::string("unknown ") + what + " '" + text + "'");
}

constexpr std::array<Verdict, 3> kVerdicts{Verdict::pass, Verdict::fail, Verdict::blocked};
constexpr std::array<Plane, 5> kPlanes{Plane::M, Plane::C, Plane::U, Plane::S, Plane::CU};
constexpr std::array<Category, 2> kCategories{Category::mandatory, Category::conditional_mandatory};
constexpr std::array<Expectation, 2> kExpectations{Expectation::positive, Expectation::negative};

Json summary_json(const Summary& s) {
    return {{"pass", s.pass}, {"fail", s.fail}, {"blocked", s.blocked}, {"total", s.total()}};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ReportError("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::filesystem::path& p, const std::string& bytes) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << bytes;
    if (!out) throw ReportError("cannot write " + p.string());
}

std::string human_table(const TestReport& report) {
    std::size_t id_w = 4;
    std::size_t title_w = 11;
    for (const auto& r : report.records) {
        id_w = std::max(id_w, r.id.size());
        title_w = std::max(title_w, r.title.size());
    }
    std::ostringstream out;
    auto row = [&](std::string_view id, std::string_view title, std::string_view result) {
        out << std::left << std::setw(static_cast<int>(id_w)) << id << " | " << std::setw(static_cast<int>(title_w))
            << title << " | " << result << '\n';
    };
    row("Test", "Description", "Result");
    out << std::string(id_w, '-') << "-+-" << std::string(title_w, '-') << "-+-" << std::string(7, '-') << '\n';
    for (const auto& r : report.records) row(r.id, r.title, table_verdict(r.verdict));
    const auto s = report.summary();
    out << '\n'
        << "Profile " << report.profile.value("name", "?") << ", seed " << report.seed << ": " << s.pass << " Pass, "
        << s.fail << " Fail, " << s.blocked << " Blocked of " << s.total() << '\n';
    for (const auto& r : report.records) {
        if (r.verdict != Verdict::pass) out << r.id << ": " << r.detail << '\n';
    }
    return out.str();
}

std::string markdown_table(const TestReport& report) {
    std::ostringstream out;
    out << "| Test | Description | Result |\n|---|---|---|\n";
    for (const auto& r : report.records) out << "| " << r.id << " | " << r.title << " | " << table_verdict(r.verdict) << " |\n";
    const auto s = report.summary();
    out << "\n" << s.pass << " Pass, " << s.fail << " Fail, " << s.blocked << " Blocked of " << s.total() << "\n";
    return out.str();
}

} // namespace

Summary TestReport::summary() const noexcept {
    Summary s;
    for (const auto& r : records) {
        switch (r.verdict) {
        case Verdict::pass: ++s.pass; break;
        case Verdict::fail: ++s.fail; break;
        case Verdict::blocked: ++s.blocked; break;
        }
    }
    return s;
}

const CaseRecord* TestReport::find(std::string_view id) const noexcept {
    auto it = std::find_if(records.begin(), records.end(), [&](const CaseRecord& r) { return r.id == id; });
    return it == records.end() ? nullptr : &*it;
}

ReportFormat parse_format(std::string_view name) {
    if (name == "structured" || name == "json") return ReportFormat::structured;
    if (name == "human" || name == "text") return ReportFormat::human;
    if (name == "markdown" || name == "md") return ReportFormat::markdown;
    throw ReportError("unknown report format '" + std::string(name) + "'");
}

Json to_json(const TestReport& report) {
    Json records = Json::array();
    Json timing = Json::object();
    for (const auto& r : report.records) {
        records.push_back({{"id", r.id},
                           {"title", r.title},
                           {"plane", std::string(to_string(r.plane))},
                           {"category", std::string(to_string(r.category))},
                           {"expected", std::string(to_string(r.expected))},
                           {"verdict", std::string(to_string(r.verdict))},
                           {"metrics", r.metrics},
                           {"detail", r.detail},
                           {"faults", r.faults},
                           {"sim_duration_ns", r.sim_duration_ns},
                           {"evidence", r.evidence}});
        timing["cases_ms"][r.id] = r.wall_ms;
    }
    timing["wall_ms"] = report.wall_ms;
    return {{"run_id", report.run_id},
            {"started_at", report.started_at},
            {"finished_at", report.finished_at},
            {"timing", timing},
            {"profile", report.profile},
            {"seed", report.seed},
            {"records", records},
            {"summary", summary_json(report.summary())},
            {"environment", report.environment}};
}

TestReport report_from_json(const Json& doc) {
    TestReport report;
    try {
        report.run_id = doc.at("run_id").get<std::string>();
        report.started_at = doc.value("started_at", "");
        report.finished_at = doc.value("finished_at", "");
        report.profile = doc.value("profile", Json::object());
        report.seed = doc.at("seed").get<std::uint64_t>();
        report.environment = doc.value("environment", Json::object());
        const Json timing = doc.value("timing", Json::object());
        report.wall_ms = timing.value("wall_ms", 0.0);
        for (const auto& r : doc.at("records")) {
            CaseRecord rec;
            rec.id = r.at("id").get<std::string>();
            rec.title = r.at("title").get<std::string>();
            rec.plane = parse_enum(r.at("plane").get<std::string>(), kPlanes, "plane");
            rec.category = parse_enum(r.at("category").get<std::string>(), kCategories, "category");
            rec.expected = parse_enum(r.at("expected").get<std::string>(), kExpectations, "expectation");
            rec.verdict = parse_enum(r.at("verdict").get<std::string>(), kVerdicts, "verdict");
            rec.metrics = r.value("metrics", Json::object());
            rec.detail = r.value("detail", "");
            rec.faults = r.value("faults", std::vector<std::string>{});
            rec.sim_duration_ns = r.value("sim_duration_ns", std::int64_t{0});
            rec.evidence = r.value("evidence", std::vector<std::string>{});
            if (timing.contains("cases_ms")) rec.wall_ms = timing["cases_ms"].value(rec.id, 0.0);
            report.records.push_back(std::move(rec));
        }
    } catch (const Json::exception& e) {
        throw ReportError(std::string("malformed report: ") + e.what());
    }
    if (doc.contains("summary") && doc["summary"] != summary_json(report.summary())) {
        throw ReportError("report summary does not match its records");
    }
    return report;
}

Json report_body(const Json& structured) {
    Json body = structured;
    for (const char* key : {"run_id", "started_at", "finished_at", "timing"}) body.erase(key);
    return body;
}

std::string render_report(const TestReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::structured: return to_json(report).dump(2) + "\n";
    case ReportFormat::human: return human_table(report);
    case ReportFormat::markdown: return markdown_table(report);
    }
    return {};
}

int exit_code(const TestReport& report) noexcept {
    const auto s = report.summary();
    return s.fail == 0 && s.blocked == 0 ? 0 : 1;
}

std::filesystem::path write_run_directory(const TestReport& report, const std::filesystem::path& root) {
    const auto dir = root / report.run_id;
    std::filesystem::create_directories(dir);
    for (const auto& r : report.records) {
        for (const auto& [name, bytes] : r.evidence_data) write_file(dir / "evidence" / r.id / name, bytes);
    }
    write_file(dir / "report.json", render_report(report, ReportFormat::structured));
    write_file(dir / "report.txt", render_report(report, ReportFormat::human));
    write_file(dir / "report.md", render_report(report, ReportFormat::markdown));
    return dir;
}

TestReport read_run_directory(const std::filesystem::path& dir) {
    const auto file = std::filesystem::is_directory(dir) ? dir / "report.json" : dir;
    Json doc;
    try {
        doc = Json::parse(read_file(file));
    } catch (const Json::parse_error& e) {
        throw ReportError(file.string() + " is not valid JSON: " + e.what());
    }
    return report_from_json(doc);
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string make_run_id() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
    std::random_device rd;
    std::ostringstream id;
    id << stamp << '-' << std::hex << std::setw(6) << std::setfill('0') << (rd() & 0xFFFFFF);
    return id.str();
}

Json environment_info() {
    return {{"harness", "ofh-conformance " OFH_VERSION},
            {"components",
             {{"codec", OFH_VERSION}, {"sim", OFH_VERSION}, {"mplane", OFH_VERSION}, {"splane", OFH_VERSION},
              {"cuplane", OFH_VERSION}, {"ru-emulator", OFH_VERSION}, {"runner", OFH_VERSION}}},
            {"compiler", __VERSION__},
            {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                         "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"openssl", OPENSSL_VERSION_TEXT}};
}

} // namespace ofh::runner
