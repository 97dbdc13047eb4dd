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

#include "ofh/runner/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace ofh::runner {

namespace {

bool contains(const std::vector<std::string>& names, std::string_view name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

CaseRecord make_record(const TestCase& tc) {
    CaseRecord r;
    r.id = std::string(tc.id);
    r.title = std::string(tc.title);
    r.plane = tc.plane;
    r.category = tc.category;
    r.expected = tc.expected;
    return r;
}

CaseRecord execute(const TestCase& tc, const LabProfile& profile, std::uint64_t seed) {
    auto record = make_record(tc);
    CaseContext ctx{profile, seed, faults_for(profile, tc.id)};
    record.faults = ctx.faults.active();
    const auto start = std::chrono::steady_clock::now();
    try {
        auto outcome = tc.procedure(ctx);
        record.verdict = outcome.verdict;
        record.metrics = std::move(outcome.metrics);
        record.detail = std::move(outcome.detail);
        record.sim_duration_ns = outcome.sim_duration;
        for (auto& [name, bytes] : outcome.evidence) {
            record.evidence.push_back("evidence/" + record.id + "/" + name);
            record.evidence_data.emplace(name, std::move(bytes));
        }
    } catch (const std::exception& e) {
        // The behavior was not shown; a harness error never passes.
        record.verdict = Verdict::fail;
        record.detail = std::string("scenario error: ") + e.what();
    }
    record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return record;
}

/// Runs `cases` on up to `jobs` threads; results land at the same index.
void run_parallel(const std::vector<const TestCase*>& cases, std::vector<CaseRecord>& out, const LabProfile& profile,
                  std::uint64_t seed, unsigned jobs, const std::function<void(const CaseRecord&)>& on_record) {
    out.resize(cases.size());
    std::atomic<std::size_t> next{0};
    std::mutex report_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            out[i] = execute(*cases[i], profile, seed);
            if (on_record) {
                std::lock_guard lock(report_mutex);
                on_record(out[i]);
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cases.size())));
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
}

} // namespace

ru::FaultPlan faults_for(const LabProfile& profile, std::string_view case_id) {
    ru::FaultPlan plan;
    for (auto toggle : ru::kFaultToggles) {
        if (contains(profile.ablated_faults, toggle)) continue;
        if (contains(profile.forced_faults, toggle) || ru::toggle_case(toggle) == case_id) {
            ru::set_toggle(plan, toggle);
        }
    }
    return plan;
}

TestReport run_campaign(const CampaignOptions& options) {
    std::vector<const TestCase*> selected;
    if (options.selection.empty()) {
        for (const auto& tc : kCatalog) selected.push_back(&tc);
    } else {
        for (const auto& id : options.selection) {
            if (!find_case(id)) throw SelectionError("unknown test case id: " + id);
        }
        // Catalog order, duplicates collapse.
        for (const auto& tc : kCatalog) {
            if (contains(options.selection, tc.id)) selected.push_back(&tc);
        }
    }
    if (selected.empty()) throw SelectionError("empty selection");

    TestReport report;
    report.run_id = make_run_id();
    report.started_at = utc_now();
    report.seed = options.seed.value_or(options.profile.seed);
    LabProfile profile = options.profile;
    profile.seed = report.seed;
    report.profile = profile.to_json();
    report.environment = environment_info();
    const unsigned jobs = options.jobs != 0 ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
    const auto start = std::chrono::steady_clock::now();

    std::vector<const TestCase*> mplane;
    std::vector<const TestCase*> dependent;
    for (const auto* tc : selected) (tc->plane == Plane::M ? mplane : dependent).push_back(tc);

    std::vector<CaseRecord> first;
    run_parallel(mplane, first, profile, report.seed, jobs, options.on_record);

    std::vector<CaseRecord> second;
    auto gate = std::find_if(first.begin(), first.end(), [](const CaseRecord& r) { return r.id == kEstablishmentCase; });
    if (gate != first.end() && gate->verdict != Verdict::pass) {
        for (const auto* tc : dependent) {
            auto r = make_record(*tc);
            r.verdict = Verdict::blocked;
            r.faults = faults_for(profile, tc->id).active();
            r.detail = "prerequisite " + std::string(kEstablishmentCase) + " did not pass; no M-Plane session";
            if (options.on_record) options.on_record(r);
            second.push_back(std::move(r));
        }
    } else {
        run_parallel(dependent, second, profile, report.seed, jobs, options.on_record);
    }

    // Report order is catalog order, not completion order.
    std::vector<CaseRecord> all;
    all.reserve(first.size() + second.size());
    std::move(first.begin(), first.end(), std::back_inserter(all));
    std::move(second.begin(), second.end(), std::back_inserter(all));
    auto position = [](const CaseRecord& r) { return find_case(r.id) - kCatalog.data(); };
    std::sort(all.begin(), all.end(), [&](const CaseRecord& a, const CaseRecord& b) { return position(a) < position(b); });
    report.records = std::move(all);
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.finished_at = utc_now();
    return report;
}

} // namespace ofh::runner
