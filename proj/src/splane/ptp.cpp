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

#include "ofh/splane/ptp.hpp"

#include <algorithm>
#include <cstdio>

namespace ofh::splane {

namespace {

std::string rate_violation(const char* what, double got, double want) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s rate %.3g Hz, profile requires %.3g Hz", what, got, want);
    return buf;
}

double traverse(double base, const std::vector<HopModel>& hops, sim::Rng& jitter) {
    double total = base;
    for (const auto& hop : hops) {
        total += hop.residence_ns;
        if (hop.jitter_ns > 0.0) total += jitter.uniform(0.0, hop.jitter_ns);
    }
    return total;
}

} // namespace

std::vector<std::string> PtpProfileConfig::violations() const {
    std::vector<std::string> out;
    if (domain_number < 24 || domain_number > 43) {
        out.push_back("domain " + std::to_string(domain_number) + " outside 24..43");
    }
    if (announce_rate_hz != 8.0) out.push_back(rate_violation("announce", announce_rate_hz, 8.0));
    if (sync_rate_hz != 16.0) out.push_back(rate_violation("sync", sync_rate_hz, 16.0));
    if (delay_req_rate_hz != 16.0) out.push_back(rate_violation("delay_req", delay_req_rate_hz, 16.0));
    return out;
}

double PathModel::forward(sim::Rng& jitter) const { return traverse(forward_delay_ns, hops, jitter); }
double PathModel::reverse(sim::Rng& jitter) const { return traverse(reverse_delay_ns, hops, jitter); }

double PathModel::fixed_residence_ns() const noexcept {
    double sum = 0.0;
    for (const auto& hop : hops) sum += hop.residence_ns;
    return sum;
}

std::string to_string(Topology t) {
    switch (t) {
    case Topology::c1: return "LLS-C1";
    case Topology::c2: return "LLS-C2";
    case Topology::c3: return "LLS-C3";
    }
    return "unknown";
}

PathModel make_path(Topology topology, double base_delay_ns, double asymmetry_ns, double residence_ns,
                    double jitter_ns) {
    PathModel path;
    path.forward_delay_ns = base_delay_ns;
    path.reverse_delay_ns = base_delay_ns + asymmetry_ns;
    const int hops = topology == Topology::c1 ? 0 : topology == Topology::c2 ? 1 : 3;
    path.hops.assign(static_cast<std::size_t>(hops), HopModel{residence_ns, jitter_ns});
    return path;
}

ExchangeResult solve_exchange(double t1, double t2, double t3, double t4) noexcept {
    ExchangeResult r{t1, t2, t3, t4, 0.0, 0.0};
    r.offset_est_ns = ((t2 - t1) - (t4 - t3)) / 2.0;
    r.delay_est_ns = ((t2 - t1) + (t4 - t3)) / 2.0;
    return r;
}

ExchangeResult ptp_exchange(SimClock& master, SimClock& slave, const PathModel& path, double start, sim::Rng& jitter,
                            double turnaround_ns, double* completed_at) {
    const double t1 = master.read(start);
    const double sync_arrival = start + path.forward(jitter);
    const double t2 = slave.read(sync_arrival);
    const double req_departure = sync_arrival + turnaround_ns;
    const double t3 = slave.read(req_departure);
    const double req_arrival = req_departure + path.reverse(jitter);
    const double t4 = master.read(req_arrival);
    if (completed_at != nullptr) *completed_at = req_arrival;
    return solve_exchange(t1, t2, t3, t4);
}

std::optional<AnnounceRecord> bmca_select(std::span<const AnnounceRecord> announces) {
    if (announces.empty()) return std::nullopt;
    return *std::min_element(announces.begin(), announces.end(),
                             [](const AnnounceRecord& a, const AnnounceRecord& b) { return a.key() < b.key(); });
}

} // namespace ofh::splane
