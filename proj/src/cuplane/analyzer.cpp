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

#include "ofh/cuplane/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ofh::cuplane {

double normalized_error(std::span<const Cplx> emitted, std::span<const Cplx> reference) {
    if (emitted.size() != reference.size()) {
        throw CuplaneError(CuplaneErrc::invalid_config, "grid sizes differ");
    }
    double p_ref = 0.0;
    double p_emit = 0.0;
    for (std::size_t k = 0; k < reference.size(); ++k) {
        p_ref += std::norm(reference[k]);
        p_emit += std::norm(emitted[k]);
    }
    if (p_emit == 0.0) return p_ref == 0.0 ? 0.0 : 1.0;
    if (p_ref == 0.0) return 1.0;
    const double alpha = std::sqrt(p_ref / p_emit);
    double err = 0.0;
    for (std::size_t k = 0; k < reference.size(); ++k) err += std::norm(alpha * emitted[k] - reference[k]);
    return err / p_ref;
}

MeasurementResult compare_grids(std::span<const Cplx> emitted, std::span<const Cplx> reference,
                                double threshold) {
    MeasurementResult r;
    r.normalized_error = normalized_error(emitted, reference);
    r.verdict = r.normalized_error < threshold ? Verdict::pass : Verdict::fail;
    std::ostringstream d;
    d << "normalized_error=" << r.normalized_error << " threshold=" << threshold;
    r.detail = d.str();
    return r;
}

namespace {

// Counts symbols that carry any energy; width is the per-symbol RE count.
std::uint64_t active_symbols(const std::vector<Cplx>& values, std::size_t width) {
    std::uint64_t n = 0;
    for (std::size_t start = 0; start + width <= values.size(); start += width) {
        if (std::any_of(values.begin() + static_cast<std::ptrdiff_t>(start),
                        values.begin() + static_cast<std::ptrdiff_t>(start + width),
                        [](const Cplx& v) { return std::norm(v) > 0.0; })) {
            ++n;
        }
    }
    return n;
}

} // namespace

MeasurementResult analyze_dl_output(const VirtualRf& rf, std::int64_t slot, int port,
                                    const ResourceGrid& reference, double threshold) {
    const auto emitted = rf.slot_values(slot, port);
    const auto ref = reference.values();
    auto r = compare_grids(emitted, ref, threshold);
    const auto seen = active_symbols(emitted, static_cast<std::size_t>(rf.res_per_symbol()));
    r.counters.sent = seen;
    r.counters.received = seen;
    if (seen == 0) {
        r.verdict = Verdict::fail;
        r.detail = "no emission on port " + std::to_string(port) + " in slot " + std::to_string(slot);
    }
    return r;
}

MeasurementResult analyze_ul_output(const UplinkCollector& uplink, std::int64_t slot,
                                    const ResourceGrid& injected, double threshold) {
    const auto returned = uplink.slot_values(slot);
    auto r = compare_grids(returned, injected.values(), threshold);
    std::uint64_t messages = 0;
    for (const auto& m : uplink.received()) {
        if (m.slot == slot) ++messages;
    }
    r.counters.sent = messages;
    r.counters.received = messages;
    if (messages == 0) {
        r.verdict = Verdict::fail;
        r.detail = "no UL U-Plane for slot " + std::to_string(slot);
    }
    return r;
}

MeasurementResult analyze_beam(const VirtualRf& rf, std::int64_t slot, double expected_deg,
                               double tolerance_deg) {
    MeasurementResult r;
    const auto detection = detect_beam_direction(rf.port_signals(slot));
    r.detected_azimuth_deg = detection.azimuth_deg;
    std::ostringstream d;
    d << "expected=" << expected_deg << " peak_to_average=" << detection.peak_to_average;
    if (detection.azimuth_deg) {
        d << " detected=" << *detection.azimuth_deg;
        r.verdict = std::abs(*detection.azimuth_deg - expected_deg) <= tolerance_deg ? Verdict::pass
                                                                                     : Verdict::fail;
    } else {
        d << " no dominant beam";
        r.verdict = Verdict::fail;
    }
    r.detail = d.str();
    return r;
}

std::vector<Cplx> zadoff_chu(int root, int length) {
    std::vector<Cplx> x(static_cast<std::size_t>(length));
    for (int n = 0; n < length; ++n) {
        // n*(n+1) reduced mod 2L keeps the phase argument small and exact.
        const auto m = (static_cast<std::int64_t>(root) * n * (n + 1)) % (2LL * length);
        x[static_cast<std::size_t>(n)] = std::polar(1.0, -std::numbers::pi * static_cast<double>(m) / length);
    }
    return x;
}

Correlation prach_correlate(std::span<const Cplx> received, int root, int length) {
    Correlation best;
    if (static_cast<int>(received.size()) < length) return best;
    const auto x = zadoff_chu(root, length);
    double e_r = 0.0;
    for (int n = 0; n < length; ++n) e_r += std::norm(received[static_cast<std::size_t>(n)]);
    if (e_r == 0.0) return best;
    const double denom = std::sqrt(e_r * length);
    for (int lag = 0; lag < length; ++lag) {
        Cplx acc{};
        for (int n = 0; n < length; ++n) {
            acc += received[static_cast<std::size_t>(n)] * std::conj(x[static_cast<std::size_t>((n + lag) % length)]);
        }
        const double c = std::abs(acc) / denom;
        if (c > best.peak) best = Correlation{c, lag};
    }
    return best;
}

MeasurementResult analyze_prach(const UplinkCollector& uplink, std::int64_t slot, const PrachConfig& config,
                                double threshold) {
    MeasurementResult r;
    std::uint64_t messages = 0;
    for (const auto& m : uplink.received()) {
        if (m.slot == slot) ++messages;
    }
    r.counters.sent = messages;
    r.counters.received = messages;
    if (messages == 0) {
        r.detail = "no U-Plane for the PRACH occasion";
        return r;
    }
    const auto row = uplink.symbol_values(slot, config.start_symbol);
    const auto first = static_cast<std::size_t>(config.start_prb) * codec::kSubcarriersPerPrb;
    std::span<const Cplx> samples(row.data() + first, row.size() - first);
    const auto c = prach_correlate(samples, config.root, config.length);
    r.correlation_peak = c.peak;
    r.verdict = c.peak >= threshold ? Verdict::pass : Verdict::fail;
    std::ostringstream d;
    d << "peak=" << c.peak << " lag=" << c.lag << " threshold=" << threshold;
    r.detail = d.str();
    return r;
}

MeasurementResult evaluate_dlm(DlmSetup& setup, codec::DataDirection direction,
                               std::span<const sim::SimTime> offsets) {
    const auto& carrier = setup.builder.carrier();
    const auto& window = setup.builder.window();
    const bool downlink = direction == codec::DataDirection::downlink;
    const sim::SimTime lo = downlink ? window.t2a_min_up_ns : window.t2a_min_cp_ns;
    const sim::SimTime hi = downlink ? window.t2a_max_up_ns : window.t2a_max_cp_ns;

    sim::SimTime lead = window.t2a_max_cp_ns;
    for (auto o : offsets) lead = std::max(lead, o);
    std::int64_t slot = slot_at(carrier, setup.scheduler.now() + lead) + 2;

    const Allocation full{setup.allocation.start_prb, setup.allocation.num_prb, 0, kSymbolsPerSlot};
    const ResourceGrid grid = generate_grid(carrier, setup.waveform, full);

    struct Sent {
        std::int64_t slot;
        int symbol;
        sim::SimTime advance;
    };
    std::vector<Sent> sent;
    sent.reserve(offsets.size());
    Flow flow;
    std::size_t next = 0;
    while (next < offsets.size()) {
        if (!carrier.carries(slot, direction)) {
            ++slot;
            continue;
        }
        if (downlink) {
            Flow slot_flow = setup.builder.dl_slot(slot, grid, full);
            flow.push_back(std::move(slot_flow.front()));
            for (std::size_t k = 1; k < slot_flow.size() && next < offsets.size(); ++k, ++next) {
                auto& m = slot_flow[k];
                retime(m, offsets[next]);
                sent.push_back(Sent{slot, m.symbol, offsets[next]});
                flow.push_back(std::move(m));
            }
        } else {
            setup.rf.inject(slot, grid);
            Flow slot_flow = setup.builder.ul_slot(slot, full);
            retime(slot_flow.front(), offsets[next]);
            sent.push_back(Sent{slot, 0, offsets[next]});
            flow.push_back(std::move(slot_flow.front()));
            ++next;
        }
        ++slot;
    }

    schedule_flow(setup.scheduler, flow,
                  [&dut = setup.dut](const TimedMessage& m) { dut.receive_fronthaul(m.frame); });
    setup.scheduler.run_until(slot_start(carrier, slot + 2));

    MeasurementResult r;
    r.counters.sent = sent.size();
    std::uint64_t mismatches = 0;
    for (const auto& s : sent) {
        const Arrival predicted = classify(s.advance, lo, hi);
        double energy = 0.0;
        if (downlink) {
            energy = setup.rf.emitted_energy(VirtualRf::Key{s.slot, s.symbol, setup.port});
        } else {
            for (const auto& v : setup.uplink.slot_values(s.slot)) energy += std::norm(v);
        }
        const bool seen = downlink ? energy > 0.0 : setup.uplink.has_slot(s.slot);
        if (seen) {
            ++r.counters.received;
        } else if (s.advance > hi) {
            ++r.counters.dropped_early;
        } else {
            ++r.counters.dropped_late;
        }
        if (predicted != Arrival::on_time) r.out_of_window_energy += energy;
        if (seen != (predicted == Arrival::on_time)) ++mismatches;
    }
    r.verdict = mismatches == 0 && r.out_of_window_energy == 0.0 ? Verdict::pass : Verdict::fail;
    std::ostringstream d;
    d << (downlink ? "DL" : "UL") << " sent=" << r.counters.sent << " received=" << r.counters.received
      << " early=" << r.counters.dropped_early << " late=" << r.counters.dropped_late
      << " mismatches=" << mismatches << " out_of_window_energy=" << r.out_of_window_energy;
    r.detail = d.str();
    return r;
}

} // namespace ofh::cuplane
