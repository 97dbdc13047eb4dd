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

#include <algorithm>
#include <cmath>

#include "ofh/cuplane/analyzer.hpp"
#include "ofh/sim/random.hpp"
#include "support.hpp"

namespace ofh::runner::scenarios {

namespace {

using codec::DataDirection;
using cuplane::Allocation;
using cuplane::Modulation;
using cuplane::ResourceGrid;
using cuplane::WaveformSpec;
using mplane::Json;
using support::Checks;
using support::Lab;

std::int64_t next_slot(ru::Testbed& tb, DataDirection direction) {
    const auto& carrier = tb.builder().carrier();
    auto slot = cuplane::slot_at(carrier, tb.scheduler().now() + sim::millis(2)) + 1;
    while (!carrier.carries(slot, direction)) ++slot;
    return slot;
}

void run_past(ru::Testbed& tb, std::int64_t slot) {
    tb.scheduler().run_until(cuplane::slot_start(tb.builder().carrier(), slot + 2));
}

// Test-model names carried into reports; modulation is set per allocation.
constexpr const char* kDlModel = "NR-RF1-TM1.1";
constexpr const char* kUlModel = "G-FR1-A-5";

WaveformSpec waveform(const CaseContext& ctx, Modulation modulation, const char* tag) {
    sim::Rng rng(ctx.seed, sim::Stream::grid_payload);
    WaveformSpec w;
    w.model_tag = tag;
    w.modulation = modulation;
    w.seed = static_cast<std::uint32_t>(rng.next() & 0x7FFFFF) | 1u;
    return w;
}

/// The TER holds the lab only once carriers are up; otherwise nothing on
/// the CU-Plane is observable.
std::optional<std::string> prepare(Lab& lab) { return lab->bring_up(); }

/// One DL slot; compares the emitted port against the reference grid.
cuplane::MeasurementResult dl_slot(ru::Testbed& tb, const ResourceGrid& grid, const Allocation& alloc,
                                   const cuplane::BeamSpec& beam = {}, std::int64_t* used = nullptr) {
    const auto slot = next_slot(tb, DataDirection::downlink);
    tb.deliver(tb.builder().dl_slot(slot, grid, alloc, beam));
    run_past(tb, slot);
    if (used) *used = slot;
    return cuplane::analyze_dl_output(tb.rf(), slot, tb.builder().eaxc().ru_port_id, grid);
}

/// Full-band energy on the air; the O-RU must return only the PRBs the
/// C-Plane asked for.
cuplane::MeasurementResult ul_slot(ru::Testbed& tb, const WaveformSpec& w, const Allocation& alloc) {
    const auto& carrier = tb.builder().carrier();
    const auto air = cuplane::generate_grid(carrier, w, Allocation{0, carrier.n_prb, 0, cuplane::kSymbolsPerSlot});
    ResourceGrid expected(carrier.n_prb);
    for (int sym = alloc.start_symbol; sym < alloc.start_symbol + alloc.num_symbols; ++sym) {
        for (int k = 0; k < alloc.num_prb; ++k) expected.set_prb(sym, alloc.prb(k), air.prb(sym, alloc.prb(k)));
    }
    const auto slot = next_slot(tb, DataDirection::uplink);
    tb.rf().inject(slot, air);
    tb.deliver(tb.builder().ul_slot(slot, alloc));
    run_past(tb, slot);
    return cuplane::analyze_ul_output(tb.uplink(), slot, expected);
}

struct AllocCase {
    Allocation alloc;
    Modulation modulation;
};

CaseOutcome allocation_suite(CaseContext& ctx, const std::vector<AllocCase>& cases) {
    Lab lab(ctx);
    if (auto failure = prepare(lab)) return support::blocked(lab, *failure);
    Checks c;
    Json dl = Json::array();
    Json ul = Json::array();
    for (const auto& [alloc, modulation] : cases) {
        const auto grid = cuplane::generate_grid(lab->builder().carrier(), waveform(ctx, modulation, kDlModel), alloc);
        const auto d = dl_slot(*lab, grid, alloc);
        const auto u = ul_slot(*lab, waveform(ctx, modulation, kUlModel), alloc);
        const std::string name = std::to_string(alloc.start_prb) + "+" + std::to_string(alloc.num_prb) +
                                 (alloc.rb ? "/2" : "") + " " + std::string(cuplane::to_string(modulation));
        c.require(d.verdict == Verdict::pass, "DL " + name + ": " + d.detail);
        c.require(u.verdict == Verdict::pass, "UL " + name + ": " + u.detail);
        dl.push_back({{"allocation", name}, {"normalized_error", d.normalized_error}});
        ul.push_back({{"allocation", name}, {"normalized_error", u.normalized_error}});
    }
    const auto received = lab->read_counter("dl-cplane-received");
    c.require(received == cases.size(), "O-RU counted a different number of DL C-Plane messages");
    return support::judged(lab, c, {{"dl", dl}, {"ul", ul}});
}

/// `count` offsets inside [lo, hi].
std::vector<sim::SimTime> offsets_within(const CaseContext& ctx, std::size_t count, sim::SimTime lo, sim::SimTime hi) {
    sim::Rng rng(ctx.seed, sim::Stream::dlm_offsets);
    std::vector<sim::SimTime> out(count);
    for (auto& o : out) o = rng.uniform_int(lo, hi);
    // Both edges are inclusive and must be exercised.
    out[0] = lo;
    out[1] = hi;
    return out;
}

/// Half too early, half too late; the boundary neighbours come first.
std::vector<sim::SimTime> offsets_outside(const CaseContext& ctx, std::size_t count, sim::SimTime lo, sim::SimTime hi) {
    sim::Rng rng(ctx.seed, sim::Stream::dlm_offsets);
    std::vector<sim::SimTime> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = i % 2 == 0 ? rng.uniform_int(hi + 1, hi + 300'000) : rng.uniform_int(0, lo - 1);
    }
    out[0] = hi + 1;
    out[1] = lo - 1;
    return out;
}

constexpr std::size_t kDlmMessages = 100;

CaseOutcome dlm(CaseContext& ctx, DataDirection direction, bool positive) {
    Lab lab(ctx);
    if (auto failure = prepare(lab)) return support::blocked(lab, *failure);
    const bool dl = direction == DataDirection::downlink;
    const auto& w = lab->builder().window();
    // DL timing is judged on the U-Plane, UL timing on the C-Plane request.
    const auto lo = dl ? w.t2a_min_up_ns : w.t2a_min_cp_ns;
    const auto hi = dl ? w.t2a_max_up_ns : w.t2a_max_cp_ns;
    const auto offsets = positive ? offsets_within(ctx, kDlmMessages, lo, hi) : offsets_outside(ctx, kDlmMessages, lo, hi);

    cuplane::DlmSetup setup{lab->scheduler(), lab->ru(), lab->rf(), lab->uplink(), lab->builder(),
                            waveform(ctx, Modulation::qpsk, kDlModel)};
    const auto r = cuplane::evaluate_dlm(setup, direction, offsets);
    const auto& n = r.counters;
    Checks c;
    c.require(r.verdict == Verdict::pass, r.detail);
    c.require(n.conserved(), "received + dropped != sent");
    c.require(n.sent == offsets.size(), "not every message was sent");
    if (positive) {
        c.require(n.received == n.sent, "in-window message dropped");
    } else {
        c.require(n.received == 0, "out-of-window message processed");
        c.require(n.dropped_early > 0 && n.dropped_late > 0, "both early and late drops expected");
        c.require(r.out_of_window_energy == 0.0, "dropped message left energy");
    }
    const std::string prefix = dl ? "dl-uplane-" : "ul-cplane-";
    c.require(lab->read_counter(prefix + "early") == n.dropped_early, "O-RU early counter disagrees");
    c.require(lab->read_counter(prefix + "late") == n.dropped_late, "O-RU late counter disagrees");
    return support::judged(lab, c,
                           {{"sent", n.sent},
                            {"received", n.received},
                            {"dropped_early", n.dropped_early},
                            {"dropped_late", n.dropped_late},
                            {"out_of_window_energy", r.out_of_window_energy},
                            {"window_ns", {lo, hi}}});
}

} // namespace

CaseOutcome base_dl_ul(CaseContext& ctx) {
    Lab lab(ctx);
    if (auto failure = prepare(lab)) return support::blocked(lab, *failure);
    const auto& carrier = lab->builder().carrier();
    const Allocation full{0, carrier.n_prb, 0, cuplane::kSymbolsPerSlot};
    const auto w = waveform(ctx, Modulation::qpsk, kDlModel);
    const auto grid = cuplane::generate_grid(carrier, w, full);
    const auto d = dl_slot(*lab, grid, full);
    const auto uw = waveform(ctx, Modulation::qpsk, kUlModel);
    const auto u = ul_slot(*lab, uw, full);
    Checks c;
    c.require(d.verdict == Verdict::pass, "DL: " + d.detail);
    c.require(u.verdict == Verdict::pass, "UL: " + u.detail);
    c.require(lab->read_counter("dl-uplane-received") == static_cast<std::uint64_t>(cuplane::kSymbolsPerSlot),
              "O-RU did not count one DL U-Plane message per symbol");
    c.require(lab->read_counter("ul-uplane-sent") == static_cast<std::uint64_t>(cuplane::kSymbolsPerSlot),
              "O-RU did not answer every UL symbol");
    return support::judged(lab, c,
                           {{"dl_normalized_error", d.normalized_error},
                            {"ul_normalized_error", u.normalized_error},
                            {"dl_test_model", w.model_tag},
                            {"ul_test_model", uw.model_tag}});
}

CaseOutcome extended_allocation(CaseContext& ctx) {
    return allocation_suite(ctx,
                            {{{0, 24, 0, 14}, Modulation::qam64},
                             {{40, 51, 2, 10}, Modulation::qam256},
                             {{100, 33, 7, 7}, Modulation::qpsk},
                             {{132, 1, 13, 1}, Modulation::qam256}});
}

CaseOutcome extended_rb_allocation(CaseContext& ctx) {
    return allocation_suite(ctx,
                            {{{0, 67, 0, 14, true}, Modulation::qpsk},
                             {{1, 66, 0, 14, true}, Modulation::qam64},
                             {{30, 20, 4, 6, true}, Modulation::qam256}});
}

CaseOutcome dl_no_beamforming(CaseContext& ctx) {
    Lab lab(ctx);
    if (auto failure = prepare(lab)) return support::blocked(lab, *failure);
    const auto& carrier = lab->builder().carrier();
    const Allocation full{0, carrier.n_prb, 0, cuplane::kSymbolsPerSlot};
    const auto grid = cuplane::generate_grid(carrier, waveform(ctx, Modulation::qam256, kDlModel), full);
    std::int64_t slot = 0;
    const auto d = dl_slot(*lab, grid, full, {}, &slot);
    const int own = lab->builder().eaxc().ru_port_id;
    double leaked = 0.0;
    for (int p = 0; p < carrier.ru_ports; ++p) {
        if (p == own) continue;
        for (int sym = 0; sym < cuplane::kSymbolsPerSlot; ++sym) leaked += lab->rf().emitted_energy({slot, sym, p});
    }
    Checks c;
    c.require(d.verdict == Verdict::pass, d.detail);
    c.require(leaked == 0.0, "energy on ports other than the stream's own");
    return support::judged(lab, c, {{"normalized_error", d.normalized_error}, {"other_port_energy", leaked}});
}

CaseOutcome ul_no_beamforming(CaseContext& ctx) {
    Lab lab(ctx);
    if (auto failure = prepare(lab)) return support::blocked(lab, *failure);
    const auto& carrier = lab->builder().carrier();
    const Allocation full{0, carrier.n_prb, 0, cuplane::kSymbolsPerSlot};
    const auto u = ul_slot(*lab, waveform(ctx, Modulation::qam64, kUlModel), full);
    bool own_stream = !lab->uplink().received().empty();
    for (const auto& m : lab->uplink().received()) {
        own_stream &= m.message.header.eaxc == lab->builder().eaxc();
    }
    Checks c;
    c.require(u.verdict == Verdict::pass, u.detail);
    c.require(own_stream, "UL U-Plane not on the requested eAxC");
    return support::judged(lab, c, {{"normalized_error", u.normalized_error},
                                    {"messages", lab->uplink().received().size()}});
}

CaseOutcome weight_based_beamforming(CaseContext& ctx) {
    Lab lab(ctx);
    if (auto failure = prepare(lab)) return support::blocked(lab, *failure);
    const auto& carrier = lab->builder().carrier();
    const Allocation alloc{0, 8, 0, 2};
    const auto grid = cuplane::generate_grid(carrier, waveform(ctx, Modulation::qpsk, kDlModel), alloc);
    sim::Rng rng(ctx.seed, sim::Stream::grid_payload);
    std::vector<double> targets{-45.0, 0.0, 45.0};
    for (int i = 0; i < 4; ++i) targets.push_back(std::round(rng.uniform(-45.0, 45.0) * 10.0) / 10.0);
    Checks c;
    Json detected = Json::array();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        // The beam id names a table entry; the inline weights must win.
        const cuplane::BeamSpec beam{static_cast<std::uint16_t>(i + 1),
                                     cuplane::steering_weights(targets[i], carrier.ru_ports)};
        const auto slot = next_slot(*lab, DataDirection::downlink);
        lab->deliver(lab->builder().dl_slot(slot, grid, alloc, beam));
        run_past(*lab, slot);
        const auto r = cuplane::analyze_beam(lab->rf(), slot, targets[i]);
        c.require(r.verdict == Verdict::pass, r.detail);
        detected.push_back({{"target_deg", targets[i]},
                            {"detected_deg", r.detected_azimuth_deg ? Json(*r.detected_azimuth_deg) : Json()}});
    }
    c.require(lab->read_counter("unknown-beam") == 0u, "inline weights were looked up in the beam table");
    return support::judged(lab, c, {{"beams", detected}});
}

CaseOutcome dlm_dl_positive(CaseContext& ctx) { return dlm(ctx, DataDirection::downlink, true); }
CaseOutcome dlm_ul_positive(CaseContext& ctx) { return dlm(ctx, DataDirection::uplink, true); }
CaseOutcome dlm_dl_negative(CaseContext& ctx) { return dlm(ctx, DataDirection::downlink, false); }
CaseOutcome dlm_ul_negative(CaseContext& ctx) { return dlm(ctx, DataDirection::uplink, false); }

CaseOutcome prach(CaseContext& ctx) {
    Lab lab(ctx);
    if (auto failure = prepare(lab)) return support::blocked(lab, *failure);
    sim::Rng rng(ctx.seed, sim::Stream::ul_injection);
    cuplane::PrachConfig cfg;
    cfg.root = static_cast<int>(1 + rng.uniform_int(0, cuplane::kPrachLength - 2));
    cfg.time_offset = 10;
    Checks c;
    Json occasions = Json::array();
    for (int i = 0; i < 3; ++i) {
        // Arrival anywhere inside the cyclic prefix is acceptable.
        const auto delay = rng.uniform_int(0, cfg.cp_length - 1) * cuplane::kPrachSamplePeriodNs;
        const auto slot = next_slot(*lab, DataDirection::uplink);
        auto preamble = cuplane::zadoff_chu(cfg.root, cfg.length);
        for (auto& v : preamble) v *= cfg.amplitude;
        lab->rf().inject_prach(
            cuplane::prach_occasion_start(lab->builder().carrier(), slot, cfg.start_symbol, cfg.time_offset) + delay,
            std::move(preamble));
        lab->deliver(lab->builder().prach(slot, cfg));
        run_past(*lab, slot);
        const auto r = cuplane::analyze_prach(lab->uplink(), slot, cfg);
        c.require(r.verdict == Verdict::pass, r.detail);
        c.require(r.correlation_peak >= cuplane::kPrachPeakThreshold, "correlation below threshold");
        occasions.push_back({{"delay_ns", delay}, {"peak", r.correlation_peak}});
    }
    return support::judged(lab, c, {{"root", cfg.root}, {"occasions", occasions}});
}

} // namespace ofh::runner::scenarios
