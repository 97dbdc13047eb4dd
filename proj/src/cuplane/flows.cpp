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

#include "ofh/cuplane/flows.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ofh/codec/error.hpp"

namespace ofh::cuplane {

void retime(TimedMessage& message, sim::SimTime advance) {
    message.advance = advance;
    message.send_at = message.air_time - advance;
}

std::vector<codec::IqSample> quantize_weights(std::span<const Cplx> weights) {
    double peak = 0.0;
    for (const auto& w : weights) peak = std::max({peak, std::abs(w.real()), std::abs(w.imag())});
    std::vector<codec::IqSample> out(weights.size());
    if (peak <= 0.0) return out;
    const double scale = 32767.0 / peak;
    for (std::size_t n = 0; n < weights.size(); ++n) {
        out[n].i = static_cast<std::int16_t>(std::lround(weights[n].real() * scale));
        out[n].q = static_cast<std::int16_t>(std::lround(weights[n].imag() * scale));
    }
    return out;
}

std::vector<Cplx> dequantize_weights(std::span<const codec::IqSample> weights) {
    std::vector<Cplx> out;
    out.reserve(weights.size());
    for (const auto& w : weights) out.emplace_back(w.i, w.q);
    return out;
}

sim::SimTime prach_occasion_start(const CarrierConfig& carrier, std::int64_t slot, int start_symbol,
                                  std::uint16_t time_offset) {
    return symbol_time(carrier, slot, start_symbol) + time_offset * kPrachSamplePeriodNs;
}

FlowBuilder::FlowBuilder(CarrierConfig carrier, DelayWindow window, codec::EaxcId eaxc)
    : carrier_(std::move(carrier)), window_(window), eaxc_(eaxc) {
    carrier_.validate();
    window_.validate();
    eaxc_.layout = carrier_.eaxc_layout;
}

void FlowBuilder::check(std::int64_t slot, codec::DataDirection direction) const {
    if (!active_) throw CuplaneError(CuplaneErrc::inactive_carrier, "carrier not active on the O-RU");
    if (!carrier_.carries(slot, direction)) {
        throw CuplaneError(CuplaneErrc::tdd_violation,
                           std::string(direction == codec::DataDirection::downlink ? "DL" : "UL") +
                               " traffic in slot " + std::to_string(slot) + " of kind " +
                               static_cast<char>(carrier_.slot_kind(slot)));
    }
}

codec::EcpriHeader FlowBuilder::header(codec::EcpriMessageType type) {
    codec::EcpriHeader h;
    h.message_type = type;
    h.eaxc = eaxc_;
    h.sequence_id = type == codec::EcpriMessageType::rt_control ? cplane_seq_++ : uplane_seq_++;
    return h;
}

namespace {

std::uint8_t wire_num_prb(int num_prb) {
    return num_prb > 255 ? 0 : static_cast<std::uint8_t>(num_prb);
}

codec::CplaneMessage cplane_skeleton(const CarrierConfig& carrier, std::int64_t slot,
                                     codec::DataDirection direction, int start_symbol) {
    const SlotAddress addr = slot_address(carrier, slot);
    codec::CplaneMessage msg;
    msg.direction = direction;
    msg.frame_id = addr.frame_id;
    msg.subframe_id = addr.subframe_id;
    msg.slot_id = addr.slot_id;
    msg.start_symbol_id = static_cast<std::uint8_t>(start_symbol);
    return msg;
}

codec::CplaneSection section_for(int start_prb, int num_prb, int num_symbols, bool rb = false) {
    codec::CplaneSection s;
    s.section_id = 1;
    s.rb = rb;
    s.start_prb = static_cast<std::uint16_t>(start_prb);
    s.num_prb = wire_num_prb(num_prb);
    s.num_symbol = static_cast<std::uint8_t>(num_symbols);
    return s;
}

} // namespace

Flow FlowBuilder::dl_slot(std::int64_t slot, const ResourceGrid& grid, const Allocation& allocation,
                          const BeamSpec& beam) {
    check(slot, codec::DataDirection::downlink);
    allocation.validate(carrier_.n_prb);
    if (allocation.num_prb == 0 || allocation.num_symbols == 0) {
        throw CuplaneError(CuplaneErrc::allocation_out_of_range, "empty allocation");
    }
    const auto cfg = carrier_.codec_config();
    Flow flow;

    auto cmsg = cplane_skeleton(carrier_, slot, codec::DataDirection::downlink, allocation.start_symbol);
    cmsg.header = header(codec::EcpriMessageType::rt_control);
    auto section = section_for(allocation.start_prb, allocation.num_prb, allocation.num_symbols, allocation.rb);
    section.beam_id = beam.beam_id;
    if (!beam.inline_weights.empty()) {
        section.extension = true;
        section.beam_weights = quantize_weights(beam.inline_weights);
    }
    cmsg.sections.push_back(std::move(section));

    TimedMessage c;
    c.plane = Plane::control;
    c.direction = codec::DataDirection::downlink;
    c.slot = slot;
    c.symbol = allocation.start_symbol;
    c.air_time = symbol_time(carrier_, slot, allocation.start_symbol);
    retime(c, window_.mid_cp());
    c.frame = codec::encode_cplane(cmsg, cfg);
    flow.push_back(std::move(c));

    const SlotAddress addr = slot_address(carrier_, slot);
    for (int sym = allocation.start_symbol; sym < allocation.start_symbol + allocation.num_symbols; ++sym) {
        codec::UplaneMessage umsg;
        umsg.header = header(codec::EcpriMessageType::iq_data);
        umsg.direction = codec::DataDirection::downlink;
        umsg.frame_id = addr.frame_id;
        umsg.subframe_id = addr.subframe_id;
        umsg.slot_id = addr.slot_id;
        umsg.symbol_id = static_cast<std::uint8_t>(sym);
        codec::UplaneSection us;
        us.section_id = 1;
        us.rb = allocation.rb;
        us.start_prb = static_cast<std::uint16_t>(allocation.start_prb);
        us.num_prb = wire_num_prb(allocation.num_prb);
        for (int k = 0; k < allocation.num_prb; ++k) {
            us.prbs.push_back(codec::bfp_compress(grid.prb(sym, allocation.prb(k))));
        }
        umsg.sections.push_back(std::move(us));

        TimedMessage u;
        u.plane = Plane::user;
        u.direction = codec::DataDirection::downlink;
        u.slot = slot;
        u.symbol = sym;
        u.air_time = symbol_time(carrier_, slot, sym);
        retime(u, window_.mid_up());
        u.frame = codec::encode_uplane(umsg, cfg);
        flow.push_back(std::move(u));
    }
    return flow;
}

Flow FlowBuilder::ul_slot(std::int64_t slot, const Allocation& allocation) {
    check(slot, codec::DataDirection::uplink);
    allocation.validate(carrier_.n_prb);
    if (allocation.num_prb == 0 || allocation.num_symbols == 0) {
        throw CuplaneError(CuplaneErrc::allocation_out_of_range, "empty allocation");
    }
    auto msg = cplane_skeleton(carrier_, slot, codec::DataDirection::uplink, allocation.start_symbol);
    msg.header = header(codec::EcpriMessageType::rt_control);
    msg.sections.push_back(
        section_for(allocation.start_prb, allocation.num_prb, allocation.num_symbols, allocation.rb));

    TimedMessage c;
    c.plane = Plane::control;
    c.direction = codec::DataDirection::uplink;
    c.slot = slot;
    c.symbol = allocation.start_symbol;
    c.air_time = symbol_time(carrier_, slot, allocation.start_symbol);
    retime(c, window_.mid_cp());
    c.frame = codec::encode_cplane(msg, carrier_.codec_config());
    return {std::move(c)};
}

Flow FlowBuilder::prach(std::int64_t slot, const PrachConfig& config) {
    check(slot, codec::DataDirection::uplink);
    Allocation span{config.start_prb, config.num_prb, config.start_symbol, config.num_symbols};
    span.validate(carrier_.n_prb);
    if (config.num_prb * static_cast<int>(codec::kSubcarriersPerPrb) < config.length) {
        throw CuplaneError(CuplaneErrc::allocation_out_of_range, "PRACH PRBs too narrow for the preamble");
    }
    auto msg = cplane_skeleton(carrier_, slot, codec::DataDirection::uplink, config.start_symbol);
    msg.header = header(codec::EcpriMessageType::rt_control);
    msg.section_type = codec::SectionType::st3;
    msg.st3 = codec::St3Fields{config.time_offset, config.frame_structure, config.cp_length, config.freq_offset};
    msg.sections.push_back(section_for(config.start_prb, config.num_prb, config.num_symbols));

    TimedMessage c;
    c.plane = Plane::control;
    c.direction = codec::DataDirection::uplink;
    c.slot = slot;
    c.symbol = config.start_symbol;
    c.air_time = symbol_time(carrier_, slot, config.start_symbol);
    retime(c, window_.mid_cp());
    c.frame = codec::encode_cplane(msg, carrier_.codec_config());
    return {std::move(c)};
}

void schedule_flow(sim::Scheduler& scheduler, const Flow& flow,
                   std::function<void(const TimedMessage&)> deliver) {
    for (const auto& m : flow) {
        if (m.send_at < scheduler.now()) {
            throw CuplaneError(CuplaneErrc::schedule_in_past,
                               "message for slot " + std::to_string(m.slot) + " would be sent in the past");
        }
    }
    auto shared = std::make_shared<std::function<void(const TimedMessage&)>>(std::move(deliver));
    for (const auto& m : flow) {
        scheduler.schedule_at(m.send_at, [shared, m] { (*shared)(m); });
    }
}

UplinkCollector::UplinkCollector(CarrierConfig carrier) : carrier_(std::move(carrier)) {}

void UplinkCollector::on_frame(sim::SimTime at, std::span<const std::uint8_t> frame) {
    codec::UplaneMessage msg;
    try {
        msg = codec::decode_uplane(frame, carrier_.codec_config());
    } catch (const codec::CodecError&) {
        ++decode_errors_;
        return;
    }
    const auto slot = resolve_slot(carrier_, SlotAddress{msg.frame_id, msg.subframe_id, msg.slot_id}, at);
    auto& row = symbols_[{slot, msg.symbol_id}];
    const auto width = static_cast<std::size_t>(carrier_.n_prb) * codec::kSubcarriersPerPrb;
    if (row.empty()) row.assign(width, Cplx{});
    for (const auto& section : msg.sections) {
        const int stride = section.rb ? 2 : 1;
        for (std::size_t k = 0; k < section.prbs.size(); ++k) {
            const auto samples = codec::bfp_decompress(section.prbs[k]);
            const std::size_t prb = section.start_prb + k * static_cast<std::size_t>(stride);
            for (std::size_t sc = 0; sc < codec::kSubcarriersPerPrb; ++sc) {
                const std::size_t re = prb * codec::kSubcarriersPerPrb + sc;
                if (re < width) row[re] = Cplx(samples[sc].i, samples[sc].q);
            }
        }
    }
    received_.push_back(Received{at, slot, std::move(msg)});
}

bool UplinkCollector::has_slot(std::int64_t slot) const {
    auto it = symbols_.lower_bound({slot, 0});
    return it != symbols_.end() && it->first.first == slot;
}

std::vector<Cplx> UplinkCollector::symbol_values(std::int64_t slot, int symbol) const {
    auto it = symbols_.find({slot, symbol});
    if (it != symbols_.end()) return it->second;
    return std::vector<Cplx>(static_cast<std::size_t>(carrier_.n_prb) * codec::kSubcarriersPerPrb);
}

std::vector<Cplx> UplinkCollector::slot_values(std::int64_t slot) const {
    std::vector<Cplx> out;
    for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
        auto row = symbol_values(slot, sym);
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

void UplinkCollector::clear() {
    received_.clear();
    symbols_.clear();
    decode_errors_ = 0;
}

} // namespace ofh::cuplane
