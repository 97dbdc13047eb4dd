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

#include "ofh/cuplane/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ofh/codec/capture.hpp"
#include "ofh/cuplane/pn23.hpp"

namespace ofh::cuplane {

Pn23::Pn23(std::uint32_t seed) : state_(seed & kMask) {
    if (state_ == 0) throw CuplaneError(CuplaneErrc::zero_seed, "PN23 seed must be non-zero");
}

std::vector<std::uint8_t> pn23_bits(std::uint32_t seed, std::size_t n) {
    Pn23 gen(seed);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = gen.next();
    return bits;
}

std::string_view to_string(Modulation modulation) noexcept {
    switch (modulation) {
    case Modulation::qpsk: return "QPSK";
    case Modulation::qam64: return "QAM64";
    case Modulation::qam256: return "QAM256";
    }
    return "unknown";
}

int bits_per_symbol(Modulation modulation) noexcept {
    switch (modulation) {
    case Modulation::qpsk: return 2;
    case Modulation::qam64: return 6;
    case Modulation::qam256: return 8;
    }
    return 0;
}

namespace {

inline double s(std::uint8_t bit) { return 1.0 - 2.0 * bit; }

} // namespace

// Same nested forms as the NR modulation mapper.
Cplx map_bits(Modulation modulation, const std::uint8_t* b) noexcept {
    switch (modulation) {
    case Modulation::qpsk:
        return Cplx(s(b[0]), s(b[1])) / std::sqrt(2.0);
    case Modulation::qam64:
        return Cplx(s(b[0]) * (4 - s(b[2]) * (2 - s(b[4]))),
                    s(b[1]) * (4 - s(b[3]) * (2 - s(b[5])))) /
               std::sqrt(42.0);
    case Modulation::qam256:
        return Cplx(s(b[0]) * (8 - s(b[2]) * (4 - s(b[4]) * (2 - s(b[6])))),
                    s(b[1]) * (8 - s(b[3]) * (4 - s(b[5]) * (2 - s(b[7]))))) /
               std::sqrt(170.0);
    }
    return {};
}

void Allocation::validate(int n_prb) const {
    const int last = num_prb == 0 ? start_prb : prb(num_prb - 1) + 1;
    if (start_prb < 0 || num_prb < 0 || last > n_prb ||
        start_symbol < 0 || num_symbols < 0 || start_symbol + num_symbols > kSymbolsPerSlot) {
        throw CuplaneError(CuplaneErrc::allocation_out_of_range,
                           "PRB " + std::to_string(start_prb) + "+" + std::to_string(num_prb) +
                               ", symbol " + std::to_string(start_symbol) + "+" +
                               std::to_string(num_symbols));
    }
}

ResourceGrid::ResourceGrid(int n_prb, int symbols)
    : n_prb_(n_prb), symbols_(symbols),
      samples_(static_cast<std::size_t>(n_prb) * codec::kSubcarriersPerPrb * static_cast<std::size_t>(symbols)) {}

codec::IqSample& ResourceGrid::at(int symbol, int re) {
    return samples_.at(static_cast<std::size_t>(symbol) * static_cast<std::size_t>(res_per_symbol()) +
                       static_cast<std::size_t>(re));
}

const codec::IqSample& ResourceGrid::at(int symbol, int re) const {
    return samples_.at(static_cast<std::size_t>(symbol) * static_cast<std::size_t>(res_per_symbol()) +
                       static_cast<std::size_t>(re));
}

codec::PrbSamples ResourceGrid::prb(int symbol, int prb) const {
    codec::PrbSamples out{};
    for (std::size_t k = 0; k < codec::kSubcarriersPerPrb; ++k) {
        out[k] = at(symbol, prb * static_cast<int>(codec::kSubcarriersPerPrb) + static_cast<int>(k));
    }
    return out;
}

void ResourceGrid::set_prb(int symbol, int prb, const codec::PrbSamples& samples) {
    for (std::size_t k = 0; k < codec::kSubcarriersPerPrb; ++k) {
        at(symbol, prb * static_cast<int>(codec::kSubcarriersPerPrb) + static_cast<int>(k)) = samples[k];
    }
}

std::size_t ResourceGrid::populated(int symbol) const {
    std::size_t n = 0;
    for (int re = 0; re < res_per_symbol(); ++re) {
        const auto& v = at(symbol, re);
        if (v.i != 0 || v.q != 0) ++n;
    }
    return n;
}

std::vector<Cplx> ResourceGrid::values() const {
    std::vector<Cplx> out;
    out.reserve(samples_.size());
    for (const auto& v : samples_) out.emplace_back(v.i, v.q);
    return out;
}

namespace {

std::int16_t to_int16(double v) {
    const double r = std::nearbyint(v);
    return static_cast<std::int16_t>(std::clamp(r, double(std::numeric_limits<std::int16_t>::min()),
                                                double(std::numeric_limits<std::int16_t>::max())));
}

} // namespace

ResourceGrid generate_grid(const CarrierConfig& carrier, const WaveformSpec& waveform,
                           const Allocation& allocation) {
    allocation.validate(carrier.n_prb);
    ResourceGrid grid(carrier.n_prb);
    Pn23 pn(waveform.seed);
    const int width = bits_per_symbol(waveform.modulation);
    std::uint8_t bits[8];
    for (int sym = allocation.start_symbol; sym < allocation.start_symbol + allocation.num_symbols; ++sym) {
        for (int k = 0; k < allocation.num_prb; ++k) {
            const int prb = allocation.prb(k);
            for (int sc = 0; sc < static_cast<int>(codec::kSubcarriersPerPrb); ++sc) {
                for (int k = 0; k < width; ++k) bits[k] = pn.next();
                const Cplx point = map_bits(waveform.modulation, bits) * waveform.rms;
                auto& re = grid.at(sym, prb * static_cast<int>(codec::kSubcarriersPerPrb) + sc);
                re.i = to_int16(point.real());
                re.q = to_int16(point.imag());
            }
        }
    }
    return grid;
}

void export_grid_capture(std::ostream& out, const ResourceGrid& grid, sim::SimTime base) {
    for (int sym = 0; sym < grid.symbols(); ++sym) {
        codec::CaptureRecord record;
        record.time_ns = static_cast<std::uint64_t>(base + sym);
        record.direction = codec::CaptureDirection::internal;
        record.bytes.reserve(static_cast<std::size_t>(grid.res_per_symbol()) * 4);
        for (int re = 0; re < grid.res_per_symbol(); ++re) {
            const auto& v = grid.at(sym, re);
            for (std::int16_t c : {v.i, v.q}) {
                const auto u = static_cast<std::uint16_t>(c);
                record.bytes.push_back(static_cast<std::uint8_t>(u >> 8));
                record.bytes.push_back(static_cast<std::uint8_t>(u & 0xFF));
            }
        }
        codec::write_capture_record(out, record);
    }
}

} // namespace ofh::cuplane
