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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ofh/codec/bfp.hpp"
#include "ofh/cuplane/carrier.hpp"
#include "ofh/sim/time.hpp"

namespace ofh::cuplane {

using Cplx = std::complex<double>;

enum class Modulation { qpsk, qam64, qam256 };
std::string_view to_string(Modulation modulation) noexcept;
int bits_per_symbol(Modulation modulation) noexcept;

/// Gray-coded constellation point with unit average power. `bits` holds
/// bits_per_symbol(modulation) values, b0 first.
Cplx map_bits(Modulation modulation, const std::uint8_t* bits) noexcept;

/// Stand-in for a 3GPP test model: the tag is carried into reports, the
/// payload is PN23 from `seed`.
struct WaveformSpec {
    std::string model_tag = "NR-RF1-TM1.1";
    Modulation modulation = Modulation::qpsk;
    std::uint32_t seed = 0x7FFFFF;
    /// RMS magnitude of an allocated RE in int16 units.
    double rms = 4096.0;
};

struct Allocation {
    int start_prb = 0;
    int num_prb = 0;
    int start_symbol = 0;
    int num_symbols = kSymbolsPerSlot;
    /// Every other PRB: num_prb PRBs at start_prb, start_prb + 2, ...
    bool rb = false;

    int stride() const noexcept { return rb ? 2 : 1; }
    /// PRB index of the k-th allocated PRB.
    int prb(int k) const noexcept { return start_prb + k * stride(); }
    /// Throws CuplaneError(allocation_out_of_range).
    void validate(int n_prb) const;
};

/// One slot of single-layer frequency-domain samples, indexed
/// [symbol][prb * 12 + subcarrier].
class ResourceGrid {
public:
    ResourceGrid(int n_prb, int symbols = kSymbolsPerSlot);

    int n_prb() const noexcept { return n_prb_; }
    int symbols() const noexcept { return symbols_; }
    int res_per_symbol() const noexcept { return n_prb_ * static_cast<int>(codec::kSubcarriersPerPrb); }

    codec::IqSample& at(int symbol, int re);
    const codec::IqSample& at(int symbol, int re) const;

    codec::PrbSamples prb(int symbol, int prb) const;
    void set_prb(int symbol, int prb, const codec::PrbSamples& samples);

    /// Non-zero REs in one symbol.
    std::size_t populated(int symbol) const;
    /// Whole grid as complex values, symbol-major.
    std::vector<Cplx> values() const;

    bool operator==(const ResourceGrid&) const = default;

private:
    int n_prb_;
    int symbols_;
    std::vector<codec::IqSample> samples_;
};

/// PN23 bits mapped RE by RE in allocation order (symbol, then PRB, then
/// subcarrier); everything outside the allocation is zero.
ResourceGrid generate_grid(const CarrierConfig& carrier, const WaveformSpec& waveform,
                           const Allocation& allocation);

/// Writes one capture record per symbol: time = `base` + symbol index,
/// bytes = big-endian int16 I/Q pairs.
void export_grid_capture(std::ostream& out, const ResourceGrid& grid, sim::SimTime base);

} // namespace ofh::cuplane
