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
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "ofh/cuplane/grid.hpp"
#include "ofh/sim/time.hpp"

namespace ofh::cuplane {

/// The TER's RF side: a signal analyzer behind each O-RU antenna port (DL)
/// and a signal generator feeding the O-RU's receive path (UL).
class VirtualRf {
public:
    struct Key {
        std::int64_t slot = 0;
        int symbol = 0;
        int port = 0;
        auto operator<=>(const Key&) const = default;
    };

    struct PrachInjection {
        sim::SimTime at = 0;
        std::vector<Cplx> samples;
    };

    VirtualRf(int n_prb, int ports);

    int n_prb() const noexcept { return n_prb_; }
    int ports() const noexcept { return ports_; }
    int res_per_symbol() const noexcept { return n_prb_ * static_cast<int>(codec::kSubcarriersPerPrb); }

    // Downlink: written by the O-RU. Overlapping emissions add.
    void emit(const Key& key, int start_re, std::span<const Cplx> samples);
    /// Full-band vector for one symbol and port; zeros where nothing was emitted.
    std::vector<Cplx> emitted(const Key& key) const;
    double emitted_energy(const Key& key) const;
    double emitted_energy() const;
    bool any_emission() const noexcept { return !emissions_.empty(); }
    std::vector<Key> emitted_keys() const;

    /// Per-port streams for one slot, restricted to REs that any port
    /// emitted, ordered (symbol, RE). The input to beam detection.
    std::vector<std::vector<Cplx>> port_signals(std::int64_t slot) const;

    /// Whole slot for one port, symbol-major; same layout as ResourceGrid::values().
    std::vector<Cplx> slot_values(std::int64_t slot, int port) const;

    // Uplink: written by the generator, sampled by the O-RU.
    void inject(std::int64_t slot, int symbol, std::vector<codec::IqSample> full_band);
    /// Injects every symbol of `grid` into `slot`.
    void inject(std::int64_t slot, const ResourceGrid& grid);
    const std::vector<codec::IqSample>* injected(std::int64_t slot, int symbol) const;

    void inject_prach(sim::SimTime at, std::vector<Cplx> samples);
    const std::vector<PrachInjection>& prach_injections() const noexcept { return prach_; }

    void clear();

private:
    struct Segment {
        int start_re = 0;
        std::vector<Cplx> samples;
    };

    int n_prb_;
    int ports_;
    std::map<Key, std::vector<Segment>> emissions_;
    std::map<std::pair<std::int64_t, int>, std::vector<codec::IqSample>> injections_;
    std::vector<PrachInjection> prach_;
};

} // namespace ofh::cuplane
