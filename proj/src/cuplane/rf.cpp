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

#include "ofh/cuplane/rf.hpp"

#include <set>

namespace ofh::cuplane {

VirtualRf::VirtualRf(int n_prb, int ports) : n_prb_(n_prb), ports_(ports) {}

void VirtualRf::emit(const Key& key, int start_re, std::span<const Cplx> samples) {
    if (start_re < 0 || start_re + static_cast<int>(samples.size()) > res_per_symbol()) {
        throw CuplaneError(CuplaneErrc::allocation_out_of_range, "emission outside the carrier");
    }
    if (key.port < 0 || key.port >= ports_) throw CuplaneError(CuplaneErrc::invalid_config, "port");
    emissions_[key].push_back(Segment{start_re, {samples.begin(), samples.end()}});
}

std::vector<Cplx> VirtualRf::emitted(const Key& key) const {
    std::vector<Cplx> out(static_cast<std::size_t>(res_per_symbol()));
    auto it = emissions_.find(key);
    if (it == emissions_.end()) return out;
    for (const auto& seg : it->second) {
        for (std::size_t k = 0; k < seg.samples.size(); ++k) {
            out[static_cast<std::size_t>(seg.start_re) + k] += seg.samples[k];
        }
    }
    return out;
}

double VirtualRf::emitted_energy(const Key& key) const {
    double e = 0.0;
    for (const auto& v : emitted(key)) e += std::norm(v);
    return e;
}

double VirtualRf::emitted_energy() const {
    double e = 0.0;
    for (const auto& [key, segs] : emissions_) e += emitted_energy(key);
    return e;
}

std::vector<VirtualRf::Key> VirtualRf::emitted_keys() const {
    std::vector<Key> keys;
    keys.reserve(emissions_.size());
    for (const auto& [key, segs] : emissions_) keys.push_back(key);
    return keys;
}

std::vector<std::vector<Cplx>> VirtualRf::port_signals(std::int64_t slot) const {
    std::vector<std::vector<Cplx>> out(static_cast<std::size_t>(ports_));
    for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
        std::vector<std::vector<Cplx>> rows;
        std::set<int> used;
        for (int p = 0; p < ports_; ++p) {
            auto it = emissions_.find(Key{slot, sym, p});
            if (it == emissions_.end()) {
                rows.emplace_back();
                continue;
            }
            for (const auto& seg : it->second) {
                for (int k = 0; k < static_cast<int>(seg.samples.size()); ++k) used.insert(seg.start_re + k);
            }
            rows.push_back(emitted(Key{slot, sym, p}));
        }
        for (int p = 0; p < ports_; ++p) {
            auto& dst = out[static_cast<std::size_t>(p)];
            const auto& row = rows[static_cast<std::size_t>(p)];
            for (int re : used) dst.push_back(row.empty() ? Cplx{} : row[static_cast<std::size_t>(re)]);
        }
    }
    return out;
}

std::vector<Cplx> VirtualRf::slot_values(std::int64_t slot, int port) const {
    std::vector<Cplx> out;
    out.reserve(static_cast<std::size_t>(res_per_symbol()) * kSymbolsPerSlot);
    for (int sym = 0; sym < kSymbolsPerSlot; ++sym) {
        auto row = emitted(Key{slot, sym, port});
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

void VirtualRf::inject(std::int64_t slot, int symbol, std::vector<codec::IqSample> full_band) {
    if (static_cast<int>(full_band.size()) != res_per_symbol()) {
        throw CuplaneError(CuplaneErrc::allocation_out_of_range, "injected symbol width");
    }
    injections_[{slot, symbol}] = std::move(full_band);
}

void VirtualRf::inject(std::int64_t slot, const ResourceGrid& grid) {
    for (int sym = 0; sym < grid.symbols(); ++sym) {
        std::vector<codec::IqSample> row(static_cast<std::size_t>(grid.res_per_symbol()));
        for (int re = 0; re < grid.res_per_symbol(); ++re) row[static_cast<std::size_t>(re)] = grid.at(sym, re);
        inject(slot, sym, std::move(row));
    }
}

const std::vector<codec::IqSample>* VirtualRf::injected(std::int64_t slot, int symbol) const {
    auto it = injections_.find({slot, symbol});
    return it == injections_.end() ? nullptr : &it->second;
}

void VirtualRf::inject_prach(sim::SimTime at, std::vector<Cplx> samples) {
    prach_.push_back(PrachInjection{at, std::move(samples)});
}

void VirtualRf::clear() {
    emissions_.clear();
    injections_.clear();
    prach_.clear();
}

} // namespace ofh::cuplane
