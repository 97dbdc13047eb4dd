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
#include <string>
#include <string_view>
#include <vector>

#include "ofh/cuplane/grid.hpp"

namespace ofh::cuplane {

struct BeamEntry {
    std::uint16_t beam_id = 0;
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
    std::vector<Cplx> weights;
};

/// Conjugate steering vector of a half-wavelength uniform linear array,
/// w[n] = exp(-j*pi*n*sin(az)) / sqrt(ports).
std::vector<Cplx> steering_weights(double azimuth_deg, int ports);

/// Scales `weights` to unit total power. Throws on an all-zero vector.
std::vector<Cplx> normalize_weights(std::vector<Cplx> weights);

class BeamTable {
public:
    explicit BeamTable(int ports = 32) : ports_(ports) {}

    /// Ids run 1..32767 (0 means "no beamforming"). Weights are normalized on
    /// insertion. Throws CuplaneError(malformed_beam_table).
    void add(BeamEntry entry);
    const BeamEntry* find(std::uint16_t beam_id) const;

    int ports() const noexcept { return ports_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::uint16_t, BeamEntry>& entries() const noexcept { return entries_; }

    /// Steering-vector beams at `from`, `from + step`, ... up to `to`, ids from 1.
    static BeamTable synthetic(int ports = 32, double from_deg = -45.0, double to_deg = 45.0,
                               double step_deg = 2.5);
    bool is_synthetic() const noexcept { return synthetic_; }

    /// {"synthetic": bool, "beams": [{"beam_id", "azimuth_deg", "elevation_deg",
    ///   "weights": [[re, im], ...]}]}
    static BeamTable from_json(std::string_view text, int ports = 32);
    std::string to_json() const;

private:
    int ports_;
    bool synthetic_ = false;
    std::map<std::uint16_t, BeamEntry> entries_;
};

/// Sum over samples of |sum_n s_n(t) exp(j*pi*n*sin(theta))|^2.
/// `port_signals[n]` is port n's sample stream; streams must be equally long.
double array_factor(const std::vector<std::vector<Cplx>>& port_signals, double theta_deg);

/// Below this peak-to-average ratio of the scanned array factor there is no
/// dominant beam.
inline constexpr double kDominanceRatio = 2.0;

struct BeamDetection {
    std::optional<double> azimuth_deg;
    double peak_to_average = 0.0;
};

/// Scans -90..+90 degrees in 1 degree steps; ties go to the smaller |theta|
/// (the positive angle when |theta| is equal).
BeamDetection detect_beam_direction(const std::vector<std::vector<Cplx>>& port_signals);

} // namespace ofh::cuplane
