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

#include "ofh/cuplane/beam.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include <json.hpp>

namespace ofh::cuplane {

namespace {

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

[[noreturn]] void malformed(const std::string& what) {
    throw CuplaneError(CuplaneErrc::malformed_beam_table, what);
}

} // namespace

std::vector<Cplx> steering_weights(double azimuth_deg, int ports) {
    std::vector<Cplx> w(static_cast<std::size_t>(ports));
    const double s = std::sin(radians(azimuth_deg));
    const double scale = 1.0 / std::sqrt(static_cast<double>(ports));
    for (int n = 0; n < ports; ++n) w[static_cast<std::size_t>(n)] = std::polar(scale, -std::numbers::pi * n * s);
    return w;
}

std::vector<Cplx> normalize_weights(std::vector<Cplx> weights) {
    double power = 0.0;
    for (const auto& w : weights) power += std::norm(w);
    if (power <= 0.0) malformed("all-zero weight vector");
    const double scale = 1.0 / std::sqrt(power);
    for (auto& w : weights) w *= scale;
    return weights;
}

void BeamTable::add(BeamEntry entry) {
    if (entry.beam_id == 0 || entry.beam_id > 0x7FFF) malformed("beam_id " + std::to_string(entry.beam_id));
    if (static_cast<int>(entry.weights.size()) != ports_) {
        malformed("beam " + std::to_string(entry.beam_id) + " has " + std::to_string(entry.weights.size()) +
                  " weights, expected " + std::to_string(ports_));
    }
    if (entries_.count(entry.beam_id) != 0) malformed("duplicate beam_id " + std::to_string(entry.beam_id));
    entry.weights = normalize_weights(std::move(entry.weights));
    entries_.emplace(entry.beam_id, std::move(entry));
}

const BeamEntry* BeamTable::find(std::uint16_t beam_id) const {
    auto it = entries_.find(beam_id);
    return it == entries_.end() ? nullptr : &it->second;
}

BeamTable BeamTable::synthetic(int ports, double from_deg, double to_deg, double step_deg) {
    BeamTable table(ports);
    table.synthetic_ = true;
    const int count = static_cast<int>(std::floor((to_deg - from_deg) / step_deg + 1e-9)) + 1;
    for (int k = 0; k < count; ++k) {
        const double az = from_deg + k * step_deg;
        table.add(BeamEntry{static_cast<std::uint16_t>(k + 1), az, 0.0, steering_weights(az, ports)});
    }
    return table;
}

BeamTable BeamTable::from_json(std::string_view text, int ports) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        malformed(e.what());
    }
    if (!doc.is_object() || !doc.contains("beams") || !doc["beams"].is_array()) malformed("missing beams array");
    BeamTable table(ports);
    table.synthetic_ = doc.value("synthetic", false);
    try {
        for (const auto& b : doc["beams"]) {
            BeamEntry entry;
            entry.beam_id = b.at("beam_id").get<std::uint16_t>();
            entry.azimuth_deg = b.at("azimuth_deg").get<double>();
            entry.elevation_deg = b.value("elevation_deg", 0.0);
            for (const auto& w : b.at("weights")) {
                if (!w.is_array() || w.size() != 2) malformed("weight must be [re, im]");
                entry.weights.emplace_back(w[0].get<double>(), w[1].get<double>());
            }
            table.add(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        malformed(e.what());
    }
    return table;
}

std::string BeamTable::to_json() const {
    nlohmann::json beams = nlohmann::json::array();
    for (const auto& [id, e] : entries_) {
        nlohmann::json weights = nlohmann::json::array();
        for (const auto& w : e.weights) weights.push_back({w.real(), w.imag()});
        beams.push_back({{"beam_id", id},
                         {"azimuth_deg", e.azimuth_deg},
                         {"elevation_deg", e.elevation_deg},
                         {"weights", std::move(weights)}});
    }
    return nlohmann::json{{"synthetic", synthetic_}, {"beams", std::move(beams)}}.dump();
}

namespace {

std::vector<Cplx> phase_row(double theta_deg, std::size_t ports) {
    std::vector<Cplx> row(ports);
    const double s = std::sin(radians(theta_deg));
    for (std::size_t n = 0; n < ports; ++n) row[n] = std::polar(1.0, std::numbers::pi * static_cast<double>(n) * s);
    return row;
}

double array_factor_row(const std::vector<std::vector<Cplx>>& signals, const std::vector<Cplx>& row) {
    if (signals.empty()) return 0.0;
    const std::size_t len = signals.front().size();
    double total = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
        Cplx acc{};
        for (std::size_t n = 0; n < signals.size(); ++n) acc += signals[n][t] * row[n];
        total += std::norm(acc);
    }
    return total;
}

} // namespace

double array_factor(const std::vector<std::vector<Cplx>>& port_signals, double theta_deg) {
    return array_factor_row(port_signals, phase_row(theta_deg, port_signals.size()));
}

BeamDetection detect_beam_direction(const std::vector<std::vector<Cplx>>& port_signals) {
    BeamDetection result;
    if (port_signals.empty()) return result;
    for (const auto& s : port_signals) {
        if (s.size() != port_signals.front().size()) {
            throw CuplaneError(CuplaneErrc::invalid_config, "port streams differ in length");
        }
    }
    // Visit 0, +1, -1, +2, -2, ... so a strict ">" keeps the smaller |theta|.
    double best = -1.0;
    int best_theta = 0;
    double sum = 0.0;
    int points = 0;
    for (int mag = 0; mag <= 90; ++mag) {
        for (int theta : {mag, -mag}) {
            if (mag == 0 && theta < 0) continue;
            const double af = array_factor(port_signals, theta);
            sum += af;
            ++points;
            if (af > best * (1.0 + 1e-12)) {
                best = af;
                best_theta = theta;
            }
        }
    }
    const double mean = sum / points;
    if (mean <= 0.0) return result;
    result.peak_to_average = best / mean;
    if (result.peak_to_average >= kDominanceRatio) result.azimuth_deg = best_theta;
    return result;
}

} // namespace ofh::cuplane
