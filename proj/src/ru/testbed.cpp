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

#include "ofh/ru/testbed.hpp"

namespace ofh::ru {

Testbed::Testbed(TestbedConfig config)
    : config_(std::move(config)),
      client_(config_.ter, config_.ru.credentials.fingerprint),
      rf_(config_.ru.carrier.n_prb, config_.ru.carrier.ru_ports),
      uplink_(config_.ru.carrier),
      builder_(config_.ru.carrier, config_.ru.windows) {
    if (config_.dhcp_available) {
        dhcp_ = std::make_unique<mplane::Dhcpv6Server>(config_.dhcp_pool, 64, config_.ter_endpoint);
    }
    listener_ = std::make_unique<mplane::CallHomeListener>(client_, config_.transport);
    network_.listen(config_.ter_endpoint, *listener_);
    ru_ = std::make_unique<RuEmulator>(scheduler_, config_.ru, rf_);
    ru_->attach(dhcp_.get(), &network_);
    ru_->set_uplink_sink([this](sim::SimTime at, std::span<const std::uint8_t> frame) {
        if (config_.capture_fronthaul) {
            capture_.push_back({static_cast<std::uint64_t>(at), codec::CaptureDirection::ru_to_ter,
                                std::vector<std::uint8_t>(frame.begin(), frame.end())});
        }
        uplink_.on_frame(at, frame);
    });
}

Testbed::~Testbed() {
    // The O-RU goes first so its session closes while the client still exists.
    ru_.reset();
    network_.unlisten(config_.ter_endpoint);
}

void Testbed::power_on() { ru_->boot(); }

bool Testbed::await_mplane(sim::SimTime budget) {
    return scheduler_.run_until_condition([this] { return client_.established(); }, scheduler_.now() + budget);
}

bool Testbed::await_phase(RuPhase phase, sim::SimTime budget) {
    return scheduler_.run_until_condition([this, phase] { return ru_->phase() == phase; },
                                          scheduler_.now() + budget);
}

std::optional<std::string> Testbed::probe_sync() {
    if (!client_.established()) return std::nullopt;
    const auto reply = client_.get(std::string("sync/state"));
    if (reply.kind != mplane::RpcReply::Kind::data) return std::nullopt;
    const mplane::Json::json_pointer at("/sync/state");
    if (!reply.data.contains(at) || !reply.data.at(at).is_string()) return std::nullopt;
    return reply.data.at(at).get<std::string>();
}

splane::SyncStateProbe Testbed::sync_probe() {
    return [this] { return probe_sync(); };
}

bool Testbed::await_lock(sim::SimTime budget, sim::SimTime poll) {
    const sim::SimTime deadline = scheduler_.now() + budget;
    while (true) {
        if (probe_sync() == "LOCKED") return true;
        if (scheduler_.now() >= deadline) return false;
        scheduler_.run_until(std::min(deadline, scheduler_.now() + poll));
    }
}

mplane::RpcReply Testbed::set_carriers_active(bool active) {
    const std::string value = active ? "true" : "false";
    auto reply = client_.edit_config({{"carriers/tx0/active", value}, {"carriers/rx0/active", value}});
    if (!reply.is_error()) builder_.set_carrier_active(active);
    return reply;
}

std::optional<std::string> Testbed::bring_up(sim::SimTime budget) {
    const sim::SimTime deadline = scheduler_.now() + budget;
    power_on();
    if (!await_mplane(deadline - scheduler_.now())) return "M-Plane session not established";
    if (!await_lock(deadline - scheduler_.now())) return "O-RU did not report LOCKED";
    const auto reply = set_carriers_active(true);
    if (reply.is_error()) return "carrier activation refused: " + reply.error.message;
    if (ru_->phase() != RuPhase::carriers_active) return "O-RU not in CARRIERS_ACTIVE";
    return std::nullopt;
}

void Testbed::deliver(const cuplane::Flow& flow) {
    cuplane::schedule_flow(scheduler_, flow, [this](const cuplane::TimedMessage& m) {
        if (config_.capture_fronthaul) {
            capture_.push_back({static_cast<std::uint64_t>(scheduler_.now()), codec::CaptureDirection::ter_to_ru,
                                m.frame});
        }
        ru_->receive_fronthaul(m.frame);
    });
}

std::optional<std::uint64_t> Testbed::read_counter(const std::string& name) {
    const auto reply = client_.get("fronthaul/counters/" + name);
    if (reply.kind != mplane::RpcReply::Kind::data) return std::nullopt;
    const mplane::Json::json_pointer at("/fronthaul/counters/" + name);
    if (!reply.data.contains(at) || !reply.data.at(at).is_string()) return std::nullopt;
    return std::stoull(reply.data.at(at).get<std::string>());
}

} // namespace ofh::ru
