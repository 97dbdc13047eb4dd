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

#include "ofh/ru/emulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ofh/codec/error.hpp"

namespace ofh::ru {

namespace {

using codec::CaptureDirection;
using codec::DataDirection;

constexpr const char* kCarrierPrefix = "carriers/";
constexpr const char* kWindowPrefix = "fronthaul/delay-window/";

std::int16_t saturate(double v) {
    return static_cast<std::int16_t>(std::clamp(std::lround(v), -32768L, 32767L));
}

// "carriers/<id>/<leaf>" -> {id, leaf}
std::optional<std::pair<std::string, std::string>> carrier_leaf(const std::string& path) {
    if (!path.starts_with(kCarrierPrefix)) return std::nullopt;
    const auto rest = path.substr(std::string_view(kCarrierPrefix).size());
    const auto slash = rest.find('/');
    if (slash == std::string::npos) return std::nullopt;
    return std::make_pair(rest.substr(0, slash), rest.substr(slash + 1));
}

} // namespace

std::string_view to_string(RuPhase phase) noexcept {
    switch (phase) {
    case RuPhase::boot: return "BOOT";
    case RuPhase::dhcp: return "DHCP";
    case RuPhase::call_home: return "CALL_HOME";
    case RuPhase::mplane_up: return "MPLANE_UP";
    case RuPhase::syncing: return "SYNCING";
    case RuPhase::configured: return "CONFIGURED";
    case RuPhase::carriers_active: return "CARRIERS_ACTIVE";
    }
    return "UNKNOWN";
}

void EventLog::add(sim::SimTime at, CaptureDirection direction, std::string category, std::string text) {
    events_.push_back(RuEvent{at, direction, std::move(category), std::move(text)});
}

std::size_t EventLog::count(std::string_view category) const {
    return static_cast<std::size_t>(
        std::count_if(events_.begin(), events_.end(), [&](const RuEvent& e) { return e.category == category; }));
}

void EventLog::write_capture(std::ostream& out) const {
    for (const auto& e : events_) {
        const std::string payload = e.category + ": " + e.text;
        codec::write_capture_record(
            out, codec::CaptureRecord{static_cast<std::uint64_t>(e.at), e.direction,
                                      std::vector<std::uint8_t>(payload.begin(), payload.end())});
    }
}

mplane::Datastore make_ru_datastore(const RuConfig& config) {
    using mplane::LeafRule;
    const auto& c = config.carrier;
    mplane::Datastore ds;
    ds.set("device/name", config.credentials.identity);
    ds.set("device/vendor", "ofh-reference");
    ds.set("device/split", "7-2x category B");
    ds.set("device/ports", std::to_string(c.ru_ports) + "T" + std::to_string(c.ru_ports) + "R");
    ds.set("device/ip-version", "IPv6");
    ds.set("interfaces/eth0/mac", config.mac);
    ds.set("interfaces/eth0/ipv6-address", "");
    ds.set("sync/state", "FREERUN");
    ds.set("sync/profile", "G.8275.1");
    ds.set("sync/domain", std::to_string(config.ptp.profile.domain_number));
    ds.set("sync/clock-class", "248");
    for (const char* id : {"tx0", "rx0"}) {
        const std::string base = std::string(kCarrierPrefix) + id + "/";
        ds.set(base + "active", "false");
        ds.set(base + "band", c.band);
        ds.set(base + "bandwidth-mhz", std::to_string(c.bandwidth_mhz));
        ds.set(base + "scs-khz", std::to_string(c.scs_khz));
        ds.set(base + "n-prb", std::to_string(c.n_prb));
        ds.set(base + "tdd-pattern", c.tdd_pattern);
        ds.set(base + "eaxc-id", "0");
    }
    ds.set("carriers/tx0/tx-power-dbm", "20");
    ds.set("fronthaul/compression/method", "block-floating-point");
    ds.set("fronthaul/compression/iq-bitwidth", std::to_string(c.iq_bitwidth));
    ds.set("fronthaul/compression/static", "true");
    const auto& w = config.windows;
    ds.set("fronthaul/delay-window/t2a-min-up-ns", std::to_string(w.t2a_min_up_ns));
    ds.set("fronthaul/delay-window/t2a-max-up-ns", std::to_string(w.t2a_max_up_ns));
    ds.set("fronthaul/delay-window/t2a-min-cp-ns", std::to_string(w.t2a_min_cp_ns));
    ds.set("fronthaul/delay-window/t2a-max-cp-ns", std::to_string(w.t2a_max_cp_ns));
    for (auto name : kCounterNames) ds.set("fronthaul/counters/" + std::string(name), "0");
    ds.set("beamforming/array", "ULA-" + std::to_string(config.beams.ports()) + "-half-wavelength");
    ds.set("beamforming/beam-count", std::to_string(config.beams.size()));
    ds.set("beamforming/synthetic", config.beams.is_synthetic() ? "true" : "false");
    ds.set("users/operator/privileged", "true");

    ds.declare_writable("carriers/*/active", LeafRule::boolean());
    ds.declare_writable("carriers/*/tx-power-dbm", LeafRule::integer(0, 46));
    ds.declare_writable("fronthaul/delay-window/*", LeafRule::integer(0, 10'000'000));
    ds.declare_writable("device/name", LeafRule::text());
    return ds;
}

RuEmulator::RuEmulator(sim::Scheduler& scheduler, RuConfig config, cuplane::VirtualRf& rf)
    : scheduler_(scheduler), config_(std::move(config)), rf_(rf), datastore_(make_ru_datastore(config_)) {
    config_.carrier.validate();
    config_.windows.validate();
    server_ = std::make_unique<mplane::MplaneServer>(scheduler_, datastore_, config_.credentials,
                                                     config_.ter_trust_anchor, make_hooks());
    ptp_ = std::make_unique<splane::PtpFlow>(scheduler_, config_.ptp);
    ptp_->on_state_change = [this](splane::SyncState s) { on_sync_change(s); };
    carriers_ = {CarrierState{"tx0", DataDirection::downlink, false},
                 CarrierState{"rx0", DataDirection::uplink, false}};
    for (auto name : kCounterNames) counters_.emplace(std::string(name), 0);
}

RuEmulator::~RuEmulator() { epoch_.reset(); }

void RuEmulator::attach(mplane::Dhcpv6Server* dhcp, mplane::CallHomeNetwork* network) {
    dhcp_ = dhcp;
    network_ = network;
}

void RuEmulator::record(CaptureDirection direction, std::string category, std::string text) {
    log_.add(scheduler_.now(), direction, std::move(category), std::move(text));
}

void RuEmulator::enter(RuPhase phase, std::string reason, bool regression) {
    phase_ = phase;
    record(CaptureDirection::internal, "phase",
           std::string(to_string(phase)) + (regression ? " (fallback: " : " (") + reason + ")");
    history_.push_back(PhaseChange{scheduler_.now(), phase, boot_, regression, std::move(reason)});
}

void RuEmulator::schedule(sim::SimTime at, std::function<void()> action) {
    std::weak_ptr<std::uint32_t> token = epoch_;
    const std::uint32_t epoch = *epoch_;
    scheduler_.schedule_at(at, [token, epoch, action = std::move(action)] {
        auto live = token.lock();
        if (live && *live == epoch) action();
    });
}

void RuEmulator::boot() {
    ++boot_;
    enter(RuPhase::boot, "power on");
    server_->boot_active_slot();
    schedule(scheduler_.now() + config_.boot_delay, [this] { start_dhcp(); });
}

void RuEmulator::start_dhcp() {
    if (phase_ != RuPhase::dhcp) enter(RuPhase::dhcp, "interface up");
    record(CaptureDirection::ru_to_ter, "dhcp", "solicit");
    if (dhcp_ == nullptr) {
        record(CaptureDirection::internal, "dhcp", "no answer, retrying");
        schedule(scheduler_.now() + config_.retry_interval, [this] { start_dhcp(); });
        return;
    }
    try {
        lease_ = mplane::dhcpv6_assign(*dhcp_, config_.duid);
    } catch (const mplane::Dhcpv6Error& e) {
        record(CaptureDirection::internal, "dhcp", std::string("failed: ") + e.what());
        schedule(scheduler_.now() + config_.retry_interval, [this] { start_dhcp(); });
        return;
    }
    record(CaptureDirection::ru_to_ter, "dhcp", "request " + lease_->address);
    datastore_.set("interfaces/eth0/ipv6-address", lease_->address);
    server_->on_address_assigned(lease_->address);
    enter(RuPhase::call_home, "lease " + lease_->address);
    schedule(scheduler_.now() + config_.call_home_delay, [this] { attempt_call_home(); });
}

void RuEmulator::attempt_call_home() {
    if (phase_ != RuPhase::call_home || !lease_) return;
    ++call_home_attempts_;
    const auto& client = lease_->call_home_client;
    record(CaptureDirection::ru_to_ter, "call-home",
           "attempt " + std::to_string(call_home_attempts_) + " to [" + client.address + "]:" +
               std::to_string(client.port));
    mplane::Credentials presented = config_.credentials;
    if (config_.faults.drop_callhome_auth) presented.fingerprint += ":altered";
    mplane::CallHomeOutcome outcome;
    if (network_ == nullptr) {
        outcome = {mplane::CallHomeOutcome::Kind::unreachable, "no route to the Call Home client"};
    } else {
        outcome = server_->call_home(*network_, client, presented);
    }
    if (outcome.kind == mplane::CallHomeOutcome::Kind::established) {
        on_mplane_up();
        return;
    }
    ++call_home_failures_;
    record(CaptureDirection::internal, "call-home", "failed: " + outcome.detail);
    schedule(scheduler_.now() + config_.retry_interval, [this] { attempt_call_home(); });
}

void RuEmulator::on_mplane_up() {
    enter(RuPhase::mplane_up, "session " + std::to_string(server_->session().session_id));
    if (config_.faults.raise_alarm && !planned_alarm_raised_) {
        schedule(scheduler_.now() + config_.planned_alarm_delay, [this] { raise_planned_alarm(); });
    }
    start_sync();
}

void RuEmulator::raise_planned_alarm() {
    if (!config_.faults.raise_alarm || planned_alarm_raised_) return;
    planned_alarm_raised_ = true;
    record(CaptureDirection::internal, "fault", "raising planned alarm");
    server_->raise_alarm(*config_.faults.raise_alarm);
}

void RuEmulator::start_sync() {
    if (sync_ == splane::SyncState::locked) {
        enter(RuPhase::syncing, "clock already locked");
        enter(RuPhase::configured, "sync locked");
        return;
    }
    enter(RuPhase::syncing, "ptp slave port enabled");
    if (config_.faults.disable_sync) {
        record(CaptureDirection::internal, "sync", "ptp disabled by fault plan");
    } else {
        ptp_->start();
    }
    schedule(scheduler_.now() + config_.sync_alarm_delay, [this] { check_sync_alarm(); });
}

void RuEmulator::check_sync_alarm() {
    if (sync_ == splane::SyncState::locked || sync_alarm_active_) return;
    sync_alarm_active_ = true;
    mplane::Alarm alarm;
    alarm.fault_id = kSyncAlarmId;
    alarm.fault_source = "sync";
    alarm.severity = mplane::AlarmSeverity::major;
    alarm.text = "synchronization not achieved";
    server_->raise_alarm(alarm);
}

void RuEmulator::on_sync_change(splane::SyncState state) {
    const auto before = sync_;
    if (before == splane::SyncState::locked && state != splane::SyncState::locked) {
        // Carriers go down before the new state is recorded, so no instant
        // ever shows an active carrier on an unlocked clock.
        deactivate_all("sync lost");
    }
    sync_ = state;
    const std::string name(splane::to_string(state));
    datastore_.set("sync/state", name);
    datastore_.set("sync/clock-class", state == splane::SyncState::locked ? "6" : "248");
    record(CaptureDirection::internal, "sync", name);
    server_->publish("sync", {{"sync-state", name}});
    if (state == splane::SyncState::locked) {
        if (sync_alarm_active_) {
            sync_alarm_active_ = false;
            server_->clear_alarm(kSyncAlarmId);
        }
        if (phase_ == RuPhase::syncing) enter(RuPhase::configured, "sync locked");
        return;
    }
    if (before == splane::SyncState::locked) {
        if (phase_ == RuPhase::configured || phase_ == RuPhase::carriers_active) {
            enter(RuPhase::syncing, "sync lost", true);
        }
        check_sync_alarm();
    }
}

bool RuEmulator::carrier_active(DataDirection direction) const {
    return std::any_of(carriers_.begin(), carriers_.end(),
                       [&](const CarrierState& c) { return c.direction == direction && c.active; });
}

bool RuEmulator::any_carrier_active() const {
    return std::any_of(carriers_.begin(), carriers_.end(), [](const CarrierState& c) { return c.active; });
}

void RuEmulator::set_carrier(const std::string& id, bool active, const std::string& reason) {
    auto it = std::find_if(carriers_.begin(), carriers_.end(), [&](const CarrierState& c) { return c.id == id; });
    if (it == carriers_.end() || it->active == active) return;
    it->active = active;
    datastore_.set(std::string(kCarrierPrefix) + id + "/active", active ? "true" : "false");
    record(CaptureDirection::internal, "carrier", id + (active ? " active (" : " inactive (") + reason + ")");
}

void RuEmulator::deactivate_all(const std::string& reason) {
    for (const auto& c : std::vector<CarrierState>(carriers_)) set_carrier(c.id, false, reason);
    refresh_carrier_phase(reason);
}

void RuEmulator::refresh_carrier_phase(const std::string& reason) {
    if (any_carrier_active()) {
        if (phase_ == RuPhase::configured) enter(RuPhase::carriers_active, reason);
    } else if (phase_ == RuPhase::carriers_active) {
        enter(RuPhase::configured, reason, true);
    }
}

mplane::ServerHooks RuEmulator::make_hooks() {
    mplane::ServerHooks h;
    h.guard_change = [this](const mplane::LeafChange& c) { return guard(c); };
    h.on_config_applied = [this](const std::vector<mplane::LeafChange>& changes) { on_config_applied(changes); };
    h.on_supervision_expired = [this] { on_supervision_expired(); };
    h.on_reset = [this] {
        schedule(scheduler_.now() + config_.reset_delay, [this] { reboot("supplemental reset"); });
    };
    h.withhold_supervision_ack = [this] { return config_.faults.withhold_supervision_ack; };
    h.corrupt_software_image = [this] { return config_.faults.corrupt_software_checksum; };
    h.on_event = [this](const std::string& text) { record(CaptureDirection::internal, "mplane", text); };
    return h;
}

std::optional<mplane::RpcError> RuEmulator::guard(const mplane::LeafChange& change) const {
    using mplane::RpcError;
    namespace tag = mplane::error_tag;
    if (config_.faults.reject_config_node && change.path == *config_.faults.reject_config_node) {
        return RpcError{tag::operation_failed, "error", "node rejected by device policy", change.path};
    }
    if (auto leaf = carrier_leaf(change.path); leaf && leaf->second == "active" && change.value == "true") {
        if (sync_ != splane::SyncState::locked) {
            return RpcError{tag::operation_failed, "error", "not synchronized", change.path};
        }
        if (phase_ < RuPhase::configured) {
            return RpcError{tag::operation_failed, "error", "carrier configuration not ready", change.path};
        }
    }
    return std::nullopt;
}

void RuEmulator::on_config_applied(const std::vector<mplane::LeafChange>& changes) {
    bool windows_changed = false;
    for (const auto& c : changes) {
        if (auto leaf = carrier_leaf(c.path); leaf && leaf->second == "active") {
            auto it = std::find_if(carriers_.begin(), carriers_.end(),
                                   [&](const CarrierState& s) { return s.id == leaf->first; });
            if (it != carriers_.end() && it->active != (c.value == "true")) {
                it->active = c.value == "true";
                record(CaptureDirection::internal, "carrier",
                       it->id + (it->active ? " active (operator)" : " inactive (operator)"));
            }
        } else if (c.path.starts_with(kWindowPrefix)) {
            windows_changed = true;
        }
    }
    if (windows_changed) {
        auto read = [&](const char* name) {
            return std::stoll(datastore_.leaf(std::string(kWindowPrefix) + name).value_or("0"));
        };
        cuplane::DelayWindow w{read("t2a-min-up-ns"), read("t2a-max-up-ns"), read("t2a-min-cp-ns"),
                               read("t2a-max-cp-ns")};
        try {
            w.validate();
            config_.windows = w;
            record(CaptureDirection::internal, "fronthaul", "delay windows updated");
        } catch (const cuplane::CuplaneError& e) {
            record(CaptureDirection::internal, "fronthaul", std::string("delay windows ignored: ") + e.what());
        }
    }
    refresh_carrier_phase("operator");
}

void RuEmulator::on_supervision_expired() {
    deactivate_all("supervision expired");
    record(CaptureDirection::internal, "mplane", "session lost, Call Home again after backoff");
    // The server raises the supervision alarm and closes the session after
    // this hook returns; the device then falls back to Call Home.
    schedule(scheduler_.now(), [this] {
        if (phase_ >= RuPhase::mplane_up) enter(RuPhase::call_home, "supervision expired", true);
        schedule(scheduler_.now() + config_.retry_interval, [this] { attempt_call_home(); });
    });
}

void RuEmulator::reset(const std::string& reason) { reboot(reason); }

void RuEmulator::reboot(const std::string& reason) {
    record(CaptureDirection::internal, "reset", reason);
    ++*epoch_;
    deactivate_all("reset");
    if (mplane::is_operational(server_->session().state())) server_->close_session("reset");
    ptp_ = std::make_unique<splane::PtpFlow>(scheduler_, config_.ptp);
    ptp_->on_state_change = [this](splane::SyncState s) { on_sync_change(s); };
    sync_ = splane::SyncState::freerun;
    datastore_.set("sync/state", "FREERUN");
    datastore_.set("sync/clock-class", "248");
    if (sync_alarm_active_) {
        sync_alarm_active_ = false;
        server_->clear_alarm(kSyncAlarmId);
    }
    dl_sections_.clear();
    consumed_prach_.clear();
    for (auto& [name, value] : counters_) {
        value = 0;
        datastore_.set("fronthaul/counters/" + name, "0");
    }
    lease_.reset();
    planned_alarm_raised_ = false;
    boot();
}

void RuEmulator::inject_fault(std::string_view name, const mplane::Json& argument) {
    set_toggle(config_.faults, name, argument);
    record(CaptureDirection::internal, "fault", "enabled " + std::string(name));
    if (name == "disable_sync" && ptp_->running()) ptp_->halt();
    if (name == "raise_alarm" && phase_ >= RuPhase::mplane_up) {
        planned_alarm_raised_ = false;
        raise_planned_alarm();
    }
}

void RuEmulator::clear_fault(std::string_view name) {
    clear_toggle(config_.faults, name);
    record(CaptureDirection::internal, "fault", "cleared " + std::string(name));
}

std::uint64_t RuEmulator::counter(std::string_view name) const {
    auto it = counters_.find(name);
    return it == counters_.end() ? 0 : it->second;
}

void RuEmulator::count(std::string_view name) {
    auto it = counters_.find(name);
    const auto value = ++it->second;
    datastore_.set("fronthaul/counters/" + it->first, std::to_string(value));
}

void RuEmulator::receive_fronthaul(std::span<const std::uint8_t> frame) {
    const sim::SimTime now = scheduler_.now();
    codec::EcpriFrame ecpri;
    try {
        ecpri = codec::decode_ecpri(frame, config_.carrier.eaxc_layout);
    } catch (const codec::CodecError&) {
        count("malformed");
        return;
    }
    if (phase_ != RuPhase::carriers_active) {
        count("not-ready");
        return;
    }
    if (ecpri.header.message_type == codec::EcpriMessageType::rt_control) {
        handle_cplane(frame, now);
    } else {
        handle_uplane(frame, now);
    }
}

void RuEmulator::handle_cplane(std::span<const std::uint8_t> frame, sim::SimTime now) {
    const auto& carrier = config_.carrier;
    codec::CplaneMessage msg;
    try {
        msg = codec::decode_cplane(frame, carrier.codec_config());
    } catch (const codec::CodecError&) {
        count("malformed");
        return;
    }
    const bool dl = msg.direction == DataDirection::downlink;
    if (!carrier_active(msg.direction)) {
        count("not-ready");
        return;
    }
    const auto slot = cuplane::resolve_slot(carrier, {msg.frame_id, msg.subframe_id, msg.slot_id}, now);
    const auto air = cuplane::symbol_time(carrier, slot, msg.start_symbol_id);
    const std::string prefix = dl ? "dl-cplane-" : "ul-cplane-";
    switch (cuplane::classify(air - now, config_.windows.t2a_min_cp_ns, config_.windows.t2a_max_cp_ns)) {
    case cuplane::Arrival::early: count(prefix + "early"); return;
    case cuplane::Arrival::late: count(prefix + "late"); return;
    case cuplane::Arrival::on_time: break;
    }
    if (!carrier.carries(slot, msg.direction)) {
        count("tdd-violation");
        return;
    }
    count(prefix + "received");
    const auto eaxc = msg.header.eaxc;
    const auto packed = codec::pack_eaxc(eaxc);

    for (const auto& section : msg.sections) {
        if (dl) {
            DlSection s;
            s.start_symbol = msg.start_symbol_id;
            s.num_symbols = section.num_symbol;
            s.start_prb = section.start_prb;
            s.rb = section.rb;
            s.port = eaxc.ru_port_id;
            if (section.extension) {
                s.weights = cuplane::normalize_weights(cuplane::dequantize_weights(section.beam_weights));
            } else if (section.beam_id != 0) {
                const auto* entry = config_.beams.find(section.beam_id);
                if (entry == nullptr) {
                    count("unknown-beam");
                    continue;
                }
                s.weights = entry->weights;
            } else if (s.port >= rf_.ports()) {
                count("unknown-beam");
                continue;
            }
            dl_sections_[SectionKey{slot, packed, section.section_id}] = std::move(s);
            continue;
        }
        if (msg.section_type == codec::SectionType::st3) {
            const auto& st3 = *msg.st3;
            const auto start = cuplane::prach_occasion_start(carrier, slot, msg.start_symbol_id, st3.time_offset);
            const auto end = start + (st3.cp_length + cuplane::kPrachLength) * cuplane::kPrachSamplePeriodNs;
            schedule(end, [this, slot, eaxc, section, start, cp = st3.cp_length] {
                capture_prach(slot, eaxc, section, start, cp);
            });
            continue;
        }
        for (int sym = msg.start_symbol_id; sym < msg.start_symbol_id + section.num_symbol; ++sym) {
            if (sym >= cuplane::kSymbolsPerSlot) break;
            schedule(cuplane::symbol_time(carrier, slot, sym + 1), [this, slot, sym, eaxc, section] {
                capture_ul_symbol(slot, sym, eaxc, section);
            });
        }
    }
    // Forget DL sections whose slot is long gone.
    const auto horizon = cuplane::slot_at(carrier, now) - 4;
    for (auto it = dl_sections_.begin(); it != dl_sections_.end() && std::get<0>(it->first) < horizon;) {
        it = dl_sections_.erase(it);
    }
}

void RuEmulator::handle_uplane(std::span<const std::uint8_t> frame, sim::SimTime now) {
    const auto& carrier = config_.carrier;
    codec::UplaneMessage msg;
    try {
        msg = codec::decode_uplane(frame, carrier.codec_config());
    } catch (const codec::CodecError&) {
        count("malformed");
        return;
    }
    if (msg.direction != DataDirection::downlink) {
        count("malformed");
        return;
    }
    if (!carrier_active(DataDirection::downlink)) {
        count("not-ready");
        return;
    }
    const auto slot = cuplane::resolve_slot(carrier, {msg.frame_id, msg.subframe_id, msg.slot_id}, now);
    const int sym = msg.symbol_id;
    const auto air = cuplane::symbol_time(carrier, slot, sym);
    switch (cuplane::classify(air - now, config_.windows.t2a_min_up_ns, config_.windows.t2a_max_up_ns)) {
    case cuplane::Arrival::early: count("dl-uplane-early"); return;
    case cuplane::Arrival::late: count("dl-uplane-late"); return;
    case cuplane::Arrival::on_time: break;
    }
    if (!carrier.carries(slot, DataDirection::downlink)) {
        count("tdd-violation");
        return;
    }
    count("dl-uplane-received");
    const auto packed = codec::pack_eaxc(msg.header.eaxc);

    struct Emission {
        int port;
        int start_re;
        std::vector<cuplane::Cplx> samples;
    };
    std::vector<Emission> emissions;
    for (const auto& section : msg.sections) {
        auto it = dl_sections_.find(SectionKey{slot, packed, section.section_id});
        if (it == dl_sections_.end() || sym < it->second.start_symbol ||
            sym >= it->second.start_symbol + it->second.num_symbols || it->second.start_prb != section.start_prb ||
            it->second.rb != section.rb) {
            count("unscheduled");
            continue;
        }
        const auto& sched = it->second;
        const int stride = section.rb ? 2 : 1;
        for (std::size_t k = 0; k < section.prbs.size(); ++k) {
            const int prb = section.start_prb + static_cast<int>(k) * stride;
            if (prb >= carrier.n_prb) break;
            const auto values = codec::bfp_decompress(section.prbs[k]);
            std::vector<cuplane::Cplx> x;
            x.reserve(values.size());
            for (const auto& v : values) x.emplace_back(v.i, v.q);
            const int start_re = prb * static_cast<int>(codec::kSubcarriersPerPrb);
            if (sched.weights.empty()) {
                emissions.push_back({sched.port, start_re, std::move(x)});
                continue;
            }
            for (int p = 0; p < static_cast<int>(sched.weights.size()) && p < rf_.ports(); ++p) {
                std::vector<cuplane::Cplx> y(x.size());
                for (std::size_t n = 0; n < x.size(); ++n) y[n] = sched.weights[static_cast<std::size_t>(p)] * x[n];
                emissions.push_back({p, start_re, std::move(y)});
            }
        }
    }
    if (emissions.empty()) return;
    // Radiated at the symbol's air time.
    auto shared = std::make_shared<std::vector<Emission>>(std::move(emissions));
    schedule(air, [this, shared, slot, sym] {
        for (const auto& e : *shared) rf_.emit(cuplane::VirtualRf::Key{slot, sym, e.port}, e.start_re, e.samples);
    });
}

void RuEmulator::send_uplink(const codec::UplaneMessage& message) {
    const auto frame = codec::encode_uplane(message, config_.carrier.codec_config());
    count("ul-uplane-sent");
    if (uplink_) uplink_(scheduler_.now(), frame);
}

void RuEmulator::capture_ul_symbol(std::int64_t slot, int symbol, codec::EaxcId eaxc, codec::CplaneSection section) {
    const auto& carrier = config_.carrier;
    if (!carrier_active(DataDirection::uplink)) return;
    const auto* injected = rf_.injected(slot, symbol);
    const auto addr = cuplane::slot_address(carrier, slot);
    codec::UplaneMessage msg;
    msg.header.message_type = codec::EcpriMessageType::iq_data;
    msg.header.eaxc = eaxc;
    msg.header.sequence_id = ul_seq_++;
    msg.direction = DataDirection::uplink;
    msg.frame_id = addr.frame_id;
    msg.subframe_id = addr.subframe_id;
    msg.slot_id = addr.slot_id;
    msg.symbol_id = static_cast<std::uint8_t>(symbol);
    codec::UplaneSection us;
    us.section_id = section.section_id;
    us.rb = section.rb;
    us.start_prb = section.start_prb;
    us.num_prb = section.num_prb;
    const auto n = codec::effective_num_prb(section.start_prb, section.num_prb, section.rb,
                                            static_cast<std::uint16_t>(carrier.n_prb));
    const int stride = section.rb ? 2 : 1;
    for (int k = 0; k < n; ++k) {
        const int prb = section.start_prb + k * stride;
        codec::PrbSamples samples{};
        if (injected != nullptr) {
            for (std::size_t sc = 0; sc < codec::kSubcarriersPerPrb; ++sc) {
                samples[sc] = (*injected)[static_cast<std::size_t>(prb) * codec::kSubcarriersPerPrb + sc];
            }
        }
        us.prbs.push_back(codec::bfp_compress(samples));
    }
    msg.sections.push_back(std::move(us));
    send_uplink(msg);
}

void RuEmulator::capture_prach(std::int64_t slot, codec::EaxcId eaxc, codec::CplaneSection section,
                               sim::SimTime start, std::uint16_t cp_length) {
    const auto& carrier = config_.carrier;
    if (!carrier_active(DataDirection::uplink)) return;
    const int length = cuplane::kPrachLength;
    std::vector<cuplane::Cplx> buffer(static_cast<std::size_t>(length));
    const auto& injections = rf_.prach_injections();
    const sim::SimTime horizon = carrier.slot_duration_ns();
    for (std::size_t i = 0; i < injections.size(); ++i) {
        const auto& inj = injections[i];
        if (consumed_prach_.count(i) != 0 || std::llabs(inj.at - start) > horizon) continue;
        consumed_prach_.insert(i);
        const sim::SimTime delay = inj.at - start;
        if (delay < 0) {
            count("prach-early");
            continue;
        }
        if (delay > cp_length * cuplane::kPrachSamplePeriodNs) {
            count("prach-late");
            continue;
        }
        // Within the cyclic prefix a delay is a cyclic shift of the preamble.
        const auto shift = static_cast<int>(std::llround(static_cast<double>(delay) / cuplane::kPrachSamplePeriodNs));
        const int n_samples = std::min(length, static_cast<int>(inj.samples.size()));
        for (int n = 0; n < length; ++n) {
            const int src = ((n - shift) % length + length) % length;
            if (src < n_samples) buffer[static_cast<std::size_t>(n)] += inj.samples[static_cast<std::size_t>(src)];
        }
    }

    const auto addr = cuplane::slot_address(carrier, slot);
    codec::UplaneMessage msg;
    msg.header.message_type = codec::EcpriMessageType::iq_data;
    msg.header.eaxc = eaxc;
    msg.header.sequence_id = ul_seq_++;
    msg.direction = DataDirection::uplink;
    msg.frame_id = addr.frame_id;
    msg.subframe_id = addr.subframe_id;
    msg.slot_id = addr.slot_id;
    codec::UplaneSection us;
    us.section_id = section.section_id;
    us.start_prb = section.start_prb;
    us.num_prb = section.num_prb;
    const auto n = codec::effective_num_prb(section.start_prb, section.num_prb, false,
                                            static_cast<std::uint16_t>(carrier.n_prb));
    for (int k = 0; k < n; ++k) {
        codec::PrbSamples samples{};
        for (std::size_t sc = 0; sc < codec::kSubcarriersPerPrb; ++sc) {
            const auto idx = static_cast<std::size_t>(k) * codec::kSubcarriersPerPrb + sc;
            if (idx < buffer.size()) samples[sc] = {saturate(buffer[idx].real()), saturate(buffer[idx].imag())};
        }
        us.prbs.push_back(codec::bfp_compress(samples));
    }
    msg.sections.push_back(std::move(us));
    // The preamble is reported on the occasion's first symbol.
    msg.symbol_id = static_cast<std::uint8_t>(std::clamp<sim::SimTime>(
        (start - cuplane::slot_start(carrier, slot)) * cuplane::kSymbolsPerSlot / carrier.slot_duration_ns(), 0,
        cuplane::kSymbolsPerSlot - 1));
    send_uplink(msg);
}

} // namespace ofh::ru
