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

#include "ofh/mplane/hierarchical.hpp"
#include "ofh/sim/random.hpp"
#include "support.hpp"

namespace ofh::runner::scenarios {

namespace {

using mplane::Json;
using mplane::LeafChange;
using mplane::RpcReply;
using support::Checks;
using support::Lab;

constexpr const char* kNoSession = "M-Plane session not established";

bool session_up(Lab& lab) {
    lab->power_on();
    return lab->await_mplane();
}

std::vector<mplane::Notification> stream_events(ru::Testbed& tb, const std::string& stream) {
    tb.client().sync();
    std::vector<mplane::Notification> out;
    for (const auto& n : tb.client().notifications()) {
        if (n.stream == stream) out.push_back(n);
    }
    return out;
}

Json active_alarm_list(ru::Testbed& tb) {
    const auto reply = tb.client().get(std::string("alarms/active-alarm-list"));
    const Json::json_pointer at("/alarms/active-alarm-list");
    if (reply.kind != RpcReply::Kind::data || !reply.data.contains(at)) return Json::object();
    return reply.data.at(at);
}

std::vector<std::uint8_t> software_image(std::uint64_t seed) {
    sim::Rng rng(seed, sim::Stream::software_image);
    std::vector<std::uint8_t> image(512);
    for (auto& b : image) b = static_cast<std::uint8_t>(rng.next() & 0xFF);
    return image;
}

constexpr const char* kNewBuild = "2.0.0";
constexpr const char* kSpareSlot = "swSlot2";
constexpr const char* kFactorySlot = "swSlot1";

std::optional<std::string> slot_leaf(ru::Testbed& tb, const std::string& slot, const std::string& leaf) {
    return support::read_leaf(tb, "software-inventory/" + slot + "/" + leaf);
}

/// Supervision loop run by the TER: kick every interval while the O-RU
/// acknowledges, for at most `cycles` kicks.
struct SupervisionRun {
    int acked = 0;
    int refused = 0;
    sim::SimTime last_ack = 0;
    bool lost = false;
};

SupervisionRun supervise(ru::Testbed& tb, const LabProfile& profile, int cycles) {
    SupervisionRun run;
    const auto interval = sim::seconds(profile.supervision_interval_s);
    for (int i = 0; i < cycles; ++i) {
        if (i > 0) {
            const auto next = tb.scheduler().now() + interval;
            if (tb.scheduler().run_until_condition([&] { return !tb.client().established(); }, next)) {
                run.lost = true;
                return run;
            }
        }
        const auto reply = tb.client().supervision_kick(profile.supervision_interval_s, profile.supervision_guard_s);
        if (reply.is_error()) {
            ++run.refused;
        } else {
            ++run.acked;
            run.last_ack = tb.scheduler().now();
        }
    }
    return run;
}

} // namespace

CaseOutcome transport_handshake_positive(CaseContext& ctx) {
    Lab lab(ctx);
    const bool up = session_up(lab);
    Checks c;
    c.require(up, "no M-Plane session within 30 s of power-on");
    const auto& lease = lab->ru().lease();
    c.require(lease.has_value() && lease->address.find(':') != std::string::npos, "no IPv6 address leased");
    c.require(lab->client().session().peer_identity == ctx.testbed_config().ru.credentials.identity,
              "session peer is not the O-RU identity");
    c.require(lab->client().rejected_handshakes() == 0, "TER rejected a handshake");
    if (up) {
        const auto reported = support::read_leaf(*lab, "interfaces/eth0/ipv6-address");
        c.require(lease && reported == lease->address, "O-RU does not report its leased address");
    }
    return support::judged(lab, c,
                           {{"established", up},
                            {"established_at_ns", up ? lab->scheduler().now() : 0},
                            {"call_home_attempts", lab->ru().call_home_attempts()},
                            {"address", lease ? lease->address : ""}});
}

CaseOutcome transport_handshake_negative(CaseContext& ctx) {
    Lab lab(ctx);
    lab->power_on();
    // Long enough for the first attempt and several retries.
    const bool up = lab->await_mplane(sim::seconds(20));
    Checks c;
    c.require(!up, "session established with credentials the TER must refuse");
    c.require(lab->client().rejected_handshakes() >= 1, "TER never refused a handshake");
    c.require(lab->ru().call_home_attempts() >= 2, "O-RU did not retry Call Home");
    c.require(lab->ru().phase() == ru::RuPhase::call_home, "O-RU left CALL_HOME without a session");
    return support::judged(lab, c,
                           {{"behavior", up ? "established" : "rejected"},
                            {"rejected_handshakes", lab->client().rejected_handshakes()},
                            {"call_home_attempts", lab->ru().call_home_attempts()}});
}

CaseOutcome subscription(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    Checks c;
    const auto sub = lab->client().subscribe("sync");
    c.require(!sub.is_error(), "subscribe refused: " + sub.error.message);
    const bool locked = lab->await_phase(ru::RuPhase::configured, sim::seconds(30));
    c.require(locked, "O-RU never locked");
    const auto events = stream_events(*lab, "sync");
    const bool saw_lock = std::any_of(events.begin(), events.end(), [](const mplane::Notification& n) {
        return n.event.value("sync-state", "") == "LOCKED";
    });
    c.require(!events.empty(), "no notification on the subscribed stream");
    c.require(saw_lock, "no LOCKED notification");
    // Nothing arrives for streams the TER never subscribed to.
    const auto alarms = stream_events(*lab, "alarms");
    c.require(alarms.empty(), "notification on an unsubscribed stream");
    return support::judged(lab, c,
                           {{"notifications", events.size()},
                            {"subscription_id", sub.is_error() ? Json(nullptr) : sub.data.value("subscription-id", Json())}});
}

CaseOutcome supervision_positive(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto run = supervise(*lab, ctx.profile, 5);
    // One more interval without a kick still falls inside the guard time.
    lab->scheduler().run_for(sim::seconds(ctx.profile.supervision_interval_s));
    Checks c;
    c.require(run.acked == 5 && run.refused == 0, "a supervision kick was not acknowledged");
    c.require(!run.lost && lab->client().established(), "session dropped while supervised");
    c.require(lab->client().session().state() == mplane::SessionState::supervised ||
                  lab->ru().server().session().state() == mplane::SessionState::supervised,
              "session never became supervised");
    const auto alarms = active_alarm_list(*lab);
    c.require(!alarms.contains("31"), "supervision alarm raised");
    return support::judged(lab, c, {{"kicks_acked", run.acked}, {"last_ack_ns", run.last_ack}});
}

CaseOutcome supervision_negative(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    if (!lab->await_lock()) return support::blocked(lab, "O-RU did not report LOCKED");
    if (lab->set_carriers_active(true).is_error()) return support::blocked(lab, "carrier activation refused");

    const auto run = supervise(*lab, ctx.profile, 4);
    const auto window = sim::seconds(ctx.profile.supervision_interval_s + ctx.profile.supervision_guard_s);
    const auto deadline = run.last_ack + window;
    // The TER never stops kicking on its own; only a refused kick is worth
    // waiting out.
    bool lost = run.lost;
    if (!lost && run.refused > 0) {
        lab->scheduler().run_until_condition([&] { return !lab->client().established(); }, deadline + sim::seconds(1));
        // Over TCP the close document may still be in flight.
        lab->client().sync();
        lost = !lab->client().established();
    }
    Checks c;
    c.require(run.refused >= 1, "every supervision kick was acknowledged");
    c.require(lost, "session survived without acknowledged kicks");

    Json metrics{{"behavior", lost ? "expired" : "supervised"},
                 {"kicks_acked", run.acked},
                 {"kicks_refused", run.refused}};
    if (lost) {
        // The O-RU must Call Home again after losing the session.
        const bool back = lab->await_mplane(sim::seconds(30));
        c.require(back, "no new Call Home after supervision failure");
        if (back) {
            const auto alarms = active_alarm_list(*lab);
            c.require(alarms.contains("31"), "supervision alarm missing from the active list");
            if (alarms.contains("31")) {
                const auto at = std::stoll(alarms["31"].value("event-time", "0"));
                c.require(at == deadline, "watchdog fired at " + std::to_string(at) + " ns, expected " +
                                              std::to_string(deadline));
                metrics["expired_at_ns"] = at;
            }
            c.require(support::read_leaf(*lab, "carriers/tx0/active") == "false" &&
                          support::read_leaf(*lab, "carriers/rx0/active") == "false",
                      "carriers still active after supervision failure");
        }
    }
    metrics["deadline_ns"] = deadline;
    return support::judged(lab, c, metrics);
}

CaseOutcome retrieval_unfiltered(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto reply = lab->client().get();
    Checks c;
    c.require(reply.kind == RpcReply::Kind::data, "get returned no data");
    c.require(reply.data == lab->ru().datastore().tree(), "reply differs from the O-RU datastore");
    for (const char* top : {"device", "interfaces", "sync", "carriers", "fronthaul", "software-inventory"}) {
        c.require(reply.data.contains(top), std::string("reply lacks ") + top);
    }
    CaseOutcome out = support::judged(lab, c, {{"top_level_nodes", reply.data.size()}});
    out.evidence["get-reply.json"] = reply.data.dump(2);
    return out;
}

CaseOutcome retrieval_filtered(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto full = lab->client().get();
    const auto part = lab->client().get(std::string("carriers/tx0"));
    const auto none = lab->client().get(std::string("carriers/tx9"));
    Checks c;
    c.require(part.kind == RpcReply::Kind::data, "filtered get returned no data");
    const Json expected{{"carriers", {{"tx0", full.data["carriers"]["tx0"]}}}};
    c.require(part.data == expected, "filtered reply is not exactly the tx0 subtree");
    c.require(none.kind == RpcReply::Kind::data && none.data == Json::object(), "non-matching filter returned data");
    CaseOutcome out = support::judged(lab, c, {{"leaves", part.data["carriers"]["tx0"].size()}});
    out.evidence["filtered-reply.json"] = part.data.dump(2);
    return out;
}

CaseOutcome alarm_notification(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto sub = lab->client().subscribe("alarms");
    if (sub.is_error()) return support::blocked(lab, "alarm subscription refused");
    lab->scheduler().run_for(sim::seconds(3));
    const auto events = stream_events(*lab, "alarms");
    const auto list = active_alarm_list(*lab);
    Checks c;
    c.require(!events.empty(), "no alarm notification received");
    for (const auto& n : events) {
        const auto& e = n.event;
        const bool complete = e.contains("fault-id") && e.contains("fault-source") && e.contains("fault-severity") &&
                              e.contains("is-cleared") && e.contains("text");
        c.require(complete, "alarm notification lacks mandatory fields");
        if (complete && !e["is-cleared"].get<bool>()) {
            c.require(list.contains(std::to_string(e["fault-id"].get<std::uint32_t>())),
                      "notified alarm is not in the active list");
        }
    }
    Json ids = Json::array();
    for (const auto& n : events) ids.push_back(n.event.value("fault-id", 0u));
    return support::judged(lab, c, {{"behavior", events.empty() ? "silent" : "notified"}, {"fault_ids", ids}});
}

CaseOutcome active_alarm_list(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    lab->scheduler().run_for(sim::seconds(7));
    const auto list = active_alarm_list(*lab);
    Checks c;
    c.require(!list.empty(), "active alarm list is empty");
    std::vector<std::string> device;
    for (const auto& a : lab->ru().server().active_alarms()) device.push_back(std::to_string(a.fault_id));
    std::vector<std::string> reported;
    for (const auto& [id, entry] : list.items()) {
        reported.push_back(id);
        c.require(entry.value("is-cleared", "") == "false", "cleared alarm " + id + " listed as active");
        c.require(entry.contains("fault-source") && entry.contains("fault-severity"), "alarm " + id + " incomplete");
    }
    std::sort(device.begin(), device.end());
    c.require(reported == device, "reported list differs from the O-RU's active alarms");
    CaseOutcome out = support::judged(lab, c, {{"behavior", "alarms:" + std::to_string(list.size())},
                                               {"fault_ids", reported}});
    out.evidence["active-alarm-list.json"] = list.dump(2);
    return out;
}

CaseOutcome software_update_positive(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto image = software_image(ctx.seed);
    const auto checksum = mplane::image_checksum(image);
    const auto dl = lab->client().sw_download(kNewBuild, checksum, image);
    Checks c;
    c.require(!dl.is_error() && dl.data.value("status", "") == "VALID", "download not reported valid");
    const std::string slot = dl.is_error() ? kSpareSlot : dl.data.value("slot", kSpareSlot);
    const auto install = lab->client().sw_install(slot);
    c.require(!install.is_error(), "install refused: " + install.error.message);
    c.require(slot_leaf(*lab, slot, "build-id") == std::string(kNewBuild), "inventory lacks the new build");
    c.require(slot_leaf(*lab, slot, "checksum") == checksum, "inventory checksum differs");
    c.require(slot_leaf(*lab, kFactorySlot, "running") == "true", "running slot changed by an update");
    return support::judged(lab, c, {{"slot", slot}, {"checksum", checksum}, {"image_bytes", image.size()}});
}

CaseOutcome software_update_negative(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto image = software_image(ctx.seed);
    const auto dl = lab->client().sw_download(kNewBuild, mplane::image_checksum(image), image);
    const std::string status = dl.is_error() ? "error" : dl.data.value("status", "");
    const std::string slot = dl.is_error() ? kSpareSlot : dl.data.value("slot", kSpareSlot);
    Checks c;
    c.require(status == "INVALID", "image with a bad checksum reported " + status);
    const auto install = lab->client().sw_install(slot);
    c.require(install.is_error() && install.error.tag == mplane::error_tag::operation_failed,
              "install of an invalid image was not refused");
    const auto activate = lab->client().sw_activate(slot);
    c.require(activate.is_error(), "activation of an invalid image was accepted");
    c.require(slot_leaf(*lab, kFactorySlot, "running") == "true" && slot_leaf(*lab, kFactorySlot, "active") == "true",
              "factory slot no longer running and active");
    return support::judged(lab, c, {{"behavior", status}, {"slot", slot}});
}

CaseOutcome activation_without_reset(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto image = software_image(ctx.seed);
    const auto dl = lab->client().sw_download(kNewBuild, mplane::image_checksum(image), image);
    if (dl.is_error() || dl.data.value("status", "") != "VALID") {
        return support::blocked(lab, "software download did not produce a valid slot");
    }
    const std::string slot = dl.data.value("slot", kSpareSlot);
    if (lab->client().sw_install(slot).is_error()) return support::blocked(lab, "install refused");
    const auto activate = lab->client().sw_activate(slot);
    lab->scheduler().run_for(sim::seconds(1));
    Checks c;
    c.require(!activate.is_error(), "activation refused: " + activate.error.message);
    c.require(slot_leaf(*lab, slot, "active") == "true", "new slot not active");
    c.require(slot_leaf(*lab, slot, "running") == "false", "new slot running before any reset");
    c.require(slot_leaf(*lab, kFactorySlot, "running") == "true", "factory slot stopped running");
    c.require(lab->client().established(), "activation dropped the session");
    c.require(lab->ru().boot_count() == 1, "O-RU rebooted on activation");
    return support::judged(lab, c, {{"slot", slot}, {"boots", lab->ru().boot_count()}});
}

CaseOutcome reset_after_activation(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto image = software_image(ctx.seed);
    const auto dl = lab->client().sw_download(kNewBuild, mplane::image_checksum(image), image);
    if (dl.is_error() || dl.data.value("status", "") != "VALID") {
        return support::blocked(lab, "software download did not produce a valid slot");
    }
    const std::string slot = dl.data.value("slot", kSpareSlot);
    if (lab->client().sw_install(slot).is_error() || lab->client().sw_activate(slot).is_error()) {
        return support::blocked(lab, "install or activation refused");
    }
    const auto attempts = lab->ru().call_home_attempts();
    const auto reset = lab->client().reset();
    lab->scheduler().run_for(sim::seconds(1));
    const bool back = lab->await_mplane(sim::seconds(30));
    Checks c;
    c.require(!reset.is_error(), "reset refused");
    c.require(back, "no Call Home after reset");
    if (back) {
        c.require(slot_leaf(*lab, slot, "running") == "true", "activated slot not running after reset");
        c.require(slot_leaf(*lab, slot, "build-id") == std::string(kNewBuild), "running build is not the new one");
    }
    c.require(lab->ru().boot_count() == 2, "expected exactly one reboot");
    c.require(lab->ru().call_home_attempts() > attempts, "no new Call Home attempt");
    return support::judged(lab, c, {{"slot", slot}, {"boots", lab->ru().boot_count()}, {"reconnected_at_ns",
                                                                                        lab->scheduler().now()}});
}

CaseOutcome hierarchical_sudo(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const mplane::Credentials smo{"smo", "SHA256:smo-98:76:54"};
    mplane::HierarchicalProxy impostor_gate(lab->client(), smo.fingerprint);
    const bool impostor = impostor_gate.accept_outer({"smo", "SHA256:smo-00:00:00"});

    mplane::HierarchicalProxy proxy(lab->client(), smo.fingerprint);
    Checks c;
    c.require(!impostor, "outer session accepted unknown credentials");
    if (!proxy.accept_outer(smo)) return support::blocked(lab, "outer session refused");

    const auto direct = lab->client().get();
    const auto relayed = proxy.forward(true, {0, mplane::Operation::get, Json::object()});
    c.require(relayed.kind == RpcReply::Kind::data && relayed.data == direct.data,
              "privileged get differs from a direct get");

    const Json edit{{"changes", Json::array({{{"path", "device/name"}, {"value", "renamed-via-proxy"}}})}};
    const auto before = support::read_leaf(*lab, "device/name");
    const auto denied = proxy.forward(false, {0, mplane::Operation::edit_config, edit});
    c.require(denied.is_error() && denied.error.tag == mplane::error_tag::access_denied,
              "unprivileged edit was not denied");
    c.require(support::read_leaf(*lab, "device/name") == before, "denied edit changed the O-RU");
    const auto allowed = proxy.forward(true, {0, mplane::Operation::edit_config, edit});
    c.require(!allowed.is_error(), "privileged edit refused");
    c.require(support::read_leaf(*lab, "device/name") == std::string("renamed-via-proxy"),
              "privileged edit not applied");
    return support::judged(lab, c, {{"forwarded", proxy.forwarded()}, {"denied", proxy.denied()}});
}

CaseOutcome configurability_positive(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const std::string power = std::to_string(10 + ctx.seed % 30);
    const std::vector<LeafChange> changes{
        {"carriers/tx0/tx-power-dbm", power},
        {"fronthaul/delay-window/t2a-max-up-ns", "420000"},
        {"device/name", "o-ru-under-test"},
    };
    const auto reply = lab->client().edit_config(changes);
    Checks c;
    c.require(!reply.is_error(), "edit refused: " + reply.error.message);
    for (const auto& ch : changes) {
        c.require(support::read_leaf(*lab, ch.path) == ch.value, ch.path + " does not read back");
    }
    c.require(lab->ru().windows().t2a_max_up_ns == 420000, "delay window not applied by the O-RU");
    return support::judged(lab, c, {{"tx_power_dbm", power}, {"changes", changes.size()}});
}

CaseOutcome configurability_negative(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    const auto before = lab->client().get();
    Checks c;

    // Device policy: this node is refused even with a legal value.
    const auto policy = lab->client().edit_config({{ru::kDefaultRejectedNode, "25"}});
    const bool policy_refused = policy.is_error();
    c.require(policy_refused && policy.error.path == ru::kDefaultRejectedNode,
              "policy-protected node accepted or error lacks its path");

    const auto range = lab->client().edit_config({{"carriers/tx0/tx-power-dbm", "99"}});
    c.require(range.is_error() && range.error.tag == mplane::error_tag::invalid_value,
              "out-of-range value accepted");
    const auto readonly = lab->client().edit_config({{"device/vendor", "other"}});
    c.require(readonly.is_error(), "read-only node accepted");
    const auto unknown = lab->client().edit_config({{"device/no-such-leaf", "1"}});
    c.require(unknown.is_error(), "unknown node accepted");
    // One bad change poisons the whole edit.
    const auto mixed = lab->client().edit_config({{"device/name", "half-applied"}, {"carriers/tx0/tx-power-dbm", "99"}});
    c.require(mixed.is_error(), "edit with an invalid change accepted");
    if (policy_refused) {
        c.require(lab->client().get().data == before.data, "a refused edit changed the datastore");
    }
    return support::judged(lab, c, {{"behavior", policy_refused ? "rejected" : "accepted"},
                                    {"policy_error", policy.error.tag},
                                    {"range_error", range.error.tag}});
}

CaseOutcome troubleshooting(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    Checks c;
    c.require(!lab->client().log_start(mplane::LogKind::troubleshooting).is_error(), "log start refused");
    lab->client().edit_config({{"device/name", "inside-window"}});
    lab->scheduler().run_for(sim::seconds(2));
    c.require(!lab->client().log_stop().is_error(), "log stop refused");
    lab->client().edit_config({{"device/name", "outside-window"}});
    const auto log = lab->client().log_collect();
    c.require(log.kind == RpcReply::Kind::data && log.data.value("kind", "") == "troubleshooting",
              "no troubleshooting log returned");
    const Json events = log.data.value("events", Json::array());
    bool inside = false;
    bool outside = false;
    bool rpc = false;
    for (const auto& e : events) {
        const auto text = e.value("text", "");
        inside |= text.find("inside-window") != std::string::npos;
        outside |= text.find("outside-window") != std::string::npos;
        rpc |= e.value("category", "") == "rpc";
    }
    c.require(inside, "log misses activity inside the window");
    c.require(!outside, "log contains activity after stop");
    c.require(!rpc, "troubleshooting log carries RPC trace entries");
    CaseOutcome out = support::judged(lab, c, {{"entries", events.size()}});
    out.evidence["troubleshooting-log.json"] = events.dump(2);
    return out;
}

CaseOutcome trace(CaseContext& ctx) {
    Lab lab(ctx);
    if (!session_up(lab)) return support::blocked(lab, kNoSession);
    Checks c;
    c.require(!lab->client().log_start(mplane::LogKind::trace).is_error(), "trace start refused");
    lab->client().get(std::string("sync/state"));
    lab->client().edit_config({{"device/name", "traced"}});
    lab->client().subscribe("alarms");
    c.require(!lab->client().log_stop().is_error(), "trace stop refused");
    const auto log = lab->client().log_collect();
    c.require(log.kind == RpcReply::Kind::data && log.data.value("kind", "") == "trace", "no trace returned");
    std::vector<std::string> ops;
    for (const auto& e : log.data.value("events", Json::array())) {
        if (e.value("category", "") == "rpc") ops.push_back(e.value("text", ""));
    }
    const std::vector<std::string> expected{"get-with-filter", "edit-config", "subscribe"};
    c.require(ops == expected, "trace does not list the RPCs in order");
    CaseOutcome out = support::judged(lab, c, {{"rpcs", ops}});
    out.evidence["trace-log.json"] = log.data.dump(2);
    return out;
}

} // namespace ofh::runner::scenarios
