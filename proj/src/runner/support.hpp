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

// Shared plumbing for the scenario files. Not installed.

#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ofh/codec/capture.hpp"
#include "ofh/ru/testbed.hpp"
#include "ofh/runner/scenarios.hpp"

namespace ofh::runner::support {

/// Collects requirement outcomes; the verdict is PASS iff none failed.
class Checks {
public:
    bool require(bool ok, const std::string& what) {
        if (!ok) failed_.push_back(what);
        return ok;
    }
    bool passed() const noexcept { return failed_.empty(); }
    Verdict verdict() const noexcept { return passed() ? Verdict::pass : Verdict::fail; }
    std::string detail() const {
        std::string out;
        for (const auto& f : failed_) out += (out.empty() ? "" : "; ") + f;
        return out;
    }

private:
    std::vector<std::string> failed_;
};

/// Every M-Plane document the TER exchanged, one per line.
class MplaneTrace {
public:
    void attach(mplane::MplaneClient& client) {
        client.set_trace([this](mplane::MplaneClient::Direction d, const std::string& text) {
            std::lock_guard lock(mutex_);
            text_ += d == mplane::MplaneClient::Direction::sent ? "> " : "< ";
            text_ += text;
            text_ += '\n';
        });
    }
    std::string text() const {
        std::lock_guard lock(mutex_);
        return text_;
    }

private:
    mutable std::mutex mutex_;
    std::string text_;
};

/// A Testbed plus the evidence every case files.
struct Lab {
    explicit Lab(const CaseContext& ctx) : Lab(ctx.testbed_config()) {}
    explicit Lab(ru::TestbedConfig config) : tb(std::make_unique<ru::Testbed>(std::move(config))) {
        trace.attach(tb->client());
    }
    ru::Testbed& operator*() noexcept { return *tb; }
    ru::Testbed* operator->() noexcept { return tb.get(); }

    // Declared first so it outlives the client that writes to it.
    MplaneTrace trace;
    std::unique_ptr<ru::Testbed> tb;
};

inline std::string capture_bytes(const std::vector<codec::CaptureRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) codec::write_capture_record(out, r);
    return out.str();
}

/// Files the standard evidence and the simulated duration.
inline CaseOutcome finish(Lab& lab, CaseOutcome outcome) {
    std::ostringstream events;
    lab->ru().events().write_capture(events);
    outcome.evidence["ru-events.cap"] = events.str();
    const auto trace = lab.trace.text();
    if (!trace.empty()) outcome.evidence["mplane-trace.txt"] = trace;
    if (!lab->fronthaul_capture().empty()) {
        outcome.evidence["fronthaul.cap"] = capture_bytes(lab->fronthaul_capture());
    }
    outcome.sim_duration = lab->scheduler().now();
    return outcome;
}

inline CaseOutcome blocked(Lab& lab, std::string why) {
    CaseOutcome out;
    out.verdict = Verdict::blocked;
    out.detail = std::move(why);
    return finish(lab, std::move(out));
}

inline CaseOutcome judged(Lab& lab, const Checks& checks, mplane::Json metrics) {
    CaseOutcome out;
    out.verdict = checks.verdict();
    out.detail = checks.detail();
    out.metrics = std::move(metrics);
    return finish(lab, std::move(out));
}

/// Leaf value from a get reply, if present and a string.
inline std::optional<std::string> leaf(const mplane::RpcReply& reply, const std::string& path) {
    if (reply.kind != mplane::RpcReply::Kind::data) return std::nullopt;
    const mplane::Json::json_pointer at("/" + path);
    if (!reply.data.contains(at) || !reply.data.at(at).is_string()) return std::nullopt;
    return reply.data.at(at).get<std::string>();
}

inline std::optional<std::string> read_leaf(ru::Testbed& tb, const std::string& path) {
    return leaf(tb.client().get(path), path);
}

} // namespace ofh::runner::support
