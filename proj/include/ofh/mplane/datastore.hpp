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
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ofh/mplane/envelope.hpp"

namespace ofh::mplane {

/// Validation rule for a writable leaf.
struct LeafRule {
    enum class Kind { boolean, integer, enumeration, text };

    Kind kind = Kind::text;
    std::int64_t min = 0;
    std::int64_t max = 0;
    std::set<std::string> allowed;

    static LeafRule boolean() { return {Kind::boolean, 0, 0, {}}; }
    static LeafRule integer(std::int64_t lo, std::int64_t hi) { return {Kind::integer, lo, hi, {}}; }
    static LeafRule enumeration(std::set<std::string> values) { return {Kind::enumeration, 0, 0, std::move(values)}; }
    static LeafRule text() { return {}; }

    bool accepts(const std::string& value) const;
};

struct LeafChange {
    std::string path;
    std::string value;
};

/// Hierarchical configuration/state tree: JSON objects for containers, strings
/// for leaves. Paths are '/'-separated node names.
class Datastore {
public:
    using Guard = std::function<std::optional<RpcError>(const LeafChange&)>;

    Datastore() = default;

    const Json& tree() const noexcept { return tree_; }

    std::optional<std::string> leaf(std::string_view path) const;
    bool contains(std::string_view path) const;

    /// Server-side write; creates intermediate containers. No validation.
    void set(std::string_view path, std::string value);
    void set_container(std::string_view path, Json subtree);
    bool erase(std::string_view path);

    /// The subtree rooted at `path`, wrapped in its ancestor containers so it
    /// reads like a filtered NETCONF reply. An empty object when nothing
    /// matches; the full tree for an empty path.
    Json fragment(std::string_view path) const;

    /// Declares leaves matching `pattern` (segments may be "*") as writable.
    void declare_writable(std::string pattern, LeafRule rule);

    /// Validates every change (schema first, then `guard`) and applies them
    /// only if all pass. Returns the first error; the tree is untouched then.
    std::optional<RpcError> apply_edit(const std::vector<LeafChange>& changes, const Guard& guard = {});

    static std::vector<std::string> split(std::string_view path);

private:
    const LeafRule* rule_for(std::string_view path) const;
    const Json* find(std::string_view path) const;

    Json tree_ = Json::object();
    std::vector<std::pair<std::vector<std::string>, LeafRule>> writable_;
};

} // namespace ofh::mplane
