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

#include "ofh/mplane/datastore.hpp"

#include <charconv>

namespace ofh::mplane {

bool LeafRule::accepts(const std::string& value) const {
    switch (kind) {
    case Kind::boolean:
        return value == "true" || value == "false";
    case Kind::integer: {
        std::int64_t parsed = 0;
        const char* end = value.data() + value.size();
        auto [ptr, ec] = std::from_chars(value.data(), end, parsed);
        return ec == std::errc{} && ptr == end && !value.empty() && parsed >= min && parsed <= max;
    }
    case Kind::enumeration:
        return allowed.count(value) != 0;
    case Kind::text:
        return true;
    }
    return false;
}

std::vector<std::string> Datastore::split(std::string_view path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t slash = path.find('/', start);
        const std::size_t end = slash == std::string_view::npos ? path.size() : slash;
        if (end > start) parts.emplace_back(path.substr(start, end - start));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return parts;
}

const Json* Datastore::find(std::string_view path) const {
    const Json* node = &tree_;
    for (const auto& part : split(path)) {
        if (!node->is_object()) return nullptr;
        auto it = node->find(part);
        if (it == node->end()) return nullptr;
        node = &*it;
    }
    return node;
}

std::optional<std::string> Datastore::leaf(std::string_view path) const {
    const Json* node = find(path);
    if (node == nullptr || !node->is_string()) return std::nullopt;
    return node->get<std::string>();
}

bool Datastore::contains(std::string_view path) const { return find(path) != nullptr; }

void Datastore::set(std::string_view path, std::string value) { set_container(path, Json(std::move(value))); }

void Datastore::set_container(std::string_view path, Json subtree) {
    const auto parts = split(path);
    if (parts.empty()) {
        tree_ = std::move(subtree);
        return;
    }
    Json* node = &tree_;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        Json& child = (*node)[parts[i]];
        if (!child.is_object()) child = Json::object();
        node = &child;
    }
    (*node)[parts.back()] = std::move(subtree);
}

bool Datastore::erase(std::string_view path) {
    const auto parts = split(path);
    if (parts.empty()) return false;
    Json* node = &tree_;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        auto it = node->find(parts[i]);
        if (it == node->end() || !it->is_object()) return false;
        node = &*it;
    }
    return node->erase(parts.back()) != 0;
}

Json Datastore::fragment(std::string_view path) const {
    const auto parts = split(path);
    if (parts.empty()) return tree_;
    const Json* node = find(path);
    if (node == nullptr) return Json::object();
    Json wrapped = *node;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        wrapped = Json{{*it, std::move(wrapped)}};
    }
    return wrapped;
}

void Datastore::declare_writable(std::string pattern, LeafRule rule) {
    writable_.emplace_back(split(pattern), std::move(rule));
}

const LeafRule* Datastore::rule_for(std::string_view path) const {
    const auto parts = split(path);
    for (const auto& [pattern, rule] : writable_) {
        if (pattern.size() != parts.size()) continue;
        bool match = true;
        for (std::size_t i = 0; i < parts.size() && match; ++i) {
            match = pattern[i] == "*" || pattern[i] == parts[i];
        }
        if (match) return &rule;
    }
    return nullptr;
}

std::optional<RpcError> Datastore::apply_edit(const std::vector<LeafChange>& changes, const Guard& guard) {
    for (const auto& change : changes) {
        const LeafRule* rule = rule_for(change.path);
        const Json* node = find(change.path);
        if (rule == nullptr || node == nullptr || !node->is_string()) {
            return RpcError{error_tag::unknown_element, "error", "no writable leaf at this path", change.path};
        }
        if (!rule->accepts(change.value)) {
            return RpcError{error_tag::invalid_value, "error", "value '" + change.value + "' rejected",
                            change.path};
        }
        if (guard) {
            if (auto error = guard(change)) return error;
        }
    }
    for (const auto& change : changes) set(change.path, change.value);
    return std::nullopt;
}

} // namespace ofh::mplane
