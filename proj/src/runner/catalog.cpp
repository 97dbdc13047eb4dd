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

#include "ofh/runner/catalog.hpp"

#include <algorithm>

namespace ofh::runner {

std::string_view to_string(Plane plane) noexcept {
    switch (plane) {
    case Plane::M: return "M";
    case Plane::C: return "C";
    case Plane::U: return "U";
    case Plane::S: return "S";
    case Plane::CU: return "CU";
    }
    return "?";
}

std::string_view to_string(Category category) noexcept {
    return category == Category::mandatory ? "MANDATORY" : "CONDITIONAL_MANDATORY";
}

std::string_view to_string(Expectation expectation) noexcept {
    return expectation == Expectation::positive ? "positive" : "negative";
}

std::span<const TestCase> load_catalog() noexcept { return kCatalog; }

const TestCase* find_case(std::string_view id) noexcept {
    auto it = std::find_if(kCatalog.begin(), kCatalog.end(), [&](const TestCase& c) { return c.id == id; });
    return it == kCatalog.end() ? nullptr : &*it;
}

ru::TestbedConfig CaseContext::testbed_config() const {
    ru::TestbedConfig cfg;
    cfg.transport = profile.transport;
    cfg.ru.faults = faults;
    cfg.ru.ptp.seed = seed;
    return cfg;
}

} // namespace ofh::runner
