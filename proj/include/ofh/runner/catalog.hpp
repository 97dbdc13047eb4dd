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

#include <array>
#include <span>
#include <string_view>

#include "ofh/runner/scenarios.hpp"

namespace ofh::runner {

enum class Plane { M, C, U, S, CU };
enum class Category { mandatory, conditional_mandatory };
/// Negative cases pass when the O-RU shows the specified failure handling.
enum class Expectation { positive, negative };

std::string_view to_string(Plane plane) noexcept;
std::string_view to_string(Category category) noexcept;
std::string_view to_string(Expectation expectation) noexcept;

struct TestCase {
    std::string_view id;
    std::string_view title;
    Plane plane = Plane::M;
    Category category = Category::mandatory;
    Expectation expected = Expectation::positive;
    Scenario procedure = nullptr;
};

namespace detail {
// Table order is execution and report order.
constexpr std::array<TestCase, 31> make_catalog() {
    using enum Plane;
    using enum Category;
    using enum Expectation;
    namespace s = scenarios;
    return {{
        {"3.1.1.7", "Transport and Handshake in IPv6 Environment (positive case)", M, mandatory, positive, &s::transport_handshake_positive},
        {"3.1.1.8", "Transport and Handshake in IPv6 Environment (negative case)", M, mandatory, negative, &s::transport_handshake_negative},
        {"3.1.2.1", "Subscription to Notifications", M, mandatory, positive, &s::subscription},
        {"3.1.3.1", "M-Plane Connection Supervision (positive case)", M, mandatory, positive, &s::supervision_positive},
        {"3.1.3.2", "M-Plane Connection Supervision (negative case)", M, mandatory, negative, &s::supervision_negative},
        {"3.1.4.1", "Retrieval without Filter Applied", M, mandatory, positive, &s::retrieval_unfiltered},
        {"3.1.4.2", "Retrieval with Filter Applied", M, mandatory, positive, &s::retrieval_filtered},
        {"3.1.5.1", "O-RU Alarm Notification Generation", M, mandatory, positive, &s::alarm_notification},
        {"3.1.5.2", "Retrieval of Active Alarm List", M, mandatory, positive, &s::active_alarm_list},
        {"3.1.6.1", "O-RU Software Update (positive case)", M, mandatory, positive, &s::software_update_positive},
        {"3.1.6.2", "O-RU Software Update (negative case)", M, mandatory, negative, &s::software_update_negative},
        {"3.1.7.1", "Software Activation without Reset", M, mandatory, positive, &s::activation_without_reset},
        {"3.1.7.2", "Supplemental Reset after Software Activation", M, mandatory, positive, &s::reset_after_activation},
        {"3.1.8.6", "Sudo on Hierarchical M-plane architecture (positive case)", M, conditional_mandatory, positive, &s::hierarchical_sudo},
        {"3.1.10.1", "O-RU configurability test (positive case)", M, mandatory, positive, &s::configurability_positive},
        {"3.1.10.2", "O-RU configurability test (negative case)", M, mandatory, negative, &s::configurability_negative},
        {"3.1.12.1", "Troubleshooting Test", M, mandatory, positive, &s::troubleshooting},
        {"3.1.12.2", "Trace Test", M, mandatory, positive, &s::trace},
        {"3.2.5.1.1", "UC-Plane O-RU Scenario Class Base 3GPP DL/UL", CU, mandatory, positive, &s::base_dl_ul},
        {"3.2.5.1.2", "UC-Plane O-RU Scenario Class Extended 3GPP DL/UL - Resource Allocation", CU, conditional_mandatory, positive, &s::extended_allocation},
        {"3.2.5.1.3", "UC-Plane O-RU Scenario Class Extended using RB parameter 3GPP DL/UL-Resource Allocation", CU, conditional_mandatory, positive, &s::extended_rb_allocation},
        {"3.2.5.2.1", "UC-Plane O-RU Scenario Class Beamforming 3GPP DL - No Beamforming", CU, mandatory, positive, &s::dl_no_beamforming},
        {"3.2.5.2.2", "UC-Plane O-RU Scenario Class Beamforming 3GPP UL - No Beamforming", CU, mandatory, positive, &s::ul_no_beamforming},
        {"3.2.5.2.5", "UC-Plane O-RU Scenario Class Beamforming 3GPP DL - Weight-based Dynamic Beamforming", CU, conditional_mandatory, positive, &s::weight_based_beamforming},
        {"3.2.5.4.1", "UC-Plane O-RU Scenario Class DLM Test #1: Downlink - Positive testing", CU, mandatory, positive, &s::dlm_dl_positive},
        {"3.2.5.4.2", "UC-Plane O-RU Scenario Class DLM Test #2: Uplink - Positive testing", CU, mandatory, positive, &s::dlm_ul_positive},
        {"3.2.5.4.3", "UC-Plane O-RU Scenario Class DLM Test #3: Downlink - Negative testing", CU, mandatory, negative, &s::dlm_dl_negative},
        {"3.2.5.4.4", "UC-Plane O-RU Scenario Class DLM Test #4: Uplink - Negative Testing", CU, mandatory, negative, &s::dlm_ul_negative},
        {"3.2.5.8.1", "UC-Plane O-RU Scenario Class ST3 Test #1: NR PRACH", CU, conditional_mandatory, positive, &s::prach},
        {"3.3.2", "Functional test of O-RU using ITU-T G.8275.1 Profile (LLS-C1/C2/C3)", S, mandatory, positive, &s::ptp_functional},
        {"3.3.3", "Performance test of O-RU using ITU-T G.8275.1 Profile (LLS-C1/C2/C3)", S, mandatory, positive, &s::ptp_performance},
    }};
}
} // namespace detail

inline constexpr std::array<TestCase, 31> kCatalog = detail::make_catalog();

namespace detail {
constexpr bool all_bound() {
    for (const auto& c : kCatalog) {
        if (c.procedure == nullptr || c.id.empty() || c.title.empty()) return false;
    }
    return true;
}
constexpr bool ids_unique() {
    for (std::size_t i = 0; i < kCatalog.size(); ++i) {
        for (std::size_t j = i + 1; j < kCatalog.size(); ++j) {
            if (kCatalog[i].id == kCatalog[j].id) return false;
        }
    }
    return true;
}
} // namespace detail

static_assert(detail::all_bound(), "every catalog entry needs a scenario binding");
static_assert(detail::ids_unique(), "catalog ids must be unique");

std::span<const TestCase> load_catalog() noexcept;
const TestCase* find_case(std::string_view id) noexcept;
/// The case whose failure means no session can be established.
inline constexpr std::string_view kEstablishmentCase = "3.1.1.7";

} // namespace ofh::runner
