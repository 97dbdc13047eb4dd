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
#include <iosfwd>
#include <optional>
#include <vector>

namespace ofh::codec {

enum class CaptureDirection : std::uint8_t {
    ter_to_ru = 0,
    ru_to_ter = 1,
    internal = 2,
};

/// Evidence record: time(8, ns) | direction(1) | length(4) | bytes, big-endian.
struct CaptureRecord {
    std::uint64_t time_ns = 0;
    CaptureDirection direction = CaptureDirection::ter_to_ru;
    std::vector<std::uint8_t> bytes;

    bool operator==(const CaptureRecord&) const = default;
};

void write_capture_record(std::ostream& out, const CaptureRecord& record);

/// Returns nullopt at a clean end of stream; a partial record throws
/// CodecError(truncated).
std::optional<CaptureRecord> read_capture_record(std::istream& in);

std::vector<CaptureRecord> read_capture(std::istream& in);

} // namespace ofh::codec
