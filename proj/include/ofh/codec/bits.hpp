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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ofh::codec {

/// MSB-first bit packer. Fields are appended without padding; call
/// `align()` to pad to the next byte boundary with zero bits.
class BitWriter {
public:
    /// Appends the low `width` bits of `value`. Throws field_overflow if the
    /// value does not fit; `field` names it in the error.
    void put(std::uint64_t value, unsigned width, std::string_view field);
    void put_signed(std::int64_t value, unsigned width, std::string_view field);
    void put_bool(bool value) { put(value ? 1U : 0U, 1, "flag"); }
    void align();

    std::size_t bit_size() const noexcept { return bits_; }
    std::vector<std::uint8_t> take();

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

/// MSB-first bit reader over a borrowed byte span. Reading past the end
/// throws truncated.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint64_t get(unsigned width, std::string_view field);
    std::int64_t get_signed(unsigned width, std::string_view field);
    bool get_bool(std::string_view field) { return get(1, field) != 0; }
    void align();

    std::size_t bits_remaining() const noexcept { return bytes_.size() * 8 - pos_; }
    bool at_end() const noexcept { return pos_ >= bytes_.size() * 8; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace ofh::codec
