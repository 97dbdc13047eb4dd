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

#include "ofh/codec/bits.hpp"

#include <string>

#include "ofh/codec/error.hpp"

namespace ofh::codec {

void BitWriter::put(std::uint64_t value, unsigned width, std::string_view field) {
    if (width < 64 && (value >> width) != 0) {
        throw CodecError(CodecErrc::field_overflow, std::string(field),
                         std::to_string(value) + " does not fit " + std::to_string(width) + " bits");
    }
    for (unsigned b = width; b-- > 0;) {
        if (bits_ % 8 == 0) {
            bytes_.push_back(0);
        }
        if ((value >> b) & 1U) {
            bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (bits_ % 8));
        }
        ++bits_;
    }
}

void BitWriter::put_signed(std::int64_t value, unsigned width, std::string_view field) {
    const std::int64_t lo = -(std::int64_t{1} << (width - 1));
    const std::int64_t hi = (std::int64_t{1} << (width - 1)) - 1;
    if (value < lo || value > hi) {
        throw CodecError(CodecErrc::field_overflow, std::string(field),
                         std::to_string(value) + " outside signed " + std::to_string(width) + " bits");
    }
    const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    put(static_cast<std::uint64_t>(value) & mask, width, field);
}

void BitWriter::align() {
    bits_ = (bits_ + 7) / 8 * 8;
}

std::vector<std::uint8_t> BitWriter::take() {
    align();
    bits_ = 0;
    return std::move(bytes_);
}

std::uint64_t BitReader::get(unsigned width, std::string_view field) {
    if (width > bits_remaining()) {
        throw CodecError(CodecErrc::truncated, std::string(field),
                         "need " + std::to_string(width) + " bits, have " +
                             std::to_string(bits_remaining()));
    }
    std::uint64_t value = 0;
    for (unsigned b = 0; b < width; ++b, ++pos_) {
        const auto bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1U;
        value = (value << 1) | bit;
    }
    return value;
}

std::int64_t BitReader::get_signed(unsigned width, std::string_view field) {
    const std::uint64_t raw = get(width, field);
    const std::uint64_t sign = std::uint64_t{1} << (width - 1);
    return static_cast<std::int64_t>(raw ^ sign) - static_cast<std::int64_t>(sign);
}

void BitReader::align() {
    pos_ = (pos_ + 7) / 8 * 8;
    if (pos_ > bytes_.size() * 8) {
        pos_ = bytes_.size() * 8;
    }
}

} // namespace ofh::codec
