/*
   Copyright 2026 The Attseq Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace attseq {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// 32-byte digest (SHA-256 output, measurements, block hashes).
using Digest = std::array<std::uint8_t, 32>;

// 20-byte L1 account address.
using Address = std::array<std::uint8_t, 20>;

// 6-byte platform family/model/stepping identifier.
using Fmspc = std::array<std::uint8_t, 6>;

std::string to_hex(ByteView bytes);

template <std::size_t N>
std::string to_hex(const std::array<std::uint8_t, N>& a) {
    return to_hex(ByteView{a.data(), a.size()});
}

// Accepts an optional 0x prefix. Returns nullopt on odd length or non-hex characters.
std::optional<Bytes> from_hex(std::string_view hex);

template <std::size_t N>
std::optional<std::array<std::uint8_t, N>> array_from_hex(std::string_view hex) {
    auto raw = from_hex(hex);
    if (!raw || raw->size() != N) {
        return std::nullopt;
    }
    std::array<std::uint8_t, N> out{};
    std::copy(raw->begin(), raw->end(), out.begin());
    return out;
}

Digest sha256(ByteView data);
Digest sha256(std::string_view text);

inline ByteView view_of(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Little-endian append-only writer.
class ByteWriter {
  public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void raw(ByteView data) { buf_.insert(buf_.end(), data.begin(), data.end()); }
    template <std::size_t N>
    void raw(const std::array<std::uint8_t, N>& a) {
        buf_.insert(buf_.end(), a.begin(), a.end());
    }
    // u32 length prefix followed by the bytes.
    void prefixed(ByteView data);
    void zeros(std::size_t n) { buf_.insert(buf_.end(), n, 0); }

    [[nodiscard]] std::size_t size() const noexcept { return buf_.size(); }
    [[nodiscard]] const Bytes& bytes() const& noexcept { return buf_; }
    Bytes take() && { return std::move(buf_); }

  private:
    Bytes buf_;
};

// Little-endian cursor; every read reports failure instead of reading past the end.
class ByteReader {
  public:
    explicit ByteReader(ByteView data) : data_{data} {}

    bool u8(std::uint8_t& v);
    bool u16(std::uint16_t& v);
    bool u32(std::uint32_t& v);
    bool u64(std::uint64_t& v);
    bool raw(std::span<std::uint8_t> out);
    template <std::size_t N>
    bool raw(std::array<std::uint8_t, N>& a) {
        return raw(std::span<std::uint8_t>{a.data(), a.size()});
    }
    bool skip(std::size_t n);

    [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }
    [[nodiscard]] std::size_t position() const noexcept { return pos_; }
    [[nodiscard]] ByteView rest() const noexcept { return data_.subspan(pos_); }

  private:
    ByteView data_;
    std::size_t pos_{0};
};

}  // namespace attseq
