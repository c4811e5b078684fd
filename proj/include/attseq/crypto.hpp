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

#include <array>
#include <cstdint>

#include <attseq/bytes.hpp>

namespace attseq {

using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

// Deterministic signing key. The same seed and message always give the same signature.
class SigningKey {
  public:
    static SigningKey from_seed(const Digest& seed);

    [[nodiscard]] const PublicKey& public_key() const noexcept { return public_; }
    [[nodiscard]] Signature sign(const Digest& message) const;

  private:
    PublicKey public_{};
    std::array<std::uint8_t, 64> secret_{};
};

bool verify_signature(const PublicKey& key, const Digest& message, const Signature& sig);

// Seed derivation for scenario-scoped keys: sha256(label || seed_le).
Digest derive_seed(std::string_view label, std::uint64_t seed);

Address address_of(ByteView public_key);
Address address_of_name(std::string_view name);

}  // namespace attseq
