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

#include <attseq/crypto.hpp>

#include <algorithm>
#include <stdexcept>

#include <sodium.h>

namespace attseq {

namespace {

    void ensure_sodium() {
        static const bool ready = [] { return sodium_init() >= 0; }();
        if (!ready) {
            throw std::runtime_error("libsodium initialization failed");
        }
    }

}  // namespace

SigningKey SigningKey::from_seed(const Digest& seed) {
    ensure_sodium();
    SigningKey key;
    crypto_sign_seed_keypair(key.public_.data(), key.secret_.data(), seed.data());
    return key;
}

Signature SigningKey::sign(const Digest& message) const {
    Signature sig{};
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), secret_.data());
    return sig;
}

bool verify_signature(const PublicKey& key, const Digest& message, const Signature& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), key.data()) == 0;
}

Digest derive_seed(std::string_view label, std::uint64_t seed) {
    ByteWriter w;
    w.prefixed(ByteView{reinterpret_cast<const std::uint8_t*>(label.data()), label.size()});
    w.u64(seed);
    return sha256(w.bytes());
}

Address address_of(ByteView public_key) {
    const Digest h = sha256(public_key);
    Address a{};
    std::copy_n(h.begin(), a.size(), a.begin());
    return a;
}

Address address_of_name(std::string_view name) {
    const std::string label = "actor:" + std::string{name};
    return address_of(ByteView{reinterpret_cast<const std::uint8_t*>(label.data()), label.size()});
}

}  // namespace attseq
