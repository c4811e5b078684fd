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

#include <cstdint>
#include <optional>
#include <string_view>

#include <attseq/attestation.hpp>
#include <attseq/crypto.hpp>
#include <attseq/expected.hpp>
#include <attseq/pcs.hpp>

namespace attseq {

enum class TamperMode {
    kNone,
    kWrongMeasurement,
    kStaleTimestamp,
    kReuseNonce,
    kForgeSignature,
    kCompromisedHost,
};

std::string_view to_string(TamperMode m);

enum class EnclaveError {
    kEmptyImage,
    kPcsUnavailable,
    kUnprovisioned,
    kNonceRegression,
};

std::string_view to_string(EnclaveError e);

inline constexpr std::uint64_t kDefaultStaleOffsetS{3600};

struct EnclaveConfig {
    std::uint64_t vendor_seed{1};    // fixes mrsigner
    std::uint64_t instance_seed{1};  // fixes the prover identity and attestation keys
    Fmspc fmspc{0x00, 0x90, 0x6e, 0xa1, 0x00, 0x00};
    std::uint16_t isv_svn{1};
    QuoteVersion quote_version{QuoteVersion::kV4};
    std::uint64_t stale_offset_s{kDefaultStaleOffsetS};
};

Digest mrsigner_for_vendor(std::uint64_t vendor_seed);

// Simulated TEE instance. Single owner; not thread safe.
class Enclave {
  public:
    static Expected<Enclave, EnclaveError> measure_and_boot(ByteView code_image, const EnclaveConfig& cfg = {});

    // Fetches a PCK certificate for a fresh attestation key. Calling again rotates the key;
    // the previous serial stays valid until the PCS revokes it.
    Expected<std::uint64_t, EnclaveError> provision(Pcs& pcs, std::uint64_t now);

    // Reserves the next metadata nonce.
    std::uint64_t reserve_nonce() noexcept { return ++reserved_nonce_; }

    // Binds meta (timestamp overwritten with now) into a signed quote. Tamper modes inject
    // the matching defect; kCompromisedHost produces exactly the honest quote.
    Expected<Quote, EnclaveError> generate_quote(SequencerMetadata meta, std::uint64_t now);

    void set_tamper_mode(TamperMode mode) noexcept { tamper_ = mode; }
    [[nodiscard]] TamperMode tamper_mode() const noexcept { return tamper_; }

    // What the host sees when it dumps enclave memory: sealed bytes only.
    [[nodiscard]] Bytes host_memory_snapshot() const;

    [[nodiscard]] bool provisioned() const noexcept { return attestation_key_.has_value(); }
    [[nodiscard]] const Bytes& code_image() const noexcept { return code_image_; }
    [[nodiscard]] const Digest& mrenclave() const noexcept { return mrenclave_; }
    [[nodiscard]] const Digest& mrsigner() const noexcept { return mrsigner_; }
    [[nodiscard]] std::uint16_t isv_svn() const noexcept { return config_.isv_svn; }
    [[nodiscard]] const Fmspc& fmspc() const noexcept { return config_.fmspc; }
    [[nodiscard]] std::optional<std::uint64_t> pck_serial() const noexcept { return pck_serial_; }
    [[nodiscard]] std::optional<PublicKey> attestation_public_key() const;
    [[nodiscard]] Bytes prover_pubkey() const;
    [[nodiscard]] Address address() const { return address_of(prover_pubkey()); }
    [[nodiscard]] std::uint64_t last_quoted_nonce() const noexcept { return last_quoted_nonce_; }

  private:
    Enclave() = default;

    Bytes code_image_;
    Digest mrenclave_{};
    Digest mrsigner_{};
    EnclaveConfig config_;
    std::optional<SigningKey> prover_key_;
    std::optional<SigningKey> attestation_key_;
    std::optional<std::uint64_t> pck_serial_;
    std::uint64_t provision_count_{0};
    std::uint64_t reserved_nonce_{0};
    std::uint64_t last_quoted_nonce_{0};
    std::uint64_t quotes_generated_{0};
    TamperMode tamper_{TamperMode::kNone};
};

}  // namespace attseq
