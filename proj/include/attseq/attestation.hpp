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
#include <optional>
#include <set>
#include <string_view>

#include <attseq/bytes.hpp>
#include <attseq/crypto.hpp>
#include <attseq/expected.hpp>

namespace attseq {

enum class QuoteVersion : std::uint16_t {
    kV3 = 3,
    kV4 = 4,
};

enum class AttestationKeyType : std::uint16_t {
    kEcdsaP256Sim = 2,
};

enum class TcbStatus : std::uint8_t {
    kUpToDate = 0,
    kOutOfDate = 1,
    kRevoked = 2,
    kConfigurationNeeded = 3,
};

std::string_view to_string(QuoteVersion v);
std::string_view to_string(TcbStatus s);
std::optional<QuoteVersion> quote_version_from_string(std::string_view s);
std::optional<TcbStatus> tcb_status_from_string(std::string_view s);

inline constexpr std::size_t kMaxProverKeySize{1024};
inline constexpr std::size_t kMinQuoteSize{512};
inline constexpr std::size_t kMaxQuoteSize{10'240};
inline constexpr std::size_t kDefaultQuoteSize{4096};

// Sequencer runtime state bound into every quote.
struct SequencerMetadata {
    Digest block_hash{};
    std::uint64_t block_height{0};
    Digest state_root{};
    Digest l1_origin{};
    std::uint64_t timestamp{0};  // unix seconds
    std::uint64_t nonce{0};
    Bytes prover_pubkey;

    bool operator==(const SequencerMetadata&) const = default;
};

struct QuoteHeader {
    QuoteVersion version{QuoteVersion::kV4};
    AttestationKeyType attestation_key_type{AttestationKeyType::kEcdsaP256Sim};
    std::array<std::uint8_t, 16> qe_vendor_id{};

    bool operator==(const QuoteHeader&) const = default;
};

struct ReportBody {
    Digest mrenclave{};
    Digest mrsigner{};
    std::uint16_t isv_svn{0};
    TcbStatus tcb_status{TcbStatus::kUpToDate};
    Digest report_data{};

    bool operator==(const ReportBody&) const = default;
};

// Identifies the PCK certificate that certifies the quote's attestation key.
struct CollateralRef {
    std::uint64_t pck_serial{0};
    Fmspc fmspc{};

    bool operator==(const CollateralRef&) const = default;
};

struct Quote {
    QuoteHeader header;
    ReportBody body;
    SequencerMetadata metadata;
    CollateralRef collateral_ref;
    Signature signature{};

    bool operator==(const Quote&) const = default;
};

// Hash over the length-prefixed metadata fields in declaration order.
Digest compute_report_data(const SequencerMetadata& meta);

// Digest the attestation key signs: sha256(header || body || metadata) in wire encoding.
Digest quote_signing_digest(const Quote& q);

enum class SerializeError {
    kProverKeyTooLarge,
    kTargetSizeOutOfRange,
    kExceedsTargetSize,
};

enum class ParseError {
    kTruncated,
    kUnknownVersion,
    kBadLengthPrefix,
    kMalformedField,
};

std::string_view to_string(SerializeError e);
std::string_view to_string(ParseError e);

// Serialized size without padding.
std::size_t unpadded_quote_size(const Quote& q);

// Wire layout (all integers little-endian):
//   u16 version | u16 key type | 16 qe_vendor_id
//   32 mrenclave | 32 mrsigner | u16 isv_svn | u8 tcb_status | 32 report_data
//   32 block_hash | u64 height | 32 state_root | 32 l1_origin | u64 timestamp | u64 nonce
//   u32 len + prover_pubkey
//   u64 pck_serial | 6 fmspc
//   u32 len + signature
//   u32 len + zero padding up to target_size
Expected<Bytes, SerializeError> serialize_quote(const Quote& q, std::size_t target_size = kDefaultQuoteSize);

// Total over arbitrary input: never reads out of bounds, never throws.
Expected<Quote, ParseError> parse_quote(ByteView bytes);

// True iff the signature verifies under signer and report_data commits to the metadata.
bool verify_quote_signature(const Quote& q, const PublicKey& signer);

// ---------------------------------------------------------------------------
// Collateral

struct PckCert {
    std::uint64_t serial{0};
    Fmspc platform_id{};
    PublicKey subject_pubkey{};
    Digest issuer_id{};
    std::uint64_t not_before{0};
    std::uint64_t not_after{0};
    Signature signature{};

    bool operator==(const PckCert&) const = default;
};

struct Crl {
    Digest issuer_id{};
    std::set<std::uint64_t> revoked_serials;
    std::uint64_t issued_at{0};
    Signature signature{};

    bool operator==(const Crl&) const = default;
};

struct TcbInfo {
    Fmspc fmspc{};
    TcbStatus status{TcbStatus::kUpToDate};
    std::uint64_t next_update{0};
    Signature signature{};

    bool operator==(const TcbInfo&) const = default;
};

struct QeIdentity {
    Digest mrsigner{};
    std::uint16_t min_isv_svn{0};

    bool operator==(const QeIdentity&) const = default;
};

struct CollateralBundle {
    std::optional<PckCert> pck_cert;
    Crl crl;
    TcbInfo tcb_info;
    QeIdentity qe_identity;

    [[nodiscard]] bool pck_revoked() const {
        return pck_cert && crl.revoked_serials.contains(pck_cert->serial);
    }

    bool operator==(const CollateralBundle&) const = default;
};

// Digests the issuer signs for each collateral item.
Digest pck_cert_digest(const PckCert& cert);
Digest crl_digest(const Crl& crl);
Digest tcb_info_digest(const TcbInfo& tcb);

Digest issuer_id_of(const PublicKey& root);

// ---------------------------------------------------------------------------
// Policy

struct PolicyView {
    Digest expected_mrenclave{};
    Digest expected_mrsigner{};
    std::uint16_t min_isv_svn{0};
    std::set<TcbStatus> accepted_tcb_statuses{TcbStatus::kUpToDate};
    std::uint64_t freshness_drift_s{60};
    std::uint64_t validity_window_blocks{1200};

    [[nodiscard]] bool valid() const { return accepted_tcb_statuses.contains(TcbStatus::kUpToDate); }

    bool operator==(const PolicyView&) const = default;
};

}  // namespace attseq
