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

#include <functional>
#include <optional>
#include <set>
#include <string_view>

#include <attseq/attestation.hpp>

namespace attseq {

enum class RejectReason {
    kParseError,
    kUnknownVersion,
    kBadSignature,
    kRevokedPck,
    kTcbNotAccepted,
    kMeasurementMismatch,
    kMetadataMismatch,
    kStaleTimestamp,
    kNonceReplayed,
    kCollateralMissing,
    kCollateralInvalid,
};

std::string_view to_string(RejectReason r);
std::optional<RejectReason> reject_reason_from_string(std::string_view s);

// Header of the L2 block a quote is submitted for.
struct BlockProposal {
    std::uint64_t height{0};
    Digest parent_hash{};
    Digest block_hash{};
    Digest state_root{};

    bool operator==(const BlockProposal&) const = default;
};

// Everything the verifier needs besides the quote bytes. Optional expectations are skipped when unset.
struct VerificationInputs {
    PublicKey trust_anchor{};
    PolicyView policy;
    std::set<QuoteVersion> routed_versions{QuoteVersion::kV3, QuoteVersion::kV4};

    std::optional<PckCert> pck_cert;  // looked up by the quote's serial
    std::optional<Crl> crl;
    std::optional<TcbInfo> tcb_info;  // looked up by the quote's fmspc

    std::uint64_t now_s{0};
    std::optional<std::uint64_t> last_nonce;

    std::optional<Address> claimed_sequencer;
    std::optional<std::uint64_t> expected_height;
    std::optional<BlockProposal> proposal;
    std::optional<Digest> expected_parent;
    std::function<bool(const Digest&)> l1_origin_known;
};

// Collateral-only checks (issuer signatures, validity period, CRL membership).
std::optional<RejectReason> verify_collateral(const Quote& q, const VerificationInputs& in);

// Full pipeline in a fixed order: parse, version route, collateral, signature, TCB,
// measurement, nonce, freshness, metadata. The first failing stage decides the reason.
Expected<Quote, RejectReason> verify_quote(ByteView quote_bytes, const VerificationInputs& in);

}  // namespace attseq
