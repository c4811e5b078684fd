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

#include <attseq/verifier.hpp>

#include <array>

namespace attseq {

namespace {

    constexpr std::array<std::pair<RejectReason, std::string_view>, 11> kReasonNames{{
        {RejectReason::kParseError, "ParseError"},
        {RejectReason::kUnknownVersion, "UnknownVersion"},
        {RejectReason::kBadSignature, "BadSignature"},
        {RejectReason::kRevokedPck, "RevokedPck"},
        {RejectReason::kTcbNotAccepted, "TcbNotAccepted"},
        {RejectReason::kMeasurementMismatch, "MeasurementMismatch"},
        {RejectReason::kMetadataMismatch, "MetadataMismatch"},
        {RejectReason::kStaleTimestamp, "StaleTimestamp"},
        {RejectReason::kNonceReplayed, "NonceReplayed"},
        {RejectReason::kCollateralMissing, "CollateralMissing"},
        {RejectReason::kCollateralInvalid, "CollateralInvalid"},
    }};

    std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

}  // namespace

std::string_view to_string(RejectReason r) {
    for (const auto& [reason, name] : kReasonNames) {
        if (reason == r) return name;
    }
    return "unknown";
}

std::optional<RejectReason> reject_reason_from_string(std::string_view s) {
    for (const auto& [reason, name] : kReasonNames) {
        if (name == s) return reason;
    }
    return std::nullopt;
}

std::optional<RejectReason> verify_collateral(const Quote& q, const VerificationInputs& in) {
    if (!in.pck_cert || !in.crl || !in.tcb_info) {
        return RejectReason::kCollateralMissing;
    }
    const PckCert& cert = *in.pck_cert;
    const Digest root_id = issuer_id_of(in.trust_anchor);
    if (cert.serial != q.collateral_ref.pck_serial || cert.platform_id != q.collateral_ref.fmspc) {
        return RejectReason::kCollateralMissing;
    }
    if (cert.issuer_id != root_id || in.crl->issuer_id != root_id) {
        return RejectReason::kCollateralInvalid;
    }
    if (!verify_signature(in.trust_anchor, pck_cert_digest(cert), cert.signature) ||
        !verify_signature(in.trust_anchor, crl_digest(*in.crl), in.crl->signature) ||
        !verify_signature(in.trust_anchor, tcb_info_digest(*in.tcb_info), in.tcb_info->signature)) {
        return RejectReason::kCollateralInvalid;
    }
    if (in.crl->issued_at > in.now_s) {
        return RejectReason::kCollateralInvalid;
    }
    if (in.crl->revoked_serials.contains(cert.serial)) {
        return RejectReason::kRevokedPck;
    }
    if (in.now_s < cert.not_before || in.now_s > cert.not_after) {
        return RejectReason::kCollateralInvalid;
    }
    return std::nullopt;
}

Expected<Quote, RejectReason> verify_quote(ByteView quote_bytes, const VerificationInputs& in) {
    if (quote_bytes.size() < kMinQuoteSize || quote_bytes.size() > kMaxQuoteSize) {
        return Unexpected{RejectReason::kParseError};
    }
    auto parsed = parse_quote(quote_bytes);
    if (!parsed) {
        return Unexpected{parsed.error() == ParseError::kUnknownVersion ? RejectReason::kUnknownVersion
                                                                        : RejectReason::kParseError};
    }
    const Quote& q = *parsed;
    if (!in.routed_versions.contains(q.header.version)) {
        return Unexpected{RejectReason::kUnknownVersion};
    }

    if (auto bad = verify_collateral(q, in)) {
        return Unexpected{*bad};
    }
    if (!verify_quote_signature(q, in.pck_cert->subject_pubkey)) {
        return Unexpected{RejectReason::kBadSignature};
    }
    if (in.tcb_info->fmspc != q.collateral_ref.fmspc ||
        !in.policy.accepted_tcb_statuses.contains(in.tcb_info->status) ||
        !in.policy.accepted_tcb_statuses.contains(q.body.tcb_status)) {
        return Unexpected{RejectReason::kTcbNotAccepted};
    }
    if (q.body.mrenclave != in.policy.expected_mrenclave || q.body.mrsigner != in.policy.expected_mrsigner ||
        q.body.isv_svn < in.policy.min_isv_svn) {
        return Unexpected{RejectReason::kMeasurementMismatch};
    }
    if (in.last_nonce && q.metadata.nonce <= *in.last_nonce) {
        return Unexpected{RejectReason::kNonceReplayed};
    }
    if (abs_diff(q.metadata.timestamp, in.now_s) > in.policy.freshness_drift_s) {
        return Unexpected{RejectReason::kStaleTimestamp};
    }

    const auto& m = q.metadata;
    if (in.claimed_sequencer && *in.claimed_sequencer != address_of(m.prover_pubkey)) {
        return Unexpected{RejectReason::kMetadataMismatch};
    }
    if (in.l1_origin_known && !in.l1_origin_known(m.l1_origin)) {
        return Unexpected{RejectReason::kMetadataMismatch};
    }
    if (in.expected_height && m.block_height != *in.expected_height) {
        return Unexpected{RejectReason::kMetadataMismatch};
    }
    if (in.proposal) {
        const auto& p = *in.proposal;
        if (p.height != m.block_height || p.block_hash != m.block_hash || p.state_root != m.state_root) {
            return Unexpected{RejectReason::kMetadataMismatch};
        }
        if (in.expected_parent && p.parent_hash != *in.expected_parent) {
            return Unexpected{RejectReason::kMetadataMismatch};
        }
    }
    return q;
}

}  // namespace attseq
