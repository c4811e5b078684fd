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

#include <attseq/attestation.hpp>

namespace attseq {

std::string_view to_string(QuoteVersion v) {
    switch (v) {
        case QuoteVersion::kV3:
            return "V3";
        case QuoteVersion::kV4:
            return "V4";
    }
    return "unknown";
}

std::string_view to_string(TcbStatus s) {
    switch (s) {
        case TcbStatus::kUpToDate:
            return "UpToDate";
        case TcbStatus::kOutOfDate:
            return "OutOfDate";
        case TcbStatus::kRevoked:
            return "Revoked";
        case TcbStatus::kConfigurationNeeded:
            return "ConfigurationNeeded";
    }
    return "unknown";
}

std::optional<QuoteVersion> quote_version_from_string(std::string_view s) {
    if (s == "V3") return QuoteVersion::kV3;
    if (s == "V4") return QuoteVersion::kV4;
    return std::nullopt;
}

std::optional<TcbStatus> tcb_status_from_string(std::string_view s) {
    for (auto st : {TcbStatus::kUpToDate, TcbStatus::kOutOfDate, TcbStatus::kRevoked,
                    TcbStatus::kConfigurationNeeded}) {
        if (to_string(st) == s) return st;
    }
    return std::nullopt;
}

std::string_view to_string(SerializeError e) {
    switch (e) {
        case SerializeError::kProverKeyTooLarge:
            return "ProverKeyTooLarge";
        case SerializeError::kTargetSizeOutOfRange:
            return "TargetSizeOutOfRange";
        case SerializeError::kExceedsTargetSize:
            return "ExceedsTargetSize";
    }
    return "unknown";
}

std::string_view to_string(ParseError e) {
    switch (e) {
        case ParseError::kTruncated:
            return "Truncated";
        case ParseError::kUnknownVersion:
            return "UnknownVersion";
        case ParseError::kBadLengthPrefix:
            return "BadLengthPrefix";
        case ParseError::kMalformedField:
            return "MalformedField";
    }
    return "unknown";
}

namespace {

    void put_u64_field(ByteWriter& w, std::uint64_t v) {
        ByteWriter tmp;
        tmp.u64(v);
        w.prefixed(tmp.bytes());
    }

    void write_header(ByteWriter& w, const QuoteHeader& h) {
        w.u16(static_cast<std::uint16_t>(h.version));
        w.u16(static_cast<std::uint16_t>(h.attestation_key_type));
        w.raw(h.qe_vendor_id);
    }

    void write_body(ByteWriter& w, const ReportBody& b) {
        w.raw(b.mrenclave);
        w.raw(b.mrsigner);
        w.u16(b.isv_svn);
        w.u8(static_cast<std::uint8_t>(b.tcb_status));
        w.raw(b.report_data);
    }

    void write_metadata(ByteWriter& w, const SequencerMetadata& m) {
        w.raw(m.block_hash);
        w.u64(m.block_height);
        w.raw(m.state_root);
        w.raw(m.l1_origin);
        w.u64(m.timestamp);
        w.u64(m.nonce);
        w.prefixed(m.prover_pubkey);
    }

    // Fixed bytes before the prover key length prefix.
    constexpr std::size_t kFixedPrefix = 20 + 99 + 120;
    // Fixed bytes after the prover key: collateral ref, signature prefix, padding prefix.
    constexpr std::size_t kFixedSuffix = 14 + 4 + 64 + 4;

}  // namespace

Digest compute_report_data(const SequencerMetadata& meta) {
    ByteWriter w;
    w.prefixed(meta.block_hash);
    put_u64_field(w, meta.block_height);
    w.prefixed(meta.state_root);
    w.prefixed(meta.l1_origin);
    put_u64_field(w, meta.timestamp);
    put_u64_field(w, meta.nonce);
    w.prefixed(meta.prover_pubkey);
    return sha256(w.bytes());
}

Digest quote_signing_digest(const Quote& q) {
    ByteWriter w;
    write_header(w, q.header);
    write_body(w, q.body);
    write_metadata(w, q.metadata);
    return sha256(w.bytes());
}

std::size_t unpadded_quote_size(const Quote& q) {
    return kFixedPrefix + 4 + q.metadata.prover_pubkey.size() + kFixedSuffix;
}

Expected<Bytes, SerializeError> serialize_quote(const Quote& q, std::size_t target_size) {
    if (q.metadata.prover_pubkey.size() > kMaxProverKeySize) {
        return Unexpected{SerializeError::kProverKeyTooLarge};
    }
    if (target_size < kMinQuoteSize || target_size > kMaxQuoteSize) {
        return Unexpected{SerializeError::kTargetSizeOutOfRange};
    }
    const std::size_t natural = unpadded_quote_size(q);
    if (natural > target_size) {
        return Unexpected{SerializeError::kExceedsTargetSize};
    }

    ByteWriter w;
    write_header(w, q.header);
    write_body(w, q.body);
    write_metadata(w, q.metadata);
    w.u64(q.collateral_ref.pck_serial);
    w.raw(q.collateral_ref.fmspc);
    w.prefixed(q.signature);
    const std::size_t padding = target_size - natural;
    w.u32(static_cast<std::uint32_t>(padding));
    w.zeros(padding);
    return std::move(w).take();
}

Expected<Quote, ParseError> parse_quote(ByteView bytes) {
    ByteReader r{bytes};
    Quote q;

    std::uint16_t version{0};
    if (!r.u16(version)) return Unexpected{ParseError::kTruncated};
    if (version != static_cast<std::uint16_t>(QuoteVersion::kV3) &&
        version != static_cast<std::uint16_t>(QuoteVersion::kV4)) {
        return Unexpected{ParseError::kUnknownVersion};
    }
    q.header.version = static_cast<QuoteVersion>(version);

    std::uint16_t key_type{0};
    if (!r.u16(key_type)) return Unexpected{ParseError::kTruncated};
    if (key_type != static_cast<std::uint16_t>(AttestationKeyType::kEcdsaP256Sim)) {
        return Unexpected{ParseError::kMalformedField};
    }
    q.header.attestation_key_type = AttestationKeyType::kEcdsaP256Sim;
    if (!r.raw(q.header.qe_vendor_id)) return Unexpected{ParseError::kTruncated};

    std::uint8_t tcb{0};
    if (!r.raw(q.body.mrenclave) || !r.raw(q.body.mrsigner) || !r.u16(q.body.isv_svn) || !r.u8(tcb)) {
        return Unexpected{ParseError::kTruncated};
    }
    if (tcb > static_cast<std::uint8_t>(TcbStatus::kConfigurationNeeded)) {
        return Unexpected{ParseError::kMalformedField};
    }
    q.body.tcb_status = static_cast<TcbStatus>(tcb);
    if (!r.raw(q.body.report_data)) return Unexpected{ParseError::kTruncated};

    auto& m = q.metadata;
    if (!r.raw(m.block_hash) || !r.u64(m.block_height) || !r.raw(m.state_root) || !r.raw(m.l1_origin) ||
        !r.u64(m.timestamp) || !r.u64(m.nonce)) {
        return Unexpected{ParseError::kTruncated};
    }
    std::uint32_t key_len{0};
    if (!r.u32(key_len)) return Unexpected{ParseError::kTruncated};
    if (key_len > kMaxProverKeySize) return Unexpected{ParseError::kBadLengthPrefix};
    if (r.remaining() < key_len) return Unexpected{ParseError::kTruncated};
    m.prover_pubkey.resize(key_len);
    r.raw(std::span<std::uint8_t>{m.prover_pubkey});

    if (!r.u64(q.collateral_ref.pck_serial) || !r.raw(q.collateral_ref.fmspc)) {
        return Unexpected{ParseError::kTruncated};
    }

    std::uint32_t sig_len{0};
    if (!r.u32(sig_len)) return Unexpected{ParseError::kTruncated};
    if (sig_len != q.signature.size()) return Unexpected{ParseError::kBadLengthPrefix};
    if (!r.raw(q.signature)) return Unexpected{ParseError::kTruncated};

    std::uint32_t pad_len{0};
    if (!r.u32(pad_len)) return Unexpected{ParseError::kTruncated};
    if (r.remaining() < pad_len) return Unexpected{ParseError::kTruncated};
    if (r.remaining() > pad_len) return Unexpected{ParseError::kBadLengthPrefix};
    return q;
}

bool verify_quote_signature(const Quote& q, const PublicKey& signer) {
    if (q.body.report_data != compute_report_data(q.metadata)) {
        return false;
    }
    return verify_signature(signer, quote_signing_digest(q), q.signature);
}

Digest pck_cert_digest(const PckCert& cert) {
    ByteWriter w;
    w.raw(ByteView{reinterpret_cast<const std::uint8_t*>("pck"), 3});
    w.u64(cert.serial);
    w.raw(cert.platform_id);
    w.raw(cert.subject_pubkey);
    w.raw(cert.issuer_id);
    w.u64(cert.not_before);
    w.u64(cert.not_after);
    return sha256(w.bytes());
}

Digest crl_digest(const Crl& crl) {
    ByteWriter w;
    w.raw(ByteView{reinterpret_cast<const std::uint8_t*>("crl"), 3});
    w.raw(crl.issuer_id);
    w.u32(static_cast<std::uint32_t>(crl.revoked_serials.size()));
    for (auto s : crl.revoked_serials) w.u64(s);
    w.u64(crl.issued_at);
    return sha256(w.bytes());
}

Digest tcb_info_digest(const TcbInfo& tcb) {
    ByteWriter w;
    w.raw(ByteView{reinterpret_cast<const std::uint8_t*>("tcb"), 3});
    w.raw(tcb.fmspc);
    w.u8(static_cast<std::uint8_t>(tcb.status));
    w.u64(tcb.next_update);
    return sha256(w.bytes());
}

Digest issuer_id_of(const PublicKey& root) { return sha256(ByteView{root.data(), root.size()}); }

}  // namespace attseq
