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

#include <attseq/enclave.hpp>

namespace attseq {

namespace {

    constexpr std::array<std::uint8_t, 16> kQeVendorId{0x93, 0x9a, 0x72, 0x33, 0xf7, 0x9c, 0x4c, 0xa9,
                                                       0x94, 0x0a, 0x0d, 0xb3, 0x95, 0x7f, 0x06, 0x07};

}  // namespace

std::string_view to_string(TamperMode m) {
    switch (m) {
        case TamperMode::kNone:
            return "None";
        case TamperMode::kWrongMeasurement:
            return "WrongMeasurement";
        case TamperMode::kStaleTimestamp:
            return "StaleTimestamp";
        case TamperMode::kReuseNonce:
            return "ReuseNonce";
        case TamperMode::kForgeSignature:
            return "ForgeSignature";
        case TamperMode::kCompromisedHost:
            return "CompromisedHost";
    }
    return "unknown";
}

std::string_view to_string(EnclaveError e) {
    switch (e) {
        case EnclaveError::kEmptyImage:
            return "EmptyImage";
        case EnclaveError::kPcsUnavailable:
            return "PcsUnavailable";
        case EnclaveError::kUnprovisioned:
            return "Unprovisioned";
        case EnclaveError::kNonceRegression:
            return "NonceRegression";
    }
    return "unknown";
}

Digest mrsigner_for_vendor(std::uint64_t vendor_seed) { return derive_seed("vendor-signer", vendor_seed); }

Expected<Enclave, EnclaveError> Enclave::measure_and_boot(ByteView code_image, const EnclaveConfig& cfg) {
    if (code_image.empty()) {
        return Unexpected{EnclaveError::kEmptyImage};
    }
    Enclave e;
    e.code_image_.assign(code_image.begin(), code_image.end());
    e.mrenclave_ = sha256(code_image);
    e.mrsigner_ = mrsigner_for_vendor(cfg.vendor_seed);
    e.config_ = cfg;
    ByteWriter w;
    w.raw(e.mrenclave_);
    w.u64(cfg.instance_seed);
    e.prover_key_ = SigningKey::from_seed(sha256(w.bytes()));
    return e;
}

Expected<std::uint64_t, EnclaveError> Enclave::provision(Pcs& pcs, std::uint64_t now) {
    ByteWriter w;
    w.raw(mrenclave_);
    w.u64(config_.instance_seed);
    w.u64(provision_count_ + 1);
    auto key = SigningKey::from_seed(derive_seed(to_hex(w.bytes()), 0xa77e57));
    auto cert = pcs.issue_pck(config_.fmspc, key.public_key(), now);
    if (!cert) {
        return Unexpected{EnclaveError::kPcsUnavailable};
    }
    ++provision_count_;
    attestation_key_ = key;
    pck_serial_ = cert->serial;
    return cert->serial;
}

std::optional<PublicKey> Enclave::attestation_public_key() const {
    if (!attestation_key_) return std::nullopt;
    return attestation_key_->public_key();
}

Bytes Enclave::prover_pubkey() const {
    const auto& pk = prover_key_->public_key();
    return Bytes{pk.begin(), pk.end()};
}

Expected<Quote, EnclaveError> Enclave::generate_quote(SequencerMetadata meta, std::uint64_t now) {
    if (!attestation_key_ || !pck_serial_) {
        return Unexpected{EnclaveError::kUnprovisioned};
    }
    meta.timestamp = now;
    meta.prover_pubkey = prover_pubkey();

    switch (tamper_) {
        case TamperMode::kReuseNonce:
            if (last_quoted_nonce_ > 0) {
                meta.nonce = last_quoted_nonce_;
            }
            break;
        case TamperMode::kStaleTimestamp:
            meta.timestamp = now > config_.stale_offset_s ? now - config_.stale_offset_s : 0;
            [[fallthrough]];
        default:
            if (meta.nonce <= last_quoted_nonce_) {
                return Unexpected{EnclaveError::kNonceRegression};
            }
            break;
    }

    Quote q;
    q.header.version = config_.quote_version;
    q.header.attestation_key_type = AttestationKeyType::kEcdsaP256Sim;
    q.header.qe_vendor_id = kQeVendorId;
    q.body.mrenclave = mrenclave_;
    if (tamper_ == TamperMode::kWrongMeasurement) {
        q.body.mrenclave.back() ^= 0x01;
    }
    q.body.mrsigner = mrsigner_;
    q.body.isv_svn = config_.isv_svn;
    q.body.tcb_status = TcbStatus::kUpToDate;
    q.body.report_data = compute_report_data(meta);
    q.metadata = std::move(meta);
    q.collateral_ref = CollateralRef{*pck_serial_, config_.fmspc};

    ++quotes_generated_;
    if (tamper_ == TamperMode::kForgeSignature) {
        ByteWriter w;
        w.u64(config_.instance_seed);
        w.u64(quotes_generated_);
        const Digest a = sha256(w.bytes());
        const Digest b = sha256(a);
        std::copy(a.begin(), a.end(), q.signature.begin());
        std::copy(b.begin(), b.end(), q.signature.begin() + 32);
    } else {
        q.signature = attestation_key_->sign(quote_signing_digest(q));
    }
    last_quoted_nonce_ = std::max(last_quoted_nonce_, q.metadata.nonce);
    return q;
}

Bytes Enclave::host_memory_snapshot() const {
    // Enclave pages are encrypted with a key the host never sees; model the dump as
    // a keyed digest stream over the secret material.
    ByteWriter w;
    const Digest page_key = derive_seed("epc-page-key", config_.instance_seed ^ 0x5eed);
    Digest block = page_key;
    for (int i = 0; i < 8; ++i) {
        ByteWriter step;
        step.raw(block);
        step.u64(static_cast<std::uint64_t>(i));
        block = sha256(step.bytes());
        w.raw(block);
    }
    return std::move(w).take();
}

}  // namespace attseq
