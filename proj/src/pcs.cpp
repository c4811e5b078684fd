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

#include <attseq/pcs.hpp>

namespace attseq {

std::string_view to_string(PcsError e) {
    switch (e) {
        case PcsError::kOutage:
            return "Outage";
        case PcsError::kUnknownSerial:
            return "UnknownSerial";
        case PcsError::kUnknownFmspc:
            return "UnknownFmspc";
    }
    return "unknown";
}

Pcs::Pcs(std::uint64_t seed, std::uint64_t cert_lifetime_s)
    : root_{SigningKey::from_seed(derive_seed("pcs-root", seed))}, cert_lifetime_s_{cert_lifetime_s} {
    crl_.issuer_id = root_id();
    qe_identity_.mrsigner = sha256(std::string_view{"quoting-enclave"});
    resign_crl();
}

void Pcs::resign_crl() { crl_.signature = root_.sign(crl_digest(crl_)); }

Expected<PckCert, PcsError> Pcs::issue_pck(const Fmspc& platform, const PublicKey& subject, std::uint64_t now) {
    if (outage_) {
        return Unexpected{PcsError::kOutage};
    }
    PckCert cert;
    cert.serial = next_serial_++;
    cert.platform_id = platform;
    cert.subject_pubkey = subject;
    cert.issuer_id = root_id();
    cert.not_before = now;
    cert.not_after = now + cert_lifetime_s_;
    cert.signature = root_.sign(pck_cert_digest(cert));
    issued_.emplace(cert.serial, cert);
    if (!tcb_by_fmspc_.contains(platform)) {
        set_tcb_status(platform, TcbStatus::kUpToDate, now);
    }
    return cert;
}

Expected<Crl, PcsError> Pcs::revoke(std::uint64_t serial, std::uint64_t now) {
    if (!issued_.contains(serial)) {
        return Unexpected{PcsError::kUnknownSerial};
    }
    crl_.revoked_serials.insert(serial);
    crl_.issued_at = std::max(crl_.issued_at, now);
    resign_crl();
    return crl_;
}

TcbInfo Pcs::set_tcb_status(const Fmspc& fmspc, TcbStatus status, std::uint64_t now) {
    TcbInfo& info = tcb_by_fmspc_[fmspc];
    info.fmspc = fmspc;
    info.status = status;
    info.next_update = now + cert_lifetime_s_;
    info.signature = root_.sign(tcb_info_digest(info));
    return info;
}

Expected<CollateralBundle, PcsError> Pcs::get_collateral(const Fmspc& fmspc) const {
    if (outage_) {
        return Unexpected{PcsError::kOutage};
    }
    CollateralBundle bundle;
    for (auto it = issued_.rbegin(); it != issued_.rend(); ++it) {
        if (it->second.platform_id == fmspc) {
            bundle.pck_cert = it->second;
            break;
        }
    }
    auto tcb = tcb_by_fmspc_.find(fmspc);
    // issue_pck always creates the TCB entry, so a missing entry means the fmspc is unknown.
    if (tcb == tcb_by_fmspc_.end()) {
        return Unexpected{PcsError::kUnknownFmspc};
    }
    bundle.crl = crl_;
    bundle.tcb_info = tcb->second;
    bundle.qe_identity = qe_identity_;
    return bundle;
}

}  // namespace attseq
