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
#include <map>
#include <string_view>

#include <attseq/attestation.hpp>
#include <attseq/crypto.hpp>
#include <attseq/expected.hpp>

namespace attseq {

enum class PcsError {
    kOutage,
    kUnknownSerial,
    kUnknownFmspc,
};

std::string_view to_string(PcsError e);

inline constexpr std::uint64_t kDefaultCertLifetimeS{30ULL * 86'400};

// Simulated provisioning certification service: the single root of trust for PCK
// certificates, the CRL, TCB info and QE identity.
class Pcs {
  public:
    explicit Pcs(std::uint64_t seed, std::uint64_t cert_lifetime_s = kDefaultCertLifetimeS);

    Expected<PckCert, PcsError> issue_pck(const Fmspc& platform, const PublicKey& subject, std::uint64_t now);

    // Idempotent for an already revoked serial; issued_at is bumped either way.
    Expected<Crl, PcsError> revoke(std::uint64_t serial, std::uint64_t now);

    // Creates the entry when the fmspc was never seen.
    TcbInfo set_tcb_status(const Fmspc& fmspc, TcbStatus status, std::uint64_t now);

    // Snapshot for one platform; pck_cert is the most recently issued cert for it, if any.
    [[nodiscard]] Expected<CollateralBundle, PcsError> get_collateral(const Fmspc& fmspc) const;

    void set_outage(bool outage) noexcept { outage_ = outage; }
    [[nodiscard]] bool outage() const noexcept { return outage_; }

    void set_qe_identity(const QeIdentity& id) { qe_identity_ = id; }

    [[nodiscard]] const PublicKey& root_public_key() const noexcept { return root_.public_key(); }
    [[nodiscard]] Digest root_id() const { return issuer_id_of(root_.public_key()); }
    [[nodiscard]] const std::map<std::uint64_t, PckCert>& issued_certs() const noexcept { return issued_; }
    [[nodiscard]] const Crl& crl() const noexcept { return crl_; }
    [[nodiscard]] std::uint64_t cert_lifetime_s() const noexcept { return cert_lifetime_s_; }

  private:
    void resign_crl();

    SigningKey root_;
    std::uint64_t cert_lifetime_s_;
    std::uint64_t next_serial_{1001};
    std::map<std::uint64_t, PckCert> issued_;
    Crl crl_;
    std::map<Fmspc, TcbInfo> tcb_by_fmspc_;
    QeIdentity qe_identity_;
    bool outage_{false};
};

}  // namespace attseq
