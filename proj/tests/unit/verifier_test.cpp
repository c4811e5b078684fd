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

#include <catch_amalgamated.hpp>

#include <attseq/verifier.hpp>

#include "world.hpp"

namespace attseq {

namespace {

    constexpr std::uint64_t kNow{1'700'000'000};

    struct Setup {
        Pcs pcs{3};
        Enclave enclave = test::boot();
        VerificationInputs in;

        Setup() {
            (void)enclave.provision(pcs, kNow);
            auto c = *pcs.get_collateral(enclave.fmspc());
            in.trust_anchor = pcs.root_public_key();
            in.policy.expected_mrenclave = enclave.mrenclave();
            in.policy.expected_mrsigner = enclave.mrsigner();
            in.policy.min_isv_svn = enclave.isv_svn();
            in.pck_cert = c.pck_cert;
            in.crl = c.crl;
            in.tcb_info = c.tcb_info;
            in.now_s = kNow;
        }

        SequencerMetadata meta(std::uint64_t height = 5) {
            SequencerMetadata m;
            m.block_height = height;
            m.block_hash = sha256(std::string_view{"h"});
            m.state_root = sha256(std::string_view{"s"});
            m.l1_origin = sha256(std::string_view{"o"});
            m.nonce = enclave.reserve_nonce();
            return m;
        }

        Bytes quote(TamperMode mode = TamperMode::kNone, std::uint64_t at = kNow) {
            enclave.set_tamper_mode(mode);
            auto q = enclave.generate_quote(meta(), at);
            enclave.set_tamper_mode(TamperMode::kNone);
            return *serialize_quote(*q);
        }
    };

}  // namespace

TEST_CASE("honest quote verifies", "[verifier]") {
    Setup s;
    auto r = verify_quote(s.quote(), s.in);
    REQUIRE(r);
    CHECK(r->metadata.block_height == 5);
}

TEST_CASE("each defect maps to its reason", "[verifier]") {
    Setup s;
    CHECK(verify_quote(s.quote(TamperMode::kForgeSignature), s.in).error() == RejectReason::kBadSignature);
    CHECK(verify_quote(s.quote(TamperMode::kWrongMeasurement), s.in).error() == RejectReason::kMeasurementMismatch);
    CHECK(verify_quote(s.quote(TamperMode::kStaleTimestamp), s.in).error() == RejectReason::kStaleTimestamp);

    SECTION("size bounds and garbage") {
        Bytes small(100, 0);
        CHECK(verify_quote(small, s.in).error() == RejectReason::kParseError);
        Bytes junk(600, 0);
        junk[0] = 9;
        CHECK(verify_quote(junk, s.in).error() == RejectReason::kUnknownVersion);
    }
    SECTION("unrouted version") {
        s.in.routed_versions = {QuoteVersion::kV3};
        CHECK(verify_quote(s.quote(), s.in).error() == RejectReason::kUnknownVersion);
    }
    SECTION("revoked PCK") {
        s.in.crl = *s.pcs.revoke(*s.enclave.pck_serial(), kNow);
        CHECK(verify_quote(s.quote(), s.in).error() == RejectReason::kRevokedPck);
    }
    SECTION("missing collateral") {
        s.in.pck_cert.reset();
        CHECK(verify_quote(s.quote(), s.in).error() == RejectReason::kCollateralMissing);
    }
    SECTION("collateral signed by another root") {
        s.in.trust_anchor = Pcs{4}.root_public_key();
        CHECK(verify_quote(s.quote(), s.in).error() == RejectReason::kCollateralInvalid);
    }
    SECTION("CRL from the future") {
        s.in.crl->issued_at = kNow + 10;
        CHECK(verify_quote(s.quote(), s.in).error() == RejectReason::kCollateralInvalid);
    }
    SECTION("TCB out of date") {
        s.in.tcb_info = s.pcs.set_tcb_status(s.enclave.fmspc(), TcbStatus::kOutOfDate, kNow);
        CHECK(verify_quote(s.quote(), s.in).error() == RejectReason::kTcbNotAccepted);
        s.in.policy.accepted_tcb_statuses.insert(TcbStatus::kOutOfDate);
        CHECK(verify_quote(s.quote(), s.in));
    }
    SECTION("isv_svn below policy") {
        s.in.policy.min_isv_svn = 2;
        CHECK(verify_quote(s.quote(), s.in).error() == RejectReason::kMeasurementMismatch);
    }
    SECTION("nonce not above last") {
        auto bytes = s.quote();
        s.in.last_nonce = parse_quote(bytes)->metadata.nonce;
        CHECK(verify_quote(bytes, s.in).error() == RejectReason::kNonceReplayed);
    }
}

TEST_CASE("freshness window is inclusive", "[verifier]") {
    Setup s;
    CHECK(verify_quote(s.quote(TamperMode::kNone, kNow - 60), s.in));
    CHECK(verify_quote(s.quote(TamperMode::kNone, kNow + 60), s.in));
    CHECK(verify_quote(s.quote(TamperMode::kNone, kNow - 61), s.in).error() == RejectReason::kStaleTimestamp);
}

TEST_CASE("metadata expectations", "[verifier]") {
    Setup s;
    const Bytes bytes = s.quote();
    const Quote q = *parse_quote(bytes);
    const BlockProposal match{q.metadata.block_height, sha256(std::string_view{"p"}), q.metadata.block_hash,
                              q.metadata.state_root};

    s.in.claimed_sequencer = s.enclave.address();
    s.in.expected_height = 5;
    s.in.proposal = match;
    s.in.expected_parent = match.parent_hash;
    s.in.l1_origin_known = [&](const Digest& d) { return d == q.metadata.l1_origin; };
    CHECK(verify_quote(bytes, s.in));

    SECTION("other claimed sequencer") {
        s.in.claimed_sequencer = address_of_name("someone");
        CHECK(verify_quote(bytes, s.in).error() == RejectReason::kMetadataMismatch);
    }
    SECTION("wrong height") {
        s.in.expected_height = 6;
        CHECK(verify_quote(bytes, s.in).error() == RejectReason::kMetadataMismatch);
    }
    SECTION("state root differs from proposal") {
        s.in.proposal->state_root[0] ^= 1;
        CHECK(verify_quote(bytes, s.in).error() == RejectReason::kMetadataMismatch);
    }
    SECTION("proposal does not extend published chain") {
        s.in.expected_parent = sha256(std::string_view{"elsewhere"});
        CHECK(verify_quote(bytes, s.in).error() == RejectReason::kMetadataMismatch);
    }
    SECTION("unknown l1 origin") {
        s.in.l1_origin_known = [](const Digest&) { return false; };
        CHECK(verify_quote(bytes, s.in).error() == RejectReason::kMetadataMismatch);
    }
}

TEST_CASE("replayed quote is caught by nonce before freshness", "[verifier]") {
    Setup s;
    const Bytes bytes = s.quote();
    s.in.last_nonce = parse_quote(bytes)->metadata.nonce;
    s.in.now_s = kNow + 10'000;
    CHECK(verify_quote(bytes, s.in).error() == RejectReason::kNonceReplayed);
}

TEST_CASE("reject reason names round trip", "[verifier]") {
    for (int i = 0; i <= static_cast<int>(RejectReason::kCollateralInvalid); ++i) {
        const auto r = static_cast<RejectReason>(i);
        CHECK(reject_reason_from_string(to_string(r)) == r);
    }
    CHECK(to_string(RejectReason::kRevokedPck) == "RevokedPck");
    CHECK_FALSE(reject_reason_from_string("Nope"));
}

}  // namespace attseq
