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

#include <attseq/fixtures.hpp>

#include <attseq/enclave.hpp>
#include <attseq/pcs.hpp>

namespace attseq {

Expected<FixtureSet, std::string> build_fixture_set() {
    Pcs pcs{kFixturePcsSeed};
    auto booted = Enclave::measure_and_boot(view_of(kFixtureImage));
    if (!booted) return Unexpected{std::string{to_string(booted.error())}};
    Enclave enclave = std::move(*booted);
    auto serial = enclave.provision(pcs, kFixtureTime);
    if (!serial) return Unexpected{std::string{to_string(serial.error())}};

    FixtureSet set;
    auto make = [&](const std::string& name, TamperMode mode, std::size_t size) -> std::optional<std::string> {
        SequencerMetadata m;
        m.block_hash = sha256(std::string_view{"fixture-l2-block-1"});
        m.block_height = 1;
        m.state_root = sha256(std::string_view{"fixture-state-root-1"});
        m.l1_origin = sha256(std::string_view{"l1-genesis"});
        m.nonce = enclave.reserve_nonce();
        m.prover_pubkey = enclave.prover_pubkey();
        enclave.set_tamper_mode(mode);
        auto q = enclave.generate_quote(m, kFixtureTime);
        enclave.set_tamper_mode(TamperMode::kNone);
        if (!q) return std::string{to_string(q.error())};
        auto bytes = serialize_quote(*q, size);
        if (!bytes) return std::string{to_string(bytes.error())};
        if (name == "honest_v4") set.honest_report_data = q->body.report_data;
        set.quotes.emplace_back(name, std::move(*bytes));
        return std::nullopt;
    };
    for (const auto& [name, mode, size] : {std::tuple{"honest_v4", TamperMode::kNone, kDefaultQuoteSize},
                                           std::tuple{"honest_v4_min", TamperMode::kNone, kMinQuoteSize},
                                           std::tuple{"honest_v4_max", TamperMode::kNone, kMaxQuoteSize},
                                           std::tuple{"forged_signature", TamperMode::kForgeSignature, kDefaultQuoteSize},
                                           std::tuple{"wrong_measurement", TamperMode::kWrongMeasurement, kDefaultQuoteSize},
                                           std::tuple{"stale_timestamp", TamperMode::kStaleTimestamp, kDefaultQuoteSize}}) {
        if (auto e = make(name, mode, size)) return Unexpected{*e};
    }
    const Bytes& honest = set.quotes.front().second;
    set.quotes.emplace_back("truncated", Bytes(honest.begin(), honest.begin() + 200));

    auto valid = pcs.get_collateral(enclave.fmspc());
    if (!valid) return Unexpected{std::string{to_string(valid.error())}};
    set.valid_collateral = *valid;
    if (auto r = pcs.revoke(*serial, kFixtureTime + 1); !r) return Unexpected{std::string{to_string(r.error())}};
    set.revoked_collateral = *pcs.get_collateral(enclave.fmspc());

    set.policy.policy.expected_mrenclave = enclave.mrenclave();
    set.policy.policy.expected_mrsigner = enclave.mrsigner();
    set.policy.policy.min_isv_svn = enclave.isv_svn();
    set.policy.trust_anchor = pcs.root_public_key();
    set.policy.now_s = kFixtureTime + 30;
    return set;
}

}  // namespace attseq
