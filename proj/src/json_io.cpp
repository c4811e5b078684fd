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

#include <attseq/json_io.hpp>

#include <stdexcept>

namespace attseq {

namespace {

    template <std::size_t N>
    std::array<std::uint8_t, N> hex_field(const nlohmann::json& j, const char* key) {
        auto v = array_from_hex<N>(j.at(key).get<std::string>());
        if (!v) throw std::invalid_argument(std::string{key} + ": expected " + std::to_string(N) + " hex bytes");
        return *v;
    }

    TcbStatus tcb_field(const nlohmann::json& j) {
        auto s = tcb_status_from_string(j.get<std::string>());
        if (!s) throw std::invalid_argument("unknown TCB status '" + j.get<std::string>() + "'");
        return *s;
    }

}  // namespace

nlohmann::json to_json(const PolicyFile& p) {
    auto statuses = nlohmann::json::array();
    for (auto s : p.policy.accepted_tcb_statuses) statuses.push_back(std::string{to_string(s)});
    auto versions = nlohmann::json::array();
    for (auto v : p.routed_versions) versions.push_back(std::string{to_string(v)});
    nlohmann::json j{{"expected_mrenclave", to_hex(p.policy.expected_mrenclave)},
                     {"expected_mrsigner", to_hex(p.policy.expected_mrsigner)},
                     {"min_isv_svn", p.policy.min_isv_svn},
                     {"accepted_tcb_statuses", statuses},
                     {"freshness_drift_s", p.policy.freshness_drift_s},
                     {"validity_window_blocks", p.policy.validity_window_blocks},
                     {"trust_anchor", to_hex(p.trust_anchor)},
                     {"routed_versions", versions}};
    if (p.now_s) j["now_s"] = *p.now_s;
    return j;
}

Expected<PolicyFile, std::string> policy_from_json(const nlohmann::json& j) {
    PolicyFile p;
    try {
        p.policy.expected_mrenclave = hex_field<32>(j, "expected_mrenclave");
        p.policy.expected_mrsigner = hex_field<32>(j, "expected_mrsigner");
        p.policy.min_isv_svn = j.at("min_isv_svn").get<std::uint16_t>();
        p.policy.accepted_tcb_statuses.clear();
        for (const auto& s : j.at("accepted_tcb_statuses")) p.policy.accepted_tcb_statuses.insert(tcb_field(s));
        p.policy.freshness_drift_s = j.at("freshness_drift_s").get<std::uint64_t>();
        p.policy.validity_window_blocks = j.at("validity_window_blocks").get<std::uint64_t>();
        p.trust_anchor = hex_field<32>(j, "trust_anchor");
        if (j.contains("routed_versions")) {
            p.routed_versions.clear();
            for (const auto& v : j.at("routed_versions")) {
                auto qv = quote_version_from_string(v.get<std::string>());
                if (!qv) throw std::invalid_argument("unknown quote version '" + v.get<std::string>() + "'");
                p.routed_versions.insert(*qv);
            }
        }
        if (j.contains("now_s")) p.now_s = j.at("now_s").get<std::uint64_t>();
    } catch (const std::exception& e) {
        return Unexpected{std::string{e.what()}};
    }
    if (!p.policy.valid()) return Unexpected{std::string{"policy must accept UpToDate"}};
    return p;
}

nlohmann::json to_json(const CollateralBundle& c) {
    nlohmann::json j;
    if (c.pck_cert) {
        const auto& p = *c.pck_cert;
        j["pck_cert"] = {{"serial", p.serial},
                         {"platform_id", to_hex(p.platform_id)},
                         {"subject_pubkey", to_hex(p.subject_pubkey)},
                         {"issuer_id", to_hex(p.issuer_id)},
                         {"not_before", p.not_before},
                         {"not_after", p.not_after},
                         {"signature", to_hex(p.signature)}};
    } else {
        j["pck_cert"] = nullptr;
    }
    j["crl"] = {{"issuer_id", to_hex(c.crl.issuer_id)},
                {"revoked_serials", c.crl.revoked_serials},
                {"issued_at", c.crl.issued_at},
                {"signature", to_hex(c.crl.signature)}};
    j["tcb_info"] = {{"fmspc", to_hex(c.tcb_info.fmspc)},
                     {"status", std::string{to_string(c.tcb_info.status)}},
                     {"next_update", c.tcb_info.next_update},
                     {"signature", to_hex(c.tcb_info.signature)}};
    j["qe_identity"] = {{"mrsigner", to_hex(c.qe_identity.mrsigner)},
                        {"min_isv_svn", c.qe_identity.min_isv_svn}};
    return j;
}

Expected<CollateralBundle, std::string> collateral_from_json(const nlohmann::json& j) {
    CollateralBundle c;
    try {
        if (const auto& p = j.at("pck_cert"); !p.is_null()) {
            PckCert cert;
            cert.serial = p.at("serial").get<std::uint64_t>();
            cert.platform_id = hex_field<6>(p, "platform_id");
            cert.subject_pubkey = hex_field<32>(p, "subject_pubkey");
            cert.issuer_id = hex_field<32>(p, "issuer_id");
            cert.not_before = p.at("not_before").get<std::uint64_t>();
            cert.not_after = p.at("not_after").get<std::uint64_t>();
            cert.signature = hex_field<64>(p, "signature");
            c.pck_cert = cert;
        }
        const auto& crl = j.at("crl");
        c.crl.issuer_id = hex_field<32>(crl, "issuer_id");
        for (const auto& s : crl.at("revoked_serials")) c.crl.revoked_serials.insert(s.get<std::uint64_t>());
        c.crl.issued_at = crl.at("issued_at").get<std::uint64_t>();
        c.crl.signature = hex_field<64>(crl, "signature");
        const auto& tcb = j.at("tcb_info");
        c.tcb_info.fmspc = hex_field<6>(tcb, "fmspc");
        c.tcb_info.status = tcb_field(tcb.at("status"));
        c.tcb_info.next_update = tcb.at("next_update").get<std::uint64_t>();
        c.tcb_info.signature = hex_field<64>(tcb, "signature");
        if (j.contains("qe_identity")) {
            const auto& qe = j.at("qe_identity");
            c.qe_identity.mrsigner = hex_field<32>(qe, "mrsigner");
            c.qe_identity.min_isv_svn = qe.at("min_isv_svn").get<std::uint16_t>();
        }
    } catch (const std::exception& e) {
        return Unexpected{std::string{e.what()}};
    }
    return c;
}

}  // namespace attseq
