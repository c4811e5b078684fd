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
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include <attseq/attestation.hpp>
#include <attseq/crypto.hpp>
#include <attseq/expected.hpp>

namespace attseq {

// Verification policy as stored on disk: the on-chain policy plus the PCS root the
// governance layer trusts and the quote versions it routes.
struct PolicyFile {
    PolicyView policy;
    PublicKey trust_anchor{};
    std::set<QuoteVersion> routed_versions{QuoteVersion::kV3, QuoteVersion::kV4};
    std::optional<std::uint64_t> now_s;  // evaluation time; fixtures pin it

    bool operator==(const PolicyFile&) const = default;
};

nlohmann::json to_json(const PolicyFile& p);
Expected<PolicyFile, std::string> policy_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CollateralBundle& c);
Expected<CollateralBundle, std::string> collateral_from_json(const nlohmann::json& j);

}  // namespace attseq
