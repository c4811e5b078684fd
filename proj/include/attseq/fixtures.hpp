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

#include <string>
#include <utility>
#include <vector>

#include <attseq/attestation.hpp>
#include <attseq/expected.hpp>
#include <attseq/json_io.hpp>

namespace attseq {

inline constexpr std::uint64_t kFixtureTime{1'700'000'000};
inline constexpr std::uint64_t kFixturePcsSeed{2026};
inline constexpr std::string_view kFixtureImage{"op-node+op-geth sequencer build 1"};

// Golden quotes, collateral and policy shipped under fixtures/.
struct FixtureSet {
    std::vector<std::pair<std::string, Bytes>> quotes;
    Digest honest_report_data{};
    CollateralBundle valid_collateral;
    CollateralBundle revoked_collateral;
    PolicyFile policy;
};

Expected<FixtureSet, std::string> build_fixture_set();

}  // namespace attseq
