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

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <attseq/expected.hpp>

namespace attseq {

enum class GasError {
    kSizeOutOfRange,
};

// Calibrated gas costs of the attestation contract suite.
//
// verify_gas is exact at the calibration sizes and linearly interpolated (floor) between
// neighbours. The calibration totals include the quote-verifier registration, so the
// 4 KB point (12,690,007) exceeds the two-transaction split 8,014,059 + 4,544,335
// = 12,558,394 by 131,613 gas. split_verify_gas reproduces the split by subtracting the
// constant difference at 4 KB from the whole curve.
struct GasModel {
    struct ContractCost {
        std::string name;
        std::uint64_t gas;
        double fee_gwei;  // informational only
        std::string description;
    };

    struct CalibrationPoint {
        std::size_t quote_size;
        std::uint64_t gas;
        double fee_gwei;  // informational only
    };

    std::vector<ContractCost> deploy_costs;
    std::uint64_t set_verifier_cost{0};
    std::uint64_t verify_and_attest_4kb{0};
    std::vector<CalibrationPoint> verify_cost_points;

    static GasModel calibrated();

    [[nodiscard]] std::uint64_t deploy_total() const;
    [[nodiscard]] Expected<std::uint64_t, GasError> verify_gas(std::size_t quote_size) const;
    [[nodiscard]] Expected<std::uint64_t, GasError> split_verify_gas(std::size_t quote_size) const;

    [[nodiscard]] std::size_t min_size() const { return verify_cost_points.front().quote_size; }
    [[nodiscard]] std::size_t max_size() const { return verify_cost_points.back().quote_size; }
};

inline constexpr std::uint64_t kTxBaseGas{21'000};
inline constexpr std::uint64_t kCalldataByteGas{16};

// Ethereum intrinsic cost of a plain transaction carrying n bytes of calldata.
constexpr std::uint64_t intrinsic_gas(std::size_t calldata_bytes) {
    return kTxBaseGas + kCalldataByteGas * static_cast<std::uint64_t>(calldata_bytes);
}

}  // namespace attseq
