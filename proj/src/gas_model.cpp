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

#include <attseq/gas_model.hpp>

#include <numeric>

namespace attseq {

GasModel GasModel::calibrated() {
    GasModel m;
    m.deploy_costs = {
        {"PCCS Router", 2'352'196, 13.77, "Manages access to collaterals"},
        {"DCAP Attestation", 3'296'655, 12.21, "The entrypoint contract to submit a quote"},
        {"V3 Verifier", 3'696'655, 7.56, "Verifies SGX V3 quotes"},
        {"V4 Verifier", 4'650'134, 12.79, "Verifies SGX V4 quotes"},
        {"PCS DAO", 2'014'168, 9.77, "Manages Intel PCS certificates"},
        {"PCK DAO", 2'928'849, 16.22, "Stores PCK keys"},
        {"FMSPC TCB DAO", 2'339'367, 33.11, "Manages TCB status"},
        {"Enclave ID DAO", 1'693'126, 30.48, "Manages SGX enclave IDs"},
        {"DAO Storage", 438'565, 27.93, "Stores attestation data"},
        {"Verification", 322'250, 26.12, "Check Sequencer attestation"},
    };
    m.set_verifier_cost = 4'544'335;
    m.verify_and_attest_4kb = 8'014'059;
    m.verify_cost_points = {
        {512, 8'636'467, 14.03},    {1024, 9'136'467, 14.20},  {2048, 10'407'443, 14.15},
        {4096, 12'690'007, 15.12},  {6144, 13'820'092, 14.60}, {8192, 14'550'541, 15.50},
        {10240, 15'199'581, 17.40},
    };
    return m;
}

std::uint64_t GasModel::deploy_total() const {
    return std::accumulate(deploy_costs.begin(), deploy_costs.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const ContractCost& c) { return acc + c.gas; });
}

Expected<std::uint64_t, GasError> GasModel::verify_gas(std::size_t quote_size) const {
    if (verify_cost_points.empty() || quote_size < min_size() || quote_size > max_size()) {
        return Unexpected{GasError::kSizeOutOfRange};
    }
    for (std::size_t i = 0; i + 1 < verify_cost_points.size(); ++i) {
        const auto& lo = verify_cost_points[i];
        const auto& hi = verify_cost_points[i + 1];
        if (quote_size == lo.quote_size) {
            return lo.gas;
        }
        if (quote_size < hi.quote_size) {
            // Calibration gaps are a few million gas over a few KiB, far from u64 overflow.
            const std::uint64_t span = hi.quote_size - lo.quote_size;
            const std::uint64_t rise = hi.gas - lo.gas;
            return lo.gas + rise * (quote_size - lo.quote_size) / span;
        }
    }
    return verify_cost_points.back().gas;
}

Expected<std::uint64_t, GasError> GasModel::split_verify_gas(std::size_t quote_size) const {
    auto total = verify_gas(quote_size);
    if (!total) {
        return total;
    }
    const std::uint64_t offset = *verify_gas(4096) - verify_and_attest_4kb;
    return *total - offset;
}

}  // namespace attseq
