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

#include <random>

#include <catch_amalgamated.hpp>

#include <attseq/gas_model.hpp>

namespace attseq {

TEST_CASE("deployment costs per contract", "[gas]") {
    const auto m = GasModel::calibrated();
    REQUIRE(m.deploy_costs.size() == 10);
    CHECK(m.deploy_costs[0].name == "PCCS Router");
    CHECK(m.deploy_costs[0].gas == 2'352'196);
    CHECK(m.deploy_costs[9].name == "Verification");
    CHECK(m.deploy_costs[9].gas == 322'250);
    CHECK(m.deploy_total() == 23'731'965);
}

TEST_CASE("verification gas at calibration points", "[gas]") {
    const auto m = GasModel::calibrated();
    const std::pair<std::size_t, std::uint64_t> table[] = {
        {512, 8'636'467},    {1024, 9'136'467},   {2048, 10'407'443},  {4096, 12'690'007},
        {6144, 13'820'092},  {8192, 14'550'541},  {10240, 15'199'581},
    };
    for (auto [size, gas] : table) CHECK(*m.verify_gas(size) == gas);
}

// Values from the rational interpolation oracle, floored once.
TEST_CASE("interpolated verification gas", "[gas]") {
    const auto m = GasModel::calibrated();
    CHECK(*m.verify_gas(3072) == 11'548'725);
    CHECK(*m.verify_gas(513) == 8'637'443);
    CHECK(*m.verify_gas(700) == 8'820'060);
    CHECK(*m.verify_gas(1500) == 9'727'272);
    CHECK(*m.verify_gas(4000) == 12'583'011);
    CHECK(*m.verify_gas(5000) == 13'188'833);
    CHECK(*m.verify_gas(7000) == 14'125'396);
    CHECK(*m.verify_gas(9000) == 14'806'607);
    CHECK(*m.verify_gas(10239) == 15'199'264);
}

TEST_CASE("out of range sizes", "[gas]") {
    const auto m = GasModel::calibrated();
    CHECK(m.verify_gas(256).error() == GasError::kSizeOutOfRange);
    CHECK(m.verify_gas(511).error() == GasError::kSizeOutOfRange);
    CHECK(m.verify_gas(10241).error() == GasError::kSizeOutOfRange);
}

TEST_CASE("split accounting reproduces the two-transaction total", "[gas]") {
    const auto m = GasModel::calibrated();
    CHECK(*m.split_verify_gas(4096) == 8'014'059);
    CHECK(m.set_verifier_cost == 4'544'335);
    CHECK(*m.split_verify_gas(4096) + m.set_verifier_cost == 12'558'394);
    CHECK(*m.verify_gas(4096) - *m.split_verify_gas(4096) == 4'675'948);
    CHECK(*m.verify_gas(4096) - (*m.split_verify_gas(4096) + m.set_verifier_cost) == 131'613);
}

TEST_CASE("verification gas is monotone", "[gas][property]") {
    const auto m = GasModel::calibrated();
    std::mt19937_64 rng{5};
    for (int i = 0; i < 5000; ++i) {
        std::size_t a = 512 + rng() % (10240 - 512 + 1);
        std::size_t b = 512 + rng() % (10240 - 512 + 1);
        if (a > b) std::swap(a, b);
        CHECK(*m.verify_gas(a) <= *m.verify_gas(b));
        CHECK(*m.split_verify_gas(a) <= *m.split_verify_gas(b));
    }
    std::uint64_t prev = 0;
    for (std::size_t s = 512; s <= 10240; ++s) {
        const auto g = *m.verify_gas(s);
        REQUIRE(g >= prev);
        prev = g;
    }
}

TEST_CASE("intrinsic gas", "[gas]") {
    CHECK(intrinsic_gas(0) == 21'000);
    CHECK(intrinsic_gas(100) == 22'600);
}

}  // namespace attseq
