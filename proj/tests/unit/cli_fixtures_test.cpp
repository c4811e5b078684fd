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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include <attseq/cli.hpp>
#include <attseq/fixtures.hpp>
#include <attseq/verifier.hpp>

namespace attseq {

namespace fs = std::filesystem;

namespace {

    const fs::path kSource{ATTSEQ_SOURCE_DIR};

    std::string slurp(const fs::path& p) {
        std::ifstream in{p, std::ios::binary};
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    struct Run {
        int code;
        std::string out;
        std::string err;
    };

    Run cli(std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return {code, out.str(), err.str()};
    }

    std::string fixture(std::string_view rel) { return (kSource / "fixtures" / rel).string(); }

    fs::path temp_dir(std::string_view name) {
        auto p = fs::temp_directory_path() / ("attseq-test-" + std::string{name});
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }

}  // namespace

TEST_CASE("checked-in fixtures match the generator", "[fixtures]") {
    auto set = build_fixture_set();
    REQUIRE(set);
    for (const auto& [name, bytes] : set->quotes) {
        INFO(name);
        const auto disk = slurp(kSource / "fixtures" / "quotes" / (name + ".bin"));
        CHECK(disk == std::string(bytes.begin(), bytes.end()));
    }
    CHECK(slurp(kSource / "fixtures/quotes/honest_v4.report_data.hex") == to_hex(set->honest_report_data) + "\n");
    CHECK(slurp(kSource / "fixtures/collateral/valid.json") == to_json(set->valid_collateral).dump(2) + "\n");
    CHECK(slurp(kSource / "fixtures/collateral/revoked.json") == to_json(set->revoked_collateral).dump(2) + "\n");
    CHECK(slurp(kSource / "fixtures/policy/default.json") == to_json(set->policy).dump(2) + "\n");
}

// Frozen from the independent Python parser and signer check.
TEST_CASE("golden report_data", "[fixtures]") {
    auto set = build_fixture_set();
    REQUIRE(set);
    const auto& honest = set->quotes.front().second;
    auto q = parse_quote(honest);
    REQUIRE(q);
    CHECK(compute_report_data(q->metadata) == set->honest_report_data);
    CHECK(to_hex(set->honest_report_data) == "341a4bb078ea1a2b5b6b0da1bb446b75be5ef60127e7a5e04e2f31ffe7a8f30a");
    CHECK(to_hex(quote_signing_digest(*q)) == "177c7cf55c36c673f0b9485bcac18b2a9294d3c4793a63c222721fc991305f77");
    CHECK(to_hex(address_of(q->metadata.prover_pubkey)) == "23cf113f968dd30499500d83641b6e0e56d1f9bd");
}

TEST_CASE("collateral and policy JSON round trip", "[fixtures]") {
    auto set = build_fixture_set();
    REQUIRE(set);
    CHECK(*collateral_from_json(to_json(set->valid_collateral)) == set->valid_collateral);
    CHECK(*collateral_from_json(to_json(set->revoked_collateral)) == set->revoked_collateral);
    CHECK(*policy_from_json(to_json(set->policy)) == set->policy);
    CHECK_FALSE(collateral_from_json(nlohmann::json::object()));
    auto bad = to_json(set->policy);
    bad["expected_mrenclave"] = "abcd";
    CHECK_FALSE(policy_from_json(bad));
    bad = to_json(set->policy);
    bad["accepted_tcb_statuses"] = {"OutOfDate"};
    CHECK_FALSE(policy_from_json(bad));
}

TEST_CASE("verify-quote", "[cli]") {
    auto verify = [](std::string_view quote, std::string_view collateral = "collateral/valid.json") {
        return cli({"verify-quote", "--quote", fixture(quote), "--collateral", fixture(collateral), "--policy",
                    fixture("policy/default.json")});
    };
    SECTION("honest quote accepted") {
        for (auto q : {"quotes/honest_v4.bin", "quotes/honest_v4_min.bin", "quotes/honest_v4_max.bin"}) {
            auto r = verify(q);
            INFO(r.out << r.err);
            CHECK(r.code == kExitOk);
            CHECK(r.out.starts_with("ACCEPT\n"));
        }
        CHECK(verify("quotes/honest_v4.bin").out.find("sequencer 0x23cf113f968dd30499500d83641b6e0e56d1f9bd") !=
              std::string::npos);
    }
    SECTION("rejections") {
        const std::pair<std::string_view, std::string_view> cases[] = {
            {"quotes/forged_signature.bin", "REJECT BadSignature\n"},
            {"quotes/wrong_measurement.bin", "REJECT MeasurementMismatch\n"},
            {"quotes/stale_timestamp.bin", "REJECT StaleTimestamp\n"},
            {"quotes/truncated.bin", "REJECT ParseError\n"},
        };
        for (auto [q, expected] : cases) {
            auto r = verify(q);
            CHECK(r.code == kExitRejected);
            CHECK(r.out == expected);
        }
        auto revoked = verify("quotes/honest_v4.bin", "collateral/revoked.json");
        CHECK(revoked.code == kExitRejected);
        CHECK(revoked.out == "REJECT RevokedPck\n");
    }
    SECTION("explicit evaluation time") {
        auto r = cli({"verify-quote", "--quote", fixture("quotes/honest_v4.bin"), "--collateral",
                      fixture("collateral/valid.json"), "--policy", fixture("policy/default.json"), "--now",
                      "1700009999"});
        CHECK(r.out == "REJECT StaleTimestamp\n");
    }
    SECTION("input errors") {
        CHECK(verify("quotes/missing.bin").code == kExitInputError);
        CHECK(verify("quotes/honest_v4.bin", "quotes/honest_v4.bin").code == kExitInputError);
        CHECK(verify("quotes/honest_v4.bin", "policy/default.json").code == kExitInputError);
    }
    SECTION("output is byte stable") { CHECK(verify("quotes/honest_v4.bin").out == verify("quotes/honest_v4.bin").out); }
}

TEST_CASE("gas-table", "[cli]") {
    auto r = cli({"gas-table"});
    CHECK(r.code == kExitOk);
    CHECK(r.out ==
          "size_bytes,gas\n512,8636467\n1024,9136467\n2048,10407443\n4096,12690007\n6144,13820092\n"
          "8192,14550541\n10240,15199581\n");
    CHECK(cli({"gas-table", "--sizes", "3072"}).out == "size_bytes,gas\n3072,11548725\n");
    CHECK(cli({"gas-table", "--sizes", "4096", "--split"}).out == "size_bytes,gas\n4096,8014059\n");
    CHECK(cli({"gas-table", "--sizes", "256"}).code == kExitInputError);
    CHECK(cli({"gas-table", "--sizes", "abc"}).code == kExitInputError);
}

TEST_CASE("list-scenarios", "[cli]") {
    auto r = cli({"list-scenarios", "--dir", (kSource / "scenarios").string()});
    CHECK(r.code == kExitOk);
    for (auto name : {"honest_24h", "replay_attack", "forged_quote", "revoked_collateral", "censorship",
                      "renewal_spam"}) {
        CHECK(r.out.find(std::string{name} + "  ") != std::string::npos);
    }
    CHECK(cli({"list-scenarios", "--dir", "/nonexistent/dir"}).code == kExitInputError);
}

TEST_CASE("run", "[cli]") {
    const auto dir = temp_dir("run");
    const auto conf = dir / "s.conf";
    std::ofstream{conf} << "name = cli_run\nduration_s = 600\nworkload.tx_count = 50\n";

    auto r = cli({"run", "--config", conf.string(), "--out", (dir / "out").string()});
    INFO(r.out << r.err);
    CHECK(r.code == kExitOk);
    for (auto f : {"trace.jsonl", "events.jsonl", "metrics.json", "metrics.csv"}) CHECK(fs::exists(dir / "out" / f));
    auto metrics = nlohmann::json::parse(slurp(dir / "out/metrics.json"));
    CHECK(metrics["tx_submitted"] == 50);
    CHECK(r.out.find("invariant gating_safety: ok") != std::string::npos);

    SECTION("overrides and stable output") {
        auto again = cli({"run", "--config", conf.string(), "--out", (dir / "again").string()});
        CHECK(slurp(dir / "out/trace.jsonl") == slurp(dir / "again/trace.jsonl"));
        auto other = cli({"run", "--config", conf.string(), "--out", (dir / "other").string(), "--set", "seed=9"});
        CHECK(other.code == kExitOk);
        CHECK(slurp(dir / "out/trace.jsonl") != slurp(dir / "other/trace.jsonl"));
    }
    SECTION("config errors exit 2") {
        std::ofstream{dir / "bad.conf"} << "seed = nope\n";
        auto bad = cli({"run", "--config", (dir / "bad.conf").string(), "--out", (dir / "x").string()});
        CHECK(bad.code == kExitInputError);
        CHECK(bad.err.find("seed") != std::string::npos);
        CHECK(cli({"run", "--config", (dir / "missing.conf").string(), "--out", (dir / "x").string()}).code ==
              kExitInputError);
        CHECK(cli({"run", "--config", conf.string(), "--out", (dir / "x").string(), "--set", "nokey=1"}).code ==
              kExitInputError);
    }
}

TEST_CASE("usage errors", "[cli]") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {}, {"frobnicate"}, {"gas-table", "--bogus"}, {"verify-quote", "--quote", "x"}, {"run"}}) {
        auto r = cli(args);
        CHECK(r.code == kExitInputError);
        CHECK(r.err.find("Usage") != std::string::npos);
    }
    CHECK(cli({"--help"}).code == kExitOk);
}

}  // namespace attseq
