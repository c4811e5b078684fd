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

#include <attseq/chain.hpp>

#include "world.hpp"

namespace attseq {

using test::World;

namespace {

    std::size_t count_events(const L1Chain& c, std::string_view type) {
        return static_cast<std::size_t>(
            std::count_if(c.events().begin(), c.events().end(), [&](const auto& e) { return e.event_type == type; }));
    }

    std::uint64_t sum_gas(const L1Chain& c) {
        std::uint64_t total = 0;
        for (const auto& e : c.events()) total += e.gas;
        return total;
    }

}  // namespace

TEST_CASE("L1 block production", "[onchain]") {
    L1Chain c;
    CHECK(c.block_number() == 0);
    CHECK(c.block_time_s() == 1'700'000'000);
    const auto genesis = c.head().hash;
    c.advance_block();
    CHECK(c.block_number() == 1);
    CHECK(c.block_time_s() == 1'700'000'012);
    CHECK(c.head().hash != genesis);
    CHECK(c.knows_block_hash(genesis));
    CHECK(c.knows_block_hash(c.head().hash));
}

TEST_CASE("deployment", "[onchain]") {
    L1Chain c;
    const auto deployer = address_of_name("deployer");
    auto r = c.deploy_attestation_suite(deployer);
    REQUIRE(r);
    CHECK(r->total_gas == 23'731'965);
    CHECK(r->contracts.front() == std::pair<std::string, std::uint64_t>{"PCCS Router", 2'352'196});
    CHECK(r->contracts.back().second == 322'250);
    CHECK(count_events(c, "ContractDeployed") == 10);
    CHECK(c.gas_spent_total() == 23'731'965);
    CHECK(c.deploy_attestation_suite(deployer).error().code == ChainError::kAlreadyDeployed);
}

TEST_CASE("operations before deployment", "[onchain]") {
    L1Chain c;
    const auto a = address_of_name("a");
    CHECK(c.store_collateral({}, a).error().code == ChainError::kNotDeployed);
    CHECK(c.set_quote_verifier(QuoteVersion::kV4, a).error().code == ChainError::kNotDeployed);
    CHECK(c.submit_quote(a, Bytes(600, 0), std::nullopt, a).error().code == ChainError::kNotDeployed);
    CHECK(c.request_fresh_attestation({a, a, 0, kWeiPerEth / 10}).error().code == ChainError::kNotDeployed);
    CHECK(c.accept_batch(a, {}).error().code == ChainError::kNotDeployed);
}

TEST_CASE("collateral storage", "[onchain]") {
    World w;
    const auto fmspc = w.node.enclave.fmspc();
    auto first = w.chain.latest_collateral(fmspc);
    REQUIRE(first);
    CHECK(*first == *w.pcs.get_collateral(fmspc));

    w.pcs.set_tcb_status(fmspc, TcbStatus::kOutOfDate, 1'700'000'001);
    auto bundle = *w.pcs.get_collateral(fmspc);
    auto id = w.chain.store_collateral(bundle, w.operator_addr);
    REQUIRE(id);
    CHECK(*w.chain.collateral(*id) == bundle);
    CHECK(w.chain.latest_collateral(fmspc)->tcb_info.status == TcbStatus::kOutOfDate);
    CHECK(count_events(w.chain, "CollateralStored") == 2);
}

TEST_CASE("quote verifier registration", "[onchain]") {
    World w;
    const auto before = w.chain.gas_spent_total();
    CHECK(*w.chain.set_quote_verifier(QuoteVersion::kV4, w.operator_addr) == 4'544'335);
    CHECK(w.chain.gas_spent_total() - before == 4'544'335);
    CHECK(count_events(w.chain, "QuoteVerifierSet") == 2);
    CHECK(w.chain.verifiers() == std::set<QuoteVersion>{QuoteVersion::kV4});
}

TEST_CASE("quote submission", "[onchain]") {
    World w;
    w.advance(1);
    const auto before = w.chain.gas_spent_total();
    auto rec = w.attest();
    REQUIRE(rec);
    CHECK(w.chain.gas_spent_total() - before == 12'690'007);
    CHECK(rec->attested_block == 1);
    CHECK(rec->expiration_block == 1201);
    CHECK(w.chain.is_authorized(w.node.address, 1));
    CHECK(w.chain.is_authorized(w.node.address, 1201));
    CHECK_FALSE(w.chain.is_authorized(w.node.address, 1202));
    CHECK_FALSE(w.chain.is_authorized(address_of_name("stranger"), 1));

    SECTION("replaying the accepted quote") {
        const auto bytes = *w.chain.last_attested_quote(w.node.address);
        auto r = w.chain.submit_quote(w.node.address, bytes, w.chain.last_attested_proposal(w.node.address),
                                      w.operator_addr);
        REQUIRE_FALSE(r);
        CHECK(r.error().quote_reason == RejectReason::kNonceReplayed);
        CHECK(r.error().name() == "NonceReplayed");
    }
    SECTION("claiming the quote for another address") {
        auto p = w.prepare();
        auto r = w.chain.submit_quote(address_of_name("thief"), p.bytes, p.proposal, address_of_name("thief"));
        CHECK(r.error().quote_reason == RejectReason::kMetadataMismatch);
    }
}

TEST_CASE("split accounting charges submission and registration separately", "[onchain]") {
    ChainParams p;
    p.gas_accounting = GasAccounting::kSplit;
    World w{p};
    const auto before = w.chain.gas_spent_total();
    (void)w.chain.set_quote_verifier(QuoteVersion::kV4, w.operator_addr);
    REQUIRE(w.attest());
    CHECK(w.chain.gas_spent_total() - before == 12'558'394);
}

TEST_CASE("revocation invalidates live records", "[onchain]") {
    World w;
    REQUIRE(w.attest());
    (void)w.pcs.revoke(*w.node.enclave.pck_serial(), 1'700'000'000);
    (void)w.chain.store_collateral(*w.pcs.get_collateral(w.node.enclave.fmspc()), w.operator_addr);
    CHECK(count_events(w.chain, "RecordRevoked") == 1);
    CHECK_FALSE(w.chain.is_authorized(w.node.address, w.chain.block_number()));
    w.advance(1);
    auto r = w.attest();
    REQUIRE_FALSE(r);
    CHECK(r.error().quote_reason == RejectReason::kRevokedPck);
}

TEST_CASE("batches and state roots", "[onchain]") {
    World w;
    REQUIRE(w.attest());
    w.advance(1);
    CHECK(w.produce_and_publish(3) == 1);
    REQUIRE(w.chain.batches().size() == 1);
    const auto& b = w.chain.batches()[0];
    CHECK(b.start_height == 1);
    CHECK(b.end_height == 3);
    CHECK(w.chain.l2_head(w.node.address) == 3);

    SECTION("gapped range") {
        BatchSubmission bad;
        bad.start_height = 5;
        bad.end_height = 5;
        bad.headers.push_back({5, {}, {}, {}});
        CHECK(w.chain.accept_batch(w.node.address, bad).error().code == ChainError::kBadBatchRange);
    }
    SECTION("unattested sequencer") {
        CHECK(w.chain.accept_batch(address_of_name("x"), {}).error().code == ChainError::kNotAuthorized);
    }
    SECTION("state root lifecycle") {
        auto rec = w.chain.accept_state_root(w.node.address, {0, b.last_state_root});
        REQUIRE(rec);
        CHECK(rec->status == CommitmentStatus::kPending);
        CHECK(w.chain.accept_state_root(w.node.address, {0, b.last_state_root}).error().code ==
              ChainError::kDuplicateCommitment);
        CHECK(w.chain.accept_state_root(w.node.address, {7, {}}).error().code == ChainError::kUnknownBatch);

        // 7 days of 12 s blocks
        REQUIRE(w.chain.params().challenge_window_blocks == 7 * 86'400 / 12);
        const auto submitted = rec->submitted_block;
        w.advance(50'400 - 1);
        CHECK(w.chain.block_number() == submitted + 50'399);
        CHECK(w.chain.state_root_status(rec->id) == CommitmentStatus::kPending);
        w.advance(1);
        CHECK(w.chain.state_root_status(rec->id) == CommitmentStatus::kFinal);
        CHECK(count_events(w.chain, "StateRootFinalized") == 1);
    }
}

TEST_CASE("expired attestation blocks publication", "[onchain]") {
    World w{ChainParams{}, 10};
    REQUIRE(w.attest());
    (void)produce_block(w.node, w.chain, w.now_ms(), w.rp);
    w.advance(11);
    auto step = batcher_step(w.batcher, w.node, w.chain, w.rp);
    CHECK(step.outcome == StepOutcome::kWithheld);
    BatchSubmission b;
    b.start_height = 1;
    b.end_height = 1;
    b.headers.push_back(w.node.chain[1].header());
    CHECK(w.chain.accept_batch(w.node.address, b).error().code == ChainError::kNotAuthorized);
}

TEST_CASE("renewal requests", "[onchain]") {
    World w;
    const auto validator = address_of_name("validator-1");
    const auto outsider = address_of_name("outsider");
    w.chain.set_whitelist({validator});
    w.chain.mint(validator, kWeiPerEth);
    w.chain.mint(outsider, kWeiPerEth);
    const auto supply = w.chain.total_supply();
    REQUIRE(w.attest());
    const std::uint64_t bond = kWeiPerEth / 10;

    CHECK(w.chain.request_fresh_attestation({outsider, w.node.address, 0, bond}).error().code ==
          ChainError::kNotWhitelisted);

    SECTION("early request at 60% remaining is slashed") {
        w.advance(480);
        auto r = w.chain.request_fresh_attestation({validator, w.node.address, 0, bond});
        REQUIRE(r);
        CHECK(*r == BondOutcome::kSlashed);
        CHECK(w.chain.balance(validator) == kWeiPerEth - bond);
        CHECK(w.chain.total_supply() == supply - bond);
        CHECK(w.chain.burned_wei() == bond);
        CHECK(w.chain.renewal_demanded(w.node.address));

        w.advance(50);
        CHECK(w.chain.request_fresh_attestation({validator, w.node.address, 0, bond}).error().code ==
              ChainError::kRateLimited);
    }
    SECTION("request at 50% remaining is refunded") {
        w.advance(600);
        CHECK(*w.chain.request_fresh_attestation({validator, w.node.address, 1, bond}) == BondOutcome::kRefunded);
        CHECK(w.chain.balance(validator) == kWeiPerEth);
        CHECK(w.chain.total_supply() == supply);
    }
    SECTION("rate limit expires after 150 blocks") {
        w.advance(700);
        REQUIRE(w.chain.request_fresh_attestation({validator, w.node.address, 2, bond}));
        w.advance(149);
        CHECK(w.chain.request_fresh_attestation({validator, w.node.address, 2, bond}).error().code ==
              ChainError::kRateLimited);
        w.advance(1);
        CHECK(w.chain.request_fresh_attestation({validator, w.node.address, 2, bond}));
    }
    SECTION("malformed requests") {
        CHECK(w.chain.request_fresh_attestation({validator, w.node.address, 9, bond}).error().code ==
              ChainError::kBadReason);
        CHECK(w.chain.request_fresh_attestation({validator, w.node.address, 0, bond - 1}).error().code ==
              ChainError::kWrongBond);
        w.chain.set_whitelist({validator, address_of_name("poor")});
        CHECK(w.chain.request_fresh_attestation({address_of_name("poor"), w.node.address, 0, bond}).error().code ==
              ChainError::kInsufficientFunds);
    }
    SECTION("fresh quote clears the demand flag") {
        w.advance(600);
        REQUIRE(w.chain.request_fresh_attestation({validator, w.node.address, 0, bond}));
        CHECK(w.chain.renewal_demanded(w.node.address));
        REQUIRE(w.attest());
        CHECK_FALSE(w.chain.renewal_demanded(w.node.address));
    }
}

TEST_CASE("gas conservation over the event log", "[onchain][property]") {
    World w;
    w.chain.set_whitelist({address_of_name("v")});
    w.chain.mint(address_of_name("v"), kWeiPerEth);
    REQUIRE(w.attest());
    for (int i = 0; i < 20; ++i) {
        w.advance(1);
        (void)w.produce_and_publish(2);
        (void)w.chain.request_fresh_attestation({address_of_name("v"), w.node.address, 0, kWeiPerEth / 10});
        (void)w.chain.submit_quote(w.node.address, Bytes(700, 1), std::nullopt, w.operator_addr);
    }
    CHECK(sum_gas(w.chain) == w.chain.gas_spent_total());
}

TEST_CASE("identical operation sequences give identical logs", "[onchain][property]") {
    auto run = [] {
        World w;
        REQUIRE(w.attest());
        for (int i = 0; i < 5; ++i) {
            w.advance(1);
            (void)w.produce_and_publish(2);
        }
        return std::pair{w.chain.export_event_log(), w.chain.gas_spent_total()};
    };
    CHECK(run() == run());
}

TEST_CASE("apply dispatches by sender", "[onchain]") {
    World w;
    REQUIRE(w.attest());
    (void)produce_block(w.node, w.chain, w.now_ms(), w.rp);
    AcceptBatchCall call;
    call.sequencer = w.node.address;
    call.batch.start_height = 1;
    call.batch.end_height = 1;
    call.batch.headers.push_back(w.node.chain[1].header());

    // Someone else relaying the sequencer's batch is not the sequencer.
    auto r = w.chain.apply({1, address_of_name("relay"), call});
    CHECK_FALSE(r.success);
    CHECK(r.rejection->code == ChainError::kNotAuthorized);
    CHECK(w.chain.receipt(1)->tx_id == 1);

    auto ok = w.chain.apply({2, w.node.address, call});
    CHECK(ok.success);
    CHECK_FALSE(w.chain.receipt(3));
}

TEST_CASE("event log export", "[onchain]") {
    World w;
    const auto log = w.chain.export_event_log();
    std::size_t lines = std::count(log.begin(), log.end(), '\n');
    CHECK(lines == w.chain.events().size());
    auto first = nlohmann::json::parse(log.substr(0, log.find('\n')));
    CHECK(first["event_type"] == "ContractDeployed");
    CHECK(first["gas"] == 2'352'196);
    CHECK(first.contains("payload_hash"));
    CHECK(first["reason"].is_null());
}

}  // namespace attseq
