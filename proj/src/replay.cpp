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

#include <attseq/replay.hpp>

#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include <attseq/rollup.hpp>

namespace attseq {

bool ReplayReport::all_hold() const {
    for (const auto& v : verdicts) {
        if (v.applicable && !v.holds) return false;
    }
    return true;
}

const InvariantVerdict* ReplayReport::find(std::string_view name) const {
    for (const auto& v : verdicts) {
        if (v.name == name) return &v;
    }
    return nullptr;
}

namespace {

    struct Checker {
        InvariantVerdict v;

        explicit Checker(std::string name) { v.name = std::move(name); }

        void fail(const TraceEvent& e, std::string detail) {
            if (!v.holds) return;
            v.holds = false;
            v.first_violation_seq = e.seq;
            v.detail = std::move(detail);
        }
    };

    Digest digest_from_hex(const std::string& s) {
        auto d = array_from_hex<32>(s);
        if (!d) throw std::invalid_argument("expected 32-byte hex digest, got '" + s + "'");
        return *d;
    }

}  // namespace

Expected<ReplayReport, TraceError> replay(const Trace& trace) {
    Checker gating{"gating_safety"};
    Checker replay_safety{"replay_safety"};
    Checker gas{"gas_conservation"};
    Checker bonds{"bond_conservation"};
    Checker integrity{"chain_integrity"};
    Checker fifo{"fifo_honesty"};
    Checker gated{"gated_publication"};
    Checker liveness{"liveness"};
    Checker metrics{"metrics_conservation"};

    std::map<std::string, std::uint64_t> live_until;  // sequencer -> expiration block
    std::map<std::string, std::uint64_t> last_nonce;
    std::uint64_t gas_sum = 0;
    bool ended = false;

    std::optional<std::uint64_t> supply_start;
    std::uint64_t slashed_wei = 0;
    bool expect_bond = false;

    std::uint64_t prev_height = 0;
    Digest prev_hash{};
    Digest prev_root{};
    bool have_genesis = false;

    std::deque<std::string> queued;
    std::set<std::string> dropped_since_block;

    bool honest = false;
    std::uint64_t bound = 0;
    std::uint64_t withheld_run = 0;

    std::uint64_t submitted = 0, included = 0, dropped = 0;

    auto live_at = [&](const std::string& seq, std::uint64_t block) {
        auto it = live_until.find(seq);
        return it != live_until.end() && it->second >= block;
    };

    std::size_t at = 0;
    try {
        for (; at < trace.size(); ++at) {
            const TraceEvent& e = trace[at];
            const std::string& t = e.event_type;
            gas_sum += e.gas;

            if (expect_bond && t != "BondSlashed" && t != "BondRefunded") {
                bonds.fail(e, "accepted renewal request without bond settlement");
            }
            expect_bond = false;

            if (t == "ScenarioStarted") {
                supply_start = e.data.at("total_supply").get<std::uint64_t>();
                prev_hash = digest_from_hex(e.data.at("l2_genesis_hash").get<std::string>());
                prev_root = digest_from_hex(e.data.at("l2_genesis_state_root").get<std::string>());
                have_genesis = true;
                honest = e.data.at("adversaries").empty();
                bound = e.data.at("liveness_bound_steps").get<std::uint64_t>();
            } else if (t == "QuoteAttested") {
                const auto seq = e.data.at("sequencer").get<std::string>();
                const auto nonce = e.data.at("nonce").get<std::uint64_t>();
                if (auto it = last_nonce.find(seq); it != last_nonce.end() && nonce <= it->second) {
                    replay_safety.fail(e, "nonce " + std::to_string(nonce) + " not above " +
                                              std::to_string(it->second));
                }
                last_nonce[seq] = nonce;
                live_until[seq] = e.data.at("expiration_block").get<std::uint64_t>();
            } else if (t == "RecordRevoked") {
                live_until.erase(e.actor);
            } else if (t == "BatchPublished" || t == "StateRootProposed") {
                if (!live_at(e.actor, e.block)) {
                    gating.fail(e, t + " from " + e.actor + " without a live attestation at block " +
                                       std::to_string(e.block));
                }
            } else if (t == "BatchSubmitted" || t == "StateRootSubmitted") {
                if (!live_at(e.actor, e.block + 1)) {
                    gated.fail(e, t + " while not attested for block " + std::to_string(e.block + 1));
                }
                if (t == "BatchSubmitted") withheld_run = 0;
            } else if (t == "BatchWithheld") {
                ++withheld_run;
                if (honest && withheld_run > bound) {
                    liveness.fail(e, std::to_string(withheld_run) + " consecutive withheld batches");
                }
            } else if (t == "RenewalRequested") {
                expect_bond = true;
            } else if (t == "BondSlashed" || t == "BondRefunded") {
                if (at == 0 || trace[at - 1].event_type != "RenewalRequested") {
                    bonds.fail(e, "bond settled without a request");
                }
                if (t == "BondSlashed") slashed_wei += e.data.at("bond_wei").get<std::uint64_t>();
            } else if (t == "TxSubmitted") {
                ++submitted;
            } else if (t == "TxQueued") {
                queued.push_back(e.data.at("tx_id").get<std::string>());
            } else if (t == "TxDropped") {
                ++dropped;
                dropped_since_block.insert(e.data.at("tx_id").get<std::string>());
            } else if (t == "L2BlockProduced") {
                std::vector<std::string> ids;
                for (const auto& id : e.data.at("tx_ids")) ids.push_back(id.get<std::string>());
                included += ids.size();

                const std::size_t take = ids.size() + dropped_since_block.size();
                if (take > queued.size()) {
                    fifo.fail(e, "block includes transactions that never reached the mempool");
                } else {
                    std::vector<std::string> kept;
                    std::set<std::string> removed;
                    for (std::size_t i = 0; i < take; ++i) {
                        if (dropped_since_block.contains(queued[i])) {
                            removed.insert(queued[i]);
                        } else {
                            kept.push_back(queued[i]);
                        }
                    }
                    if (kept != ids || removed != dropped_since_block) {
                        fifo.fail(e, "block " + std::to_string(e.data.at("height").get<std::uint64_t>()) +
                                         " deviates from mempool arrival order");
                    }
                    queued.erase(queued.begin(), queued.begin() + static_cast<std::ptrdiff_t>(take));
                }
                dropped_since_block.clear();

                const auto height = e.data.at("height").get<std::uint64_t>();
                const Digest parent = digest_from_hex(e.data.at("parent_hash").get<std::string>());
                const Digest hash = digest_from_hex(e.data.at("block_hash").get<std::string>());
                const Digest root = digest_from_hex(e.data.at("state_root").get<std::string>());
                const auto ts = e.data.at("timestamp").get<std::uint64_t>();
                std::vector<Digest> tx_digests;
                Digest expected_root = prev_root;
                for (const auto& id : ids) {
                    tx_digests.push_back(digest_from_hex(id));
                    expected_root = advance_state_root(expected_root, tx_digests.back());
                }
                if (!have_genesis) {
                    integrity.fail(e, "block produced before ScenarioStarted");
                } else if (height != prev_height + 1) {
                    integrity.fail(e, "height gap at " + std::to_string(height));
                } else if (parent != prev_hash) {
                    integrity.fail(e, "parent hash mismatch at height " + std::to_string(height));
                } else if (root != expected_root) {
                    integrity.fail(e, "state root mismatch at height " + std::to_string(height));
                } else if (compute_block_hash(parent, tx_digests, root, ts) != hash) {
                    integrity.fail(e, "block hash mismatch at height " + std::to_string(height));
                }
                prev_height = height;
                prev_hash = hash;
                prev_root = root;
            } else if (t == "ScenarioEnded") {
                ended = true;
                // The end marker carries the total it is checked against.
                if (gas_sum != e.data.at("gas_total").get<std::uint64_t>()) {
                    gas.fail(e, "event gas sums to " + std::to_string(gas_sum) + ", reported " +
                                    e.data.at("gas_total").dump());
                }
                const auto supply_end = e.data.at("total_supply").get<std::uint64_t>();
                if (supply_start && *supply_start - slashed_wei != supply_end) {
                    bonds.fail(e, "supply changed by more than the slashed bonds");
                }
                const auto pending = e.data.at("pending_txs").get<std::uint64_t>();
                if (submitted != included + dropped + pending) {
                    metrics.fail(e, std::to_string(submitted) + " submitted vs " + std::to_string(included) +
                                        " included + " + std::to_string(dropped) + " dropped + " +
                                        std::to_string(pending) + " pending");
                }
            }
        }
    } catch (const std::exception& ex) {
        return Unexpected{TraceError{at, std::string{"malformed event: "} + ex.what()}};
    }

    gas.v.applicable = ended;
    metrics.v.applicable = ended;
    liveness.v.applicable = honest;

    ReplayReport report;
    for (auto* c : {&gating, &replay_safety, &gas, &bonds, &integrity, &fifo, &gated, &liveness, &metrics}) {
        report.verdicts.push_back(std::move(c->v));
    }
    return report;
}

}  // namespace attseq
