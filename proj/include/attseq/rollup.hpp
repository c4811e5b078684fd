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
#include <deque>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include <attseq/chain.hpp>
#include <attseq/enclave.hpp>

namespace attseq {

struct Transaction {
    Digest id{};
    Address sender{};
    std::uint32_t payload_size{0};
    std::uint64_t submitted_at_ms{0};

    bool operator==(const Transaction&) const = default;
};

struct L2Block {
    std::uint64_t height{0};
    Digest parent_hash{};
    Digest block_hash{};
    Digest state_root{};
    Digest l1_origin{};
    std::uint64_t timestamp{0};  // unix seconds
    std::vector<Digest> tx_ids;
    std::uint64_t payload_bytes{0};

    [[nodiscard]] BlockHeaderSummary header() const { return {height, parent_hash, block_hash, state_root}; }
    [[nodiscard]] BlockProposal proposal() const { return {height, parent_hash, block_hash, state_root}; }
};

// hash(parent_hash || ordered tx ids || state_root || timestamp), each field length-prefixed.
Digest compute_block_hash(const Digest& parent, const std::vector<Digest>& tx_ids, const Digest& state_root,
                          std::uint64_t timestamp);

// Running hash chain over applied transactions.
Digest advance_state_root(const Digest& root, const Digest& tx_id);

L2Block make_genesis_block(std::uint64_t genesis_unix_s);

struct RollupParams {
    std::size_t max_txs_per_block{100};
    std::uint64_t batch_size_blocks{5};
    std::uint64_t renewal_threshold_pct{20};
    std::size_t quote_size_target{kDefaultQuoteSize};
    std::uint64_t genesis_unix_s{1'700'000'000};
    std::uint32_t block_header_bytes{32};
};

enum class RollupError {
    kNotAuthorizedLocally,
};

std::string_view to_string(RollupError e);

enum class RenewalCause {
    kInitial,
    kExpired,
    kThreshold,
    kDemand,
};

std::string_view to_string(RenewalCause c);

struct AttestationState {
    std::optional<std::uint64_t> in_flight_tx;
    std::optional<RenewalCause> in_flight_cause;
    bool ever_submitted{false};
    std::optional<TxReceipt> last_outcome;

    [[nodiscard]] bool renewal_in_flight() const noexcept { return in_flight_tx.has_value(); }
};

struct SequencerNode {
    Enclave enclave;
    Address address{};
    std::deque<Transaction> mempool;
    std::vector<L2Block> chain;  // chain[i].height == i
    std::optional<L2Block> held_pending;
    AttestationState attestation;
    std::function<bool(const Transaction&)> censorship_filter;
    // Compromised host feeding the enclave a state root that differs from the proposal.
    bool metadata_tamper{false};

    SequencerNode(Enclave e, std::uint64_t genesis_unix_s);

    [[nodiscard]] const L2Block& head() const { return chain.back(); }
    [[nodiscard]] const L2Block* block_at(std::uint64_t height) const;
};

struct ProducedBlock {
    L2Block block;
    std::vector<Transaction> included;
    std::vector<Transaction> dropped;  // removed by the censorship filter
};

// Commits the held pending block if one exists, otherwise drains up to max_txs_per_block
// from the mempool in arrival order. Refuses without touching the mempool when the node
// holds no live attestation on the ledger.
Expected<ProducedBlock, RollupError> produce_block(SequencerNode& node, const L1Chain& view, std::uint64_t now_ms,
                                                   const RollupParams& params);

SequencerMetadata collect_metadata(SequencerNode& node, const L2Block& pending, std::uint64_t now_ms,
                                   const RollupParams& params);

enum class LoopAction {
    kNone,
    kSubmitQuote,
    kBlocked,
};

std::string_view to_string(LoopAction a);

struct LoopDecision {
    LoopAction action{LoopAction::kNone};
    std::optional<RenewalCause> cause;
};

// Clears a settled in-flight submission, then decides whether a fresh quote is needed.
LoopDecision attestation_loop_step(SequencerNode& node, const L1Chain& view, const RollupParams& params);

void apply_censorship(SequencerNode& node, std::function<bool(const Transaction&)> predicate);

struct Batcher {
    Address sequencer{};
    std::uint64_t next_height{1};  // first L2 height not yet handed to L1

    struct InFlight {
        std::uint64_t tx_id;
        std::uint64_t start;
        std::uint64_t end;
    };
    std::vector<InFlight> in_flight;
    bool needs_resync{false};
};

// The block the next quote binds: the oldest block not yet handed to the batcher. When none
// exists, an empty block is built and held until production resumes.
const L2Block& pending_block_for_quote(SequencerNode& node, const Batcher& batcher, const L1Chain& view,
                                       std::uint64_t now_ms, const RollupParams& params);

enum class StepOutcome {
    kIdle,
    kSubmitted,
    kWithheld,
};

std::string_view to_string(StepOutcome o);

struct BatcherStep {
    StepOutcome outcome{StepOutcome::kIdle};
    std::vector<AcceptBatchCall> calls;
};

// Each returned call must be sent with the tx id reported back via batcher_track.
BatcherStep batcher_step(Batcher& batcher, const SequencerNode& node, const L1Chain& view,
                         const RollupParams& params);
void batcher_track(Batcher& batcher, std::uint64_t tx_id, const AcceptBatchCall& call);

struct Proposer {
    Address sequencer{};
    std::map<std::uint64_t, std::uint64_t> in_flight;  // tx id -> batch id
    std::size_t cursor{0};                              // batches before this index are committed
};

struct ProposerStep {
    StepOutcome outcome{StepOutcome::kIdle};
    std::optional<AcceptStateRootCall> call;
};

ProposerStep proposer_step(Proposer& proposer, const L1Chain& view);
void proposer_track(Proposer& proposer, std::uint64_t tx_id, const AcceptStateRootCall& call);

}  // namespace attseq
