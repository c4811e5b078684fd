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

#include <attseq/rollup.hpp>

#include <algorithm>

namespace attseq {

std::string_view to_string(RollupError e) {
    switch (e) {
        case RollupError::kNotAuthorizedLocally:
            return "NotAuthorizedLocally";
    }
    return "unknown";
}

std::string_view to_string(RenewalCause c) {
    switch (c) {
        case RenewalCause::kInitial:
            return "initial";
        case RenewalCause::kExpired:
            return "expired";
        case RenewalCause::kThreshold:
            return "threshold";
        case RenewalCause::kDemand:
            return "demand";
    }
    return "unknown";
}

std::string_view to_string(LoopAction a) {
    switch (a) {
        case LoopAction::kNone:
            return "None";
        case LoopAction::kSubmitQuote:
            return "SubmitQuote";
        case LoopAction::kBlocked:
            return "Blocked";
    }
    return "unknown";
}

std::string_view to_string(StepOutcome o) {
    switch (o) {
        case StepOutcome::kIdle:
            return "idle";
        case StepOutcome::kSubmitted:
            return "submitted";
        case StepOutcome::kWithheld:
            return "withheld";
    }
    return "unknown";
}

Digest compute_block_hash(const Digest& parent, const std::vector<Digest>& tx_ids, const Digest& state_root,
                          std::uint64_t timestamp) {
    ByteWriter w;
    w.prefixed(parent);
    w.u32(static_cast<std::uint32_t>(tx_ids.size()));
    for (const auto& id : tx_ids) w.raw(id);
    w.prefixed(state_root);
    w.u64(timestamp);
    return sha256(w.bytes());
}

Digest advance_state_root(const Digest& root, const Digest& tx_id) {
    ByteWriter w;
    w.raw(root);
    w.raw(tx_id);
    return sha256(w.bytes());
}

L2Block make_genesis_block(std::uint64_t genesis_unix_s) {
    L2Block g;
    g.height = 0;
    g.state_root = sha256(std::string_view{"l2-genesis-state"});
    g.timestamp = genesis_unix_s;
    g.block_hash = compute_block_hash(g.parent_hash, g.tx_ids, g.state_root, g.timestamp);
    return g;
}

SequencerNode::SequencerNode(Enclave e, std::uint64_t genesis_unix_s)
    : enclave{std::move(e)}, address{enclave.address()} {
    chain.push_back(make_genesis_block(genesis_unix_s));
}

const L2Block* SequencerNode::block_at(std::uint64_t height) const {
    if (height >= chain.size()) return nullptr;
    return &chain[height];
}

namespace {

    std::uint64_t unix_seconds(std::uint64_t now_ms, const RollupParams& params) {
        return params.genesis_unix_s + now_ms / 1000;
    }

    L2Block build_block(const L2Block& parent, const std::vector<Transaction>& txs, const Digest& l1_origin,
                        std::uint64_t timestamp) {
        L2Block b;
        b.height = parent.height + 1;
        b.parent_hash = parent.block_hash;
        b.state_root = parent.state_root;
        for (const auto& tx : txs) {
            b.tx_ids.push_back(tx.id);
            b.state_root = advance_state_root(b.state_root, tx.id);
            b.payload_bytes += tx.payload_size;
        }
        b.l1_origin = l1_origin;
        b.timestamp = timestamp;
        b.block_hash = compute_block_hash(b.parent_hash, b.tx_ids, b.state_root, b.timestamp);
        return b;
    }

}  // namespace

Expected<ProducedBlock, RollupError> produce_block(SequencerNode& node, const L1Chain& view, std::uint64_t now_ms,
                                                   const RollupParams& params) {
    if (!view.is_authorized(node.address, view.block_number())) {
        return Unexpected{RollupError::kNotAuthorizedLocally};
    }
    ProducedBlock out;
    if (node.held_pending) {
        out.block = std::move(*node.held_pending);
        node.held_pending.reset();
        node.chain.push_back(out.block);
        return out;
    }
    while (!node.mempool.empty() && out.included.size() < params.max_txs_per_block) {
        Transaction tx = node.mempool.front();
        node.mempool.pop_front();
        if (node.censorship_filter && node.censorship_filter(tx)) {
            out.dropped.push_back(tx);
            continue;
        }
        out.included.push_back(tx);
    }
    out.block = build_block(node.head(), out.included, view.head().hash, unix_seconds(now_ms, params));
    node.chain.push_back(out.block);
    return out;
}

SequencerMetadata collect_metadata(SequencerNode& node, const L2Block& pending, std::uint64_t now_ms,
                                   const RollupParams& params) {
    SequencerMetadata m;
    m.block_hash = pending.block_hash;
    m.block_height = pending.height;
    m.state_root = pending.state_root;
    m.l1_origin = pending.l1_origin;
    m.timestamp = unix_seconds(now_ms, params);
    m.nonce = node.enclave.reserve_nonce();
    m.prover_pubkey = node.enclave.prover_pubkey();
    return m;
}

LoopDecision attestation_loop_step(SequencerNode& node, const L1Chain& view, const RollupParams& params) {
    auto& st = node.attestation;
    if (st.in_flight_tx) {
        if (auto r = view.receipt(*st.in_flight_tx)) {
            st.last_outcome = *r;
            st.in_flight_tx.reset();
            st.in_flight_cause.reset();
        }
    }

    const auto rec = view.record(node.address);
    const std::uint64_t current = view.block_number();
    const bool live = rec && rec->expiration_block >= current;

    if (st.in_flight_tx) {
        return {live ? LoopAction::kNone : LoopAction::kBlocked, std::nullopt};
    }
    if (!live) {
        return {LoopAction::kSubmitQuote, st.ever_submitted ? RenewalCause::kExpired : RenewalCause::kInitial};
    }
    const std::uint64_t window = rec->expiration_block - rec->attested_block;
    const std::uint64_t remaining = rec->expiration_block - current;
    if (remaining * 100 < params.renewal_threshold_pct * window) {
        return {LoopAction::kSubmitQuote, RenewalCause::kThreshold};
    }
    if (view.renewal_demanded(node.address)) {
        return {LoopAction::kSubmitQuote, RenewalCause::kDemand};
    }
    return {LoopAction::kNone, std::nullopt};
}

void apply_censorship(SequencerNode& node, std::function<bool(const Transaction&)> predicate) {
    node.censorship_filter = std::move(predicate);
}

const L2Block& pending_block_for_quote(SequencerNode& node, const Batcher& batcher, const L1Chain& view,
                                       std::uint64_t now_ms, const RollupParams& params) {
    if (const L2Block* b = node.block_at(batcher.next_height)) {
        return *b;
    }
    if (!node.held_pending) {
        node.held_pending = build_block(node.head(), {}, view.head().hash, unix_seconds(now_ms, params));
    }
    return *node.held_pending;
}

BatcherStep batcher_step(Batcher& batcher, const SequencerNode& node, const L1Chain& view,
                         const RollupParams& params) {
    std::erase_if(batcher.in_flight, [&](const Batcher::InFlight& f) {
        auto r = view.receipt(f.tx_id);
        if (r && !r->success) batcher.needs_resync = true;
        return r.has_value();
    });
    if (batcher.needs_resync) {
        if (!batcher.in_flight.empty()) {
            return {StepOutcome::kIdle, {}};
        }
        batcher.next_height = view.l2_head(batcher.sequencer) + 1;
        batcher.needs_resync = false;
    }

    const std::uint64_t head = node.head().height;
    if (head < batcher.next_height) {
        return {StepOutcome::kIdle, {}};
    }
    // The submission lands in the next L1 block at the earliest.
    if (!view.is_authorized(batcher.sequencer, view.block_number() + 1)) {
        return {StepOutcome::kWithheld, {}};
    }

    BatcherStep step;
    step.outcome = StepOutcome::kSubmitted;
    std::uint64_t start = batcher.next_height;
    while (start <= head) {
        const std::uint64_t end = std::min(head, start + params.batch_size_blocks - 1);
        AcceptBatchCall call;
        call.sequencer = batcher.sequencer;
        call.batch.start_height = start;
        call.batch.end_height = end;
        for (std::uint64_t h = start; h <= end; ++h) {
            const L2Block& b = node.chain[h];
            call.batch.headers.push_back(b.header());
            call.batch.compressed_size += b.payload_bytes + params.block_header_bytes;
        }
        step.calls.push_back(std::move(call));
        start = end + 1;
    }
    batcher.next_height = head + 1;
    return step;
}

void batcher_track(Batcher& batcher, std::uint64_t tx_id, const AcceptBatchCall& call) {
    batcher.in_flight.push_back({tx_id, call.batch.start_height, call.batch.end_height});
}

ProposerStep proposer_step(Proposer& proposer, const L1Chain& view) {
    std::erase_if(proposer.in_flight, [&](const auto& kv) { return view.receipt(kv.first).has_value(); });

    const auto& batches = view.batches();
    while (proposer.cursor < batches.size() && (batches[proposer.cursor].sequencer != proposer.sequencer ||
                                                 view.has_commitment_for(batches[proposer.cursor].id))) {
        ++proposer.cursor;
    }
    const PublishedBatch* oldest = nullptr;
    for (std::size_t i = proposer.cursor; i < batches.size(); ++i) {
        const auto& b = batches[i];
        if (b.sequencer != proposer.sequencer || view.has_commitment_for(b.id)) continue;
        const bool pending = std::any_of(proposer.in_flight.begin(), proposer.in_flight.end(),
                                         [&](const auto& kv) { return kv.second == b.id; });
        if (pending) continue;
        oldest = &b;
        break;
    }
    if (!oldest) {
        return {StepOutcome::kIdle, std::nullopt};
    }
    if (!view.is_authorized(proposer.sequencer, view.block_number() + 1)) {
        return {StepOutcome::kWithheld, std::nullopt};
    }
    AcceptStateRootCall call;
    call.sequencer = proposer.sequencer;
    call.commitment = StateRootCommitment{oldest->id, oldest->last_state_root};
    return {StepOutcome::kSubmitted, call};
}

void proposer_track(Proposer& proposer, std::uint64_t tx_id, const AcceptStateRootCall& call) {
    proposer.in_flight.emplace(tx_id, call.commitment.batch_id);
}

}  // namespace attseq
