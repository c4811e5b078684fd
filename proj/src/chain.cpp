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

#include <attseq/chain.hpp>

#include <sstream>

namespace attseq {

namespace {

    ChainRejection rejection(ChainError code) { return ChainRejection{code, std::nullopt}; }

    std::string hex0x(const Address& a) { return "0x" + to_hex(a); }

    Digest digest_of_u64s(std::initializer_list<std::uint64_t> values) {
        ByteWriter w;
        for (auto v : values) w.u64(v);
        return sha256(w.bytes());
    }

}  // namespace

std::string_view to_string(ChainError e) {
    switch (e) {
        case ChainError::kNotDeployed:
            return "NotDeployed";
        case ChainError::kAlreadyDeployed:
            return "AlreadyDeployed";
        case ChainError::kQuoteRejected:
            return "QuoteRejected";
        case ChainError::kNotWhitelisted:
            return "NotWhitelisted";
        case ChainError::kRateLimited:
            return "RateLimited";
        case ChainError::kBadReason:
            return "BadReason";
        case ChainError::kWrongBond:
            return "WrongBond";
        case ChainError::kInsufficientFunds:
            return "InsufficientFunds";
        case ChainError::kNotAuthorized:
            return "NotAuthorized";
        case ChainError::kUnknownBatch:
            return "UnknownBatch";
        case ChainError::kBadBatchRange:
            return "BadBatchRange";
        case ChainError::kDuplicateCommitment:
            return "DuplicateCommitment";
    }
    return "unknown";
}

std::string_view ChainRejection::name() const {
    if (code == ChainError::kQuoteRejected && quote_reason) {
        return to_string(*quote_reason);
    }
    return to_string(code);
}

nlohmann::json to_json(const LedgerEvent& e) {
    nlohmann::json j;
    j["block"] = e.block;
    j["event_type"] = e.event_type;
    j["actor"] = hex0x(e.actor);
    j["gas"] = e.gas;
    j["reason"] = e.reason ? nlohmann::json(*e.reason) : nlohmann::json(nullptr);
    j["payload_hash"] = to_hex(e.payload_hash);
    j["data"] = e.data;
    return j;
}

L1Chain::L1Chain(ChainParams params, GasModel gas) : params_{params}, gas_{std::move(gas)} {
    L1Block genesis;
    genesis.number = 0;
    genesis.time_s = params_.genesis_unix_s;
    genesis.hash = sha256(std::string_view{"l1-genesis"});
    blocks_.push_back(genesis);
    block_hashes_.insert(genesis.hash);
}

const L1Block& L1Chain::advance_block() {
    const L1Block& prev = blocks_.back();
    L1Block next;
    next.number = prev.number + 1;
    next.time_s = prev.time_s + params_.block_time_s;
    ByteWriter w;
    w.raw(prev.hash);
    w.u64(next.number);
    w.u64(next.time_s);
    next.hash = sha256(w.bytes());
    blocks_.push_back(next);
    block_hashes_.insert(next.hash);

    while (next_to_finalize_ < state_roots_.size()) {
        auto& root = state_roots_[next_to_finalize_];
        if (root.submitted_block + params_.challenge_window_blocks > next.number) {
            break;
        }
        root.status = CommitmentStatus::kFinal;
        LedgerEvent e;
        e.block = next.number;
        e.event_type = "StateRootFinalized";
        e.actor = root.sequencer;
        e.payload_hash = root.state_root;
        e.data = {{"commitment_id", root.id}, {"batch_id", root.batch_id}};
        emit(std::move(e));
        ++next_to_finalize_;
    }
    return blocks_.back();
}

void L1Chain::mint(const Address& to, std::uint64_t wei) {
    balances_[to] += wei;
    total_supply_ += wei;
}

std::uint64_t L1Chain::balance(const Address& a) const {
    auto it = balances_.find(a);
    return it == balances_.end() ? 0 : it->second;
}

void L1Chain::configure(const PolicyView& policy, const PublicKey& trust_anchor) {
    policy_ = policy;
    trust_anchor_ = trust_anchor;
}

void L1Chain::emit(LedgerEvent e) {
    gas_spent_total_ += e.gas;
    events_.push_back(std::move(e));
    if (observer_) {
        observer_(events_.back());
    }
}

std::uint64_t L1Chain::quote_gas(std::size_t size) const {
    auto g = params_.gas_accounting == GasAccounting::kSplit ? gas_.split_verify_gas(size) : gas_.verify_gas(size);
    return g ? *g : intrinsic_gas(size);
}

Expected<DeploymentReceipt, ChainRejection> L1Chain::deploy_attestation_suite(const Address& deployer) {
    if (deployed_) {
        return Unexpected{rejection(ChainError::kAlreadyDeployed)};
    }
    DeploymentReceipt receipt;
    for (const auto& c : gas_.deploy_costs) {
        LedgerEvent e;
        e.block = block_number();
        e.event_type = "ContractDeployed";
        e.actor = deployer;
        e.gas = c.gas;
        e.payload_hash = sha256(c.name);
        e.data = {{"contract", c.name}};
        emit(std::move(e));
        receipt.contracts.emplace_back(c.name, c.gas);
        receipt.total_gas += c.gas;
    }
    deployed_ = true;
    return receipt;
}

Expected<std::uint64_t, ChainRejection> L1Chain::store_collateral(const CollateralBundle& bundle, const Address& from) {
    if (!deployed_) {
        return Unexpected{rejection(ChainError::kNotDeployed)};
    }
    const std::uint64_t id = collateral_.size();
    collateral_.push_back(bundle);
    if (bundle.pck_cert) {
        pck_by_serial_[bundle.pck_cert->serial] = *bundle.pck_cert;
    }
    tcb_by_fmspc_[bundle.tcb_info.fmspc] = bundle.tcb_info;
    latest_collateral_by_fmspc_[bundle.tcb_info.fmspc] = id;
    if (!crl_ || bundle.crl.issued_at >= crl_->issued_at) {
        crl_ = bundle.crl;
    }

    LedgerEvent e;
    e.block = block_number();
    e.event_type = "CollateralStored";
    e.actor = from;
    e.payload_hash = tcb_info_digest(bundle.tcb_info);
    e.data = {{"collateral_id", id},
              {"fmspc", to_hex(bundle.tcb_info.fmspc)},
              {"tcb_status", std::string{to_string(bundle.tcb_info.status)}},
              {"revoked_serials", bundle.crl.revoked_serials.size()}};
    emit(std::move(e));
    on_crl_update(*crl_);
    return id;
}

void L1Chain::on_crl_update(const Crl& crl) {
    for (auto& [addr, st] : sequencers_) {
        if (st.record && crl.revoked_serials.contains(st.record->pck_serial)) {
            LedgerEvent e;
            e.block = block_number();
            e.event_type = "RecordRevoked";
            e.actor = addr;
            e.reason = "RevokedPck";
            e.payload_hash = st.record->quote_hash;
            e.data = {{"pck_serial", st.record->pck_serial}};
            st.record.reset();
            emit(std::move(e));
        }
    }
}

Expected<std::uint64_t, ChainRejection> L1Chain::set_quote_verifier(QuoteVersion version, const Address& from) {
    if (!deployed_) {
        return Unexpected{rejection(ChainError::kNotDeployed)};
    }
    verifiers_.insert(version);
    LedgerEvent e;
    e.block = block_number();
    e.event_type = "QuoteVerifierSet";
    e.actor = from;
    e.gas = gas_.set_verifier_cost;
    e.payload_hash = digest_of_u64s({static_cast<std::uint64_t>(version)});
    e.data = {{"version", std::string{to_string(version)}}};
    emit(std::move(e));
    return gas_.set_verifier_cost;
}

Expected<AttestationRecord, ChainRejection> L1Chain::submit_quote(const Address& sequencer, ByteView quote_bytes,
                                                                  const std::optional<BlockProposal>& proposal,
                                                                  const Address& from) {
    LedgerEvent e;
    e.block = block_number();
    e.actor = from;
    e.payload_hash = sha256(quote_bytes);
    e.data = {{"sequencer", hex0x(sequencer)}, {"quote_size", quote_bytes.size()}};

    if (!deployed_) {
        e.event_type = "QuoteRejected";
        e.gas = intrinsic_gas(quote_bytes.size());
        e.reason = std::string{to_string(ChainError::kNotDeployed)};
        emit(std::move(e));
        return Unexpected{rejection(ChainError::kNotDeployed)};
    }

    SequencerState& st = sequencers_[sequencer];

    VerificationInputs in;
    in.trust_anchor = trust_anchor_;
    in.policy = policy_;
    in.routed_versions = verifiers_;
    in.now_s = block_time_s();
    in.crl = crl_;
    if (auto parsed = parse_quote(quote_bytes)) {
        if (auto it = pck_by_serial_.find(parsed->collateral_ref.pck_serial); it != pck_by_serial_.end()) {
            in.pck_cert = it->second;
        }
        if (auto it = tcb_by_fmspc_.find(parsed->collateral_ref.fmspc); it != tcb_by_fmspc_.end()) {
            in.tcb_info = it->second;
        }
        e.data["nonce"] = parsed->metadata.nonce;
        e.data["height"] = parsed->metadata.block_height;
    }
    if (st.ever_attested) {
        in.last_nonce = st.last_nonce;
        in.expected_height = st.l2_head + 1;
    }
    in.claimed_sequencer = sequencer;
    // The proposal travels as calldata; an absent proposal cannot match any metadata.
    in.proposal = proposal ? *proposal : BlockProposal{~std::uint64_t{0}, {}, {}, {}};
    in.expected_parent = st.last_published_hash;
    in.l1_origin_known = [this](const Digest& h) { return knows_block_hash(h); };

    e.gas = quote_gas(quote_bytes.size());
    auto verdict = verify_quote(quote_bytes, in);
    if (!verdict) {
        e.event_type = "QuoteRejected";
        e.reason = std::string{to_string(verdict.error())};
        emit(std::move(e));
        return Unexpected{ChainRejection{ChainError::kQuoteRejected, verdict.error()}};
    }

    const Quote& q = *verdict;
    const bool renewal = st.ever_attested;
    AttestationRecord rec;
    rec.sequencer = sequencer;
    rec.quote_hash = sha256(quote_bytes);
    rec.attested_block = block_number();
    rec.expiration_block = block_number() + policy_.validity_window_blocks;
    rec.last_nonce = q.metadata.nonce;
    rec.pck_serial = q.collateral_ref.pck_serial;
    rec.attested_metadata = q.metadata;

    if (!st.ever_attested) {
        st.l2_head = q.metadata.block_height > 0 ? q.metadata.block_height - 1 : 0;
    }
    st.ever_attested = true;
    st.last_nonce = q.metadata.nonce;
    st.record = rec;
    st.renewal_demand = false;
    st.last_quote.assign(quote_bytes.begin(), quote_bytes.end());
    st.last_proposal = proposal;

    e.event_type = "QuoteAttested";
    e.data["expiration_block"] = rec.expiration_block;
    e.data["renewal"] = renewal;
    e.data["pck_serial"] = rec.pck_serial;
    emit(std::move(e));
    return rec;
}

Expected<BondOutcome, ChainRejection> L1Chain::request_fresh_attestation(const RenewalRequest& req) {
    LedgerEvent e;
    e.block = block_number();
    e.actor = req.requester;
    e.gas = intrinsic_gas(20 + 1 + 32);
    e.payload_hash = sha256(ByteView{req.sequencer.data(), req.sequencer.size()});
    e.data = {{"sequencer", hex0x(req.sequencer)}, {"reason_code", req.reason}, {"bond_wei", req.bond_wei}};

    auto reject = [&](ChainError code) -> Expected<BondOutcome, ChainRejection> {
        e.event_type = "RenewalRejected";
        e.reason = std::string{to_string(code)};
        emit(std::move(e));
        return Unexpected{rejection(code)};
    };

    if (!deployed_) return reject(ChainError::kNotDeployed);
    if (!whitelist_.contains(req.requester)) return reject(ChainError::kNotWhitelisted);
    SequencerState& st = sequencers_[req.sequencer];
    if (st.last_renewal_request_block && block_number() - *st.last_renewal_request_block < params_.rate_limit_blocks) {
        return reject(ChainError::kRateLimited);
    }
    if (req.reason > static_cast<std::uint8_t>(RenewalReason::kOther)) return reject(ChainError::kBadReason);
    if (req.bond_wei != params_.required_bond_wei) return reject(ChainError::kWrongBond);
    if (balance(req.requester) < req.bond_wei) return reject(ChainError::kInsufficientFunds);

    balances_[req.requester] -= req.bond_wei;
    st.last_renewal_request_block = block_number();
    st.renewal_demand = true;

    std::uint64_t remaining = 0;
    if (st.record && st.record->expiration_block >= block_number()) {
        remaining = st.record->expiration_block - block_number();
    }
    const bool slash = remaining * 100 > params_.slash_threshold_pct * policy_.validity_window_blocks;

    e.event_type = "RenewalRequested";
    e.data["remaining_blocks"] = remaining;
    emit(std::move(e));

    LedgerEvent bond;
    bond.block = block_number();
    bond.actor = req.requester;
    bond.payload_hash = sha256(ByteView{req.sequencer.data(), req.sequencer.size()});
    bond.data = {{"bond_wei", req.bond_wei}, {"sequencer", hex0x(req.sequencer)}};
    if (slash) {
        total_supply_ -= req.bond_wei;
        burned_ += req.bond_wei;
        bond.event_type = "BondSlashed";
    } else {
        balances_[req.requester] += req.bond_wei;
        bond.event_type = "BondRefunded";
    }
    emit(std::move(bond));
    return slash ? BondOutcome::kSlashed : BondOutcome::kRefunded;
}

bool L1Chain::is_authorized(const Address& sequencer, std::uint64_t at_block) const {
    auto it = sequencers_.find(sequencer);
    return it != sequencers_.end() && it->second.record && it->second.record->expiration_block >= at_block;
}

Expected<PublishedBatch, ChainRejection> L1Chain::accept_batch(const Address& sequencer,
                                                               const BatchSubmission& batch) {
    LedgerEvent e;
    e.block = block_number();
    e.actor = sequencer;
    e.gas = intrinsic_gas(batch.compressed_size);
    e.payload_hash = batch.headers.empty() ? Digest{} : batch.headers.back().block_hash;
    e.data = {{"start", batch.start_height}, {"end", batch.end_height}, {"compressed_size", batch.compressed_size}};

    auto reject = [&](ChainError code) -> Expected<PublishedBatch, ChainRejection> {
        e.event_type = "BatchRejected";
        e.reason = std::string{to_string(code)};
        emit(std::move(e));
        return Unexpected{rejection(code)};
    };

    if (!deployed_) return reject(ChainError::kNotDeployed);
    if (!is_authorized(sequencer, block_number())) return reject(ChainError::kNotAuthorized);

    SequencerState& st = sequencers_[sequencer];
    const bool range_ok = batch.start_height == st.l2_head + 1 && batch.end_height >= batch.start_height &&
                          batch.headers.size() == batch.end_height - batch.start_height + 1;
    if (!range_ok) return reject(ChainError::kBadBatchRange);
    std::optional<Digest> parent = st.last_published_hash;
    for (std::size_t i = 0; i < batch.headers.size(); ++i) {
        const auto& h = batch.headers[i];
        if (h.height != batch.start_height + i || (parent && h.parent_hash != *parent)) {
            return reject(ChainError::kBadBatchRange);
        }
        parent = h.block_hash;
    }

    PublishedBatch pb;
    pb.id = batches_.size();
    pb.sequencer = sequencer;
    pb.start_height = batch.start_height;
    pb.end_height = batch.end_height;
    pb.compressed_size = batch.compressed_size;
    pb.block = block_number();
    pb.last_block_hash = batch.headers.back().block_hash;
    pb.last_state_root = batch.headers.back().state_root;
    batches_.push_back(pb);
    st.l2_head = batch.end_height;
    st.last_published_hash = pb.last_block_hash;

    e.event_type = "BatchPublished";
    e.data["batch_id"] = pb.id;
    emit(std::move(e));
    return pb;
}

Expected<StateRootRecord, ChainRejection> L1Chain::accept_state_root(const Address& sequencer,
                                                                     const StateRootCommitment& commitment) {
    LedgerEvent e;
    e.block = block_number();
    e.actor = sequencer;
    e.gas = intrinsic_gas(8 + 32);
    e.payload_hash = commitment.state_root;
    e.data = {{"batch_id", commitment.batch_id}};

    auto reject = [&](ChainError code) -> Expected<StateRootRecord, ChainRejection> {
        e.event_type = "StateRootRejected";
        e.reason = std::string{to_string(code)};
        emit(std::move(e));
        return Unexpected{rejection(code)};
    };

    if (!deployed_) return reject(ChainError::kNotDeployed);
    if (!is_authorized(sequencer, block_number())) return reject(ChainError::kNotAuthorized);
    if (commitment.batch_id >= batches_.size() || batches_[commitment.batch_id].sequencer != sequencer) {
        return reject(ChainError::kUnknownBatch);
    }
    if (has_commitment_for(commitment.batch_id)) return reject(ChainError::kDuplicateCommitment);

    StateRootRecord rec;
    rec.id = state_roots_.size();
    rec.batch_id = commitment.batch_id;
    rec.sequencer = sequencer;
    rec.state_root = commitment.state_root;
    rec.submitted_block = block_number();
    state_roots_.push_back(rec);
    committed_batches_.insert(rec.batch_id);

    e.event_type = "StateRootProposed";
    e.data["commitment_id"] = rec.id;
    e.data["final_at_block"] = rec.submitted_block + params_.challenge_window_blocks;
    emit(std::move(e));
    return rec;
}

TxReceipt L1Chain::apply(const L1Tx& tx) {
    TxReceipt r;
    r.tx_id = tx.id;
    r.block = block_number();
    auto settle = [&r](const auto& outcome) {
        r.success = outcome.has_value();
        if (!outcome) r.rejection = outcome.error();
    };
    std::visit(
        [&](const auto& call) {
            using T = std::decay_t<decltype(call)>;
            if constexpr (std::is_same_v<T, SubmitQuoteCall>) {
                settle(submit_quote(call.sequencer, call.quote_bytes, call.proposal, tx.from));
            } else if constexpr (std::is_same_v<T, SetQuoteVerifierCall>) {
                settle(set_quote_verifier(call.version, tx.from));
            } else if constexpr (std::is_same_v<T, StoreCollateralCall>) {
                settle(store_collateral(call.bundle, tx.from));
            } else if constexpr (std::is_same_v<T, RenewalRequestCall>) {
                RenewalRequest req = call.request;
                req.requester = tx.from;
                settle(request_fresh_attestation(req));
            } else if constexpr (std::is_same_v<T, AcceptBatchCall>) {
                // The inbox only accepts data from the sequencer's own account.
                settle(accept_batch(tx.from, call.batch));
            } else if constexpr (std::is_same_v<T, AcceptStateRootCall>) {
                settle(accept_state_root(tx.from, call.commitment));
            }
        },
        tx.call);
    receipts_[tx.id] = r;
    return r;
}

std::optional<TxReceipt> L1Chain::receipt(std::uint64_t tx_id) const {
    auto it = receipts_.find(tx_id);
    if (it == receipts_.end()) return std::nullopt;
    return it->second;
}

std::optional<AttestationRecord> L1Chain::record(const Address& sequencer) const {
    auto it = sequencers_.find(sequencer);
    if (it == sequencers_.end()) return std::nullopt;
    return it->second.record;
}

bool L1Chain::renewal_demanded(const Address& sequencer) const {
    auto it = sequencers_.find(sequencer);
    return it != sequencers_.end() && it->second.renewal_demand;
}

std::uint64_t L1Chain::l2_head(const Address& sequencer) const {
    auto it = sequencers_.find(sequencer);
    return it == sequencers_.end() ? 0 : it->second.l2_head;
}

std::optional<Bytes> L1Chain::last_attested_quote(const Address& sequencer) const {
    auto it = sequencers_.find(sequencer);
    if (it == sequencers_.end() || it->second.last_quote.empty()) return std::nullopt;
    return it->second.last_quote;
}

std::optional<BlockProposal> L1Chain::last_attested_proposal(const Address& sequencer) const {
    auto it = sequencers_.find(sequencer);
    if (it == sequencers_.end()) return std::nullopt;
    return it->second.last_proposal;
}

std::optional<CollateralBundle> L1Chain::collateral(std::uint64_t id) const {
    if (id >= collateral_.size()) return std::nullopt;
    return collateral_[id];
}

std::optional<CollateralBundle> L1Chain::latest_collateral(const Fmspc& fmspc) const {
    auto it = latest_collateral_by_fmspc_.find(fmspc);
    if (it == latest_collateral_by_fmspc_.end()) return std::nullopt;
    return collateral_[it->second];
}

std::optional<CommitmentStatus> L1Chain::state_root_status(std::uint64_t id) const {
    if (id >= state_roots_.size()) return std::nullopt;
    return state_roots_[id].status;
}

bool L1Chain::has_commitment_for(std::uint64_t batch_id) const { return committed_batches_.contains(batch_id); }

std::string L1Chain::export_event_log() const {
    std::ostringstream out;
    for (const auto& e : events_) {
        out << to_json(e).dump() << '\n';
    }
    return out.str();
}

}  // namespace attseq
