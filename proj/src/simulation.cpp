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

#include <attseq/simulation.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <tuple>

#include <attseq/pcs.hpp>
#include <attseq/rollup.hpp>

namespace attseq {

std::string_view to_string(SimError e) {
    switch (e) {
        case SimError::kAlreadyStarted:
            return "AlreadyStarted";
        case SimError::kInvalidAdversary:
            return "InvalidAdversary";
    }
    return "unknown";
}

Address actor_address(std::string_view name) { return address_of_name("actor:" + std::string{name}); }

namespace {

    // Ordering of actions that share a timestamp.
    enum Phase : std::uint8_t {
        kL1Block = 0,
        kAdversary = 1,
        kDelivery = 2,
        kL2Tick = 3,
        kUserSubmit = 4,
    };

    struct Scheduled {
        std::uint64_t time;
        std::uint8_t phase;
        std::uint64_t seq;
        std::function<void()> fn;
    };

    struct Later {
        bool operator()(const Scheduled& a, const Scheduled& b) const {
            return std::tie(a.time, a.phase, a.seq) > std::tie(b.time, b.phase, b.seq);
        }
    };

    std::mt19937_64 stream(std::uint64_t seed, std::uint32_t id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), id};
        return std::mt19937_64{seq};
    }

    // Explicit conversions keep draws identical across standard library implementations.
    double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

    std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
        if (hi <= lo) return lo;
        return lo + rng() % (hi - lo + 1);
    }

    TamperMode tamper_for(AdversaryKind k) {
        switch (k) {
            case AdversaryKind::kForgedQuote:
                return TamperMode::kForgeSignature;
            case AdversaryKind::kStaleQuote:
                return TamperMode::kStaleTimestamp;
            case AdversaryKind::kMeasurementSwap:
                return TamperMode::kWrongMeasurement;
            default:
                return TamperMode::kNone;
        }
    }

    nlohmann::json hex_list(const std::vector<Digest>& ds) {
        auto arr = nlohmann::json::array();
        for (const auto& d : ds) arr.push_back(to_hex(d));
        return arr;
    }

}  // namespace

struct Simulation::Impl {
    ScenarioConfig cfg;
    Pcs pcs;
    L1Chain chain;
    SequencerNode node;
    RollupParams rp;
    Batcher batcher;
    Proposer proposer;

    Trace trace;
    std::uint64_t now{0};
    std::uint64_t duration_ms{0};
    std::priority_queue<Scheduled, std::vector<Scheduled>, Later> queue;
    std::uint64_t sched_seq{0};

    std::mt19937_64 workload_rng;
    std::mt19937_64 network_rng;
    std::map<std::string, std::uint64_t> link_last;
    std::map<std::pair<std::uint64_t, std::uint64_t>, L1Tx> l1_mempool;
    std::uint64_t next_l1_tx{1};
    std::uint64_t mempool_seq{0};

    Address operator_addr{actor_address("operator")};
    Address relay_addr{actor_address("pcs-relay")};
    std::vector<Address> users;
    std::vector<std::string> adversary_kinds;

    bool started{false};
    bool producing{true};
    std::uint64_t retry_not_before{0};
    std::uint64_t backoff_ms{0};
    std::optional<std::uint64_t> last_seen_outcome;
    std::uint64_t undelivered{0};

    Impl(const ScenarioConfig& c, Enclave enclave)
        : cfg{c},
          pcs{c.seed, c.protocol.cert_lifetime_s},
          chain{chain_params(c)},
          node{std::move(enclave), c.genesis_unix_s},
          workload_rng{stream(c.seed, 1)},
          network_rng{stream(c.seed, 2)} {
        rp.max_txs_per_block = cfg.protocol.max_txs_per_block;
        rp.batch_size_blocks = cfg.protocol.batch_size_blocks;
        rp.renewal_threshold_pct = cfg.protocol.renewal_threshold_pct;
        rp.quote_size_target = cfg.protocol.quote_size_target;
        rp.genesis_unix_s = cfg.genesis_unix_s;
        batcher.sequencer = node.address;
        proposer.sequencer = node.address;
        duration_ms = cfg.duration_s * 1000;
        backoff_ms = cfg.protocol.retry_backoff_s * 1000;
        for (std::uint32_t i = 0; i < cfg.workload.senders; ++i) {
            users.push_back(actor_address("user-" + std::to_string(i)));
        }
    }

    static ChainParams chain_params(const ScenarioConfig& c) {
        ChainParams p;
        p.block_time_s = c.protocol.l1_block_ms / 1000;
        p.genesis_unix_s = c.genesis_unix_s;
        p.rate_limit_blocks = c.protocol.rate_limit_blocks;
        p.required_bond_wei = c.protocol.required_bond_wei;
        p.slash_threshold_pct = c.protocol.slash_threshold_pct;
        p.challenge_window_blocks = c.protocol.challenge_window_blocks;
        p.gas_accounting = c.protocol.gas_accounting;
        return p;
    }

    [[nodiscard]] std::uint64_t unix_now() const { return cfg.genesis_unix_s + now / 1000; }
    [[nodiscard]] std::uint64_t batch_interval_ms() const {
        return cfg.protocol.l2_block_ms * cfg.protocol.batch_size_blocks;
    }

    void schedule(std::uint64_t at, Phase phase, std::function<void()> fn) {
        if (at >= duration_ms) return;
        queue.push(Scheduled{at, phase, sched_seq++, std::move(fn)});
    }

    void emit(std::string type, const Address& actor, const Digest& payload, nlohmann::json data,
              std::optional<std::string> reason = std::nullopt) {
        TraceEvent e;
        e.seq = trace.size();
        e.time_ms = now;
        e.block = chain.block_number();
        e.event_type = std::move(type);
        e.actor = actor_hex(actor);
        e.reason = std::move(reason);
        e.payload_hash = to_hex(payload);
        e.data = std::move(data);
        trace.push_back(std::move(e));
    }

    std::uint64_t link_arrival(const std::string& link) {
        const std::uint64_t delay = uniform_int(network_rng, cfg.network.delay_min_ms, cfg.network.delay_max_ms);
        auto& last = link_last[link];
        last = std::max(now + delay, last);
        return last;
    }

    std::uint64_t send_l1(const std::string& link, const Address& from, L1Call call) {
        const std::uint64_t arrival = link_arrival(link);
        const std::uint64_t id = next_l1_tx++;
        l1_mempool.emplace(std::pair{arrival, mempool_seq++}, L1Tx{id, from, std::move(call)});
        return id;
    }

    // ---- L1

    void l1_tick() {
        chain.advance_block();
        while (!l1_mempool.empty() && l1_mempool.begin()->first.first <= now) {
            L1Tx tx = std::move(l1_mempool.begin()->second);
            l1_mempool.erase(l1_mempool.begin());
            chain.apply(tx);
        }
        schedule(now + cfg.protocol.l1_block_ms, kL1Block, [this] { l1_tick(); });
    }

    // ---- users

    void generate_workload() {
        const auto& w = cfg.workload;
        double t_ms = static_cast<double>(w.start_s) * 1000.0;
        for (std::uint64_t i = 0; i < w.tx_count; ++i) {
            std::uint64_t at = 0;
            if (w.arrival == ArrivalPattern::kPoisson) {
                t_ms += -std::log(1.0 - uniform01(workload_rng)) / w.rate_per_s * 1000.0;
                at = static_cast<std::uint64_t>(t_ms);
            } else {
                at = w.burst_at_s * 1000;
            }
            if (at >= duration_ms) break;
            const auto sender = static_cast<std::uint32_t>(uniform_int(workload_rng, 0, w.senders - 1));
            ByteWriter id;
            id.prefixed(view_of("tx"));
            id.u64(cfg.seed);
            id.u64(i);
            Transaction tx{sha256(id.bytes()), users[sender], w.payload_bytes, at};
            schedule(at, kUserSubmit, [this, tx, sender] { submit_user_tx(tx, sender); });
        }
    }

    void submit_user_tx(const Transaction& tx, std::uint32_t sender) {
        const std::uint64_t arrival = link_arrival("user-" + std::to_string(sender));
        ++undelivered;
        emit("TxSubmitted", tx.sender, tx.id,
             {{"tx_id", to_hex(tx.id)}, {"sender_index", sender}, {"payload_bytes", tx.payload_size}});
        queue.push(Scheduled{arrival, kDelivery, sched_seq++, [this, tx] {
                                 --undelivered;
                                 node.mempool.push_back(tx);
                                 emit("TxQueued", tx.sender, tx.id, {{"tx_id", to_hex(tx.id)}});
                             }});
    }

    // ---- sequencer

    void l2_tick(std::uint64_t k) {
        produce();
        attest();
        if (k % cfg.protocol.batch_size_blocks == 0) {
            run_batcher();
            run_proposer();
        }
        schedule(now + cfg.protocol.l2_block_ms, kL2Tick, [this, k] { l2_tick(k + 1); });
    }

    void produce() {
        auto produced = produce_block(node, chain, now, rp);
        if (!produced) {
            if (producing) {
                producing = false;
                emit("ProductionPaused", node.address, node.head().block_hash, {{"head", node.head().height}},
                     std::string{to_string(produced.error())});
            }
            return;
        }
        if (!producing) {
            producing = true;
            emit("ProductionResumed", node.address, node.head().block_hash, {{"head", node.head().height}});
        }
        for (const auto& tx : produced->dropped) {
            emit("TxDropped", tx.sender, tx.id, {{"tx_id", to_hex(tx.id)}}, std::string{"Censored"});
        }
        const L2Block& b = produced->block;
        emit("L2BlockProduced", node.address, b.block_hash,
             {{"height", b.height},
              {"parent_hash", to_hex(b.parent_hash)},
              {"block_hash", to_hex(b.block_hash)},
              {"state_root", to_hex(b.state_root)},
              {"l1_origin", to_hex(b.l1_origin)},
              {"timestamp", b.timestamp},
              {"tx_ids", hex_list(b.tx_ids)}});
    }

    void attest() {
        const LoopDecision d = attestation_loop_step(node, chain, rp);
        const auto& outcome = node.attestation.last_outcome;
        if (outcome && outcome->tx_id != last_seen_outcome) {
            last_seen_outcome = outcome->tx_id;
            if (outcome->success) {
                retry_not_before = 0;
                backoff_ms = cfg.protocol.retry_backoff_s * 1000;
            } else {
                retry_not_before = now + backoff_ms;
                backoff_ms = std::min(backoff_ms * 2, cfg.protocol.retry_backoff_s * 1000 * 16);
            }
        }
        if (d.action != LoopAction::kSubmitQuote || now < retry_not_before) return;

        const L2Block& pending = pending_block_for_quote(node, batcher, chain, now, rp);
        const BlockProposal proposal = pending.proposal();
        SequencerMetadata meta = collect_metadata(node, pending, now, rp);
        if (node.metadata_tamper) meta.state_root[0] ^= 0x01;

        auto quote = node.enclave.generate_quote(meta, unix_now());
        if (!quote) {
            emit("EnclaveFault", node.address, Digest{}, nlohmann::json::object(),
                 std::string{to_string(quote.error())});
            return;
        }
        auto bytes = serialize_quote(*quote, rp.quote_size_target);
        if (!bytes) {
            emit("EnclaveFault", node.address, Digest{}, nlohmann::json::object(),
                 std::string{to_string(bytes.error())});
            return;
        }
        const Digest quote_hash = sha256(*bytes);
        if (cfg.protocol.gas_accounting == GasAccounting::kSplit) {
            send_l1("operator", node.address, SetQuoteVerifierCall{cfg.protocol.quote_version});
        }
        const std::uint64_t tx =
            send_l1("operator", node.address, SubmitQuoteCall{node.address, std::move(*bytes), proposal});
        node.attestation.in_flight_tx = tx;
        node.attestation.in_flight_cause = d.cause;
        node.attestation.ever_submitted = true;

        emit("QuoteGenerated", node.address, quote_hash,
             {{"nonce", quote->metadata.nonce},
              {"height", quote->metadata.block_height},
              {"tamper_mode", std::string{to_string(node.enclave.tamper_mode())}},
              {"metadata_tamper", node.metadata_tamper}});
        emit("QuoteSubmitted", node.address, quote_hash,
             {{"tx_id", tx}, {"cause", std::string{to_string(*d.cause)}}, {"height", proposal.height}});
    }

    void run_batcher() {
        BatcherStep step = batcher_step(batcher, node, chain, rp);
        if (step.outcome == StepOutcome::kWithheld) {
            emit("BatchWithheld", node.address, node.head().block_hash,
                 {{"next_height", batcher.next_height}, {"head", node.head().height}}, std::string{"NotAuthorized"});
            return;
        }
        for (auto& call : step.calls) {
            const Digest last = call.batch.headers.back().block_hash;
            const nlohmann::json data = {{"start", call.batch.start_height},
                                         {"end", call.batch.end_height},
                                         {"compressed_size", call.batch.compressed_size}};
            const std::uint64_t tx = send_l1("operator", node.address, call);
            batcher_track(batcher, tx, call);
            auto d = data;
            d["tx_id"] = tx;
            emit("BatchSubmitted", node.address, last, std::move(d));
        }
    }

    void run_proposer() {
        ProposerStep step = proposer_step(proposer, chain);
        if (step.outcome == StepOutcome::kWithheld) {
            emit("StateRootWithheld", node.address, Digest{}, nlohmann::json::object(), std::string{"NotAuthorized"});
            return;
        }
        if (step.outcome != StepOutcome::kSubmitted) return;
        const auto call = *step.call;
        const std::uint64_t tx = send_l1("operator", node.address, call);
        proposer_track(proposer, tx, call);
        emit("StateRootSubmitted", node.address, call.commitment.state_root,
             {{"tx_id", tx}, {"batch_id", call.commitment.batch_id}});
    }

    // ---- adversaries

    void announce(const AdversaryConfig& a, const Address& actor, nlohmann::json extra = nlohmann::json::object()) {
        extra["kind"] = std::string{to_string(a.kind)};
        extra["target"] = actor_hex(node.address);
        emit("AdversaryInjected", actor, sha256(to_string(a.kind)), std::move(extra));
    }

    void replay_once(const AdversaryConfig& a) {
        const Address attacker = actor_address("replayer");
        auto quote = chain.last_attested_quote(node.address);
        auto proposal = chain.last_attested_proposal(node.address);
        if (!quote) {
            // Nothing to replay yet; look again next L1 block.
            schedule(now + cfg.protocol.l1_block_ms, kAdversary, [this, a] { replay_once(a); });
            return;
        }
        const Digest h = sha256(*quote);
        send_l1("replayer", attacker, SubmitQuoteCall{node.address, *quote, proposal});
        if (proposal) {
            AcceptBatchCall batch;
            batch.sequencer = attacker;
            batch.batch.start_height = proposal->height;
            batch.batch.end_height = proposal->height;
            batch.batch.headers.push_back({proposal->height, proposal->parent_hash, proposal->block_hash,
                                           proposal->state_root});
            batch.batch.compressed_size = 32;
            send_l1("replayer", attacker, std::move(batch));
        }
        announce(a, attacker, {{"action", "replay"}, {"quote_hash", to_hex(h)}});
    }

    void revoke(const AdversaryConfig& a) {
        const auto serial = node.enclave.pck_serial();
        if (!serial) return;
        auto crl = pcs.revoke(*serial, unix_now());
        auto bundle = pcs.get_collateral(node.enclave.fmspc());
        if (!crl || !bundle) return;
        send_l1("pcs-relay", relay_addr, StoreCollateralCall{*bundle});
        announce(a, relay_addr, {{"action", "revoke"}, {"pck_serial", *serial}});
    }

    void renewal_request(const AdversaryConfig& a, const Address& from, const std::string& link, bool whitelisted) {
        RenewalRequest req;
        req.requester = from;
        req.sequencer = node.address;
        req.reason = static_cast<std::uint8_t>(RenewalReason::kSuspiciousActivity);
        req.bond_wei = cfg.protocol.required_bond_wei;
        const std::uint64_t tx = send_l1(link, from, RenewalRequestCall{req});
        emit("RenewalRequestSent", from, sha256(ByteView{node.address.data(), node.address.size()}),
             {{"tx_id", tx}, {"kind", std::string{to_string(a.kind)}}, {"from_whitelist", whitelisted}});
    }

    std::size_t inject(const AdversaryConfig& a) {
        adversary_kinds.emplace_back(to_string(a.kind));
        const std::uint64_t start = a.start_s * 1000;
        std::size_t scheduled = 0;
        auto at = [&](std::uint64_t t, std::function<void()> fn) {
            if (t >= duration_ms) return;
            schedule(t, kAdversary, std::move(fn));
            ++scheduled;
        };
        switch (a.kind) {
            case AdversaryKind::kForgedQuote:
            case AdversaryKind::kStaleQuote:
            case AdversaryKind::kMeasurementSwap:
                at(start, [this, a] {
                    node.enclave.set_tamper_mode(tamper_for(a.kind));
                    announce(a, node.address, {{"tamper_mode", std::string{to_string(tamper_for(a.kind))}}});
                });
                break;
            case AdversaryKind::kMetadataTamper:
                at(start, [this, a] {
                    node.metadata_tamper = true;
                    announce(a, node.address);
                });
                break;
            case AdversaryKind::kCensorship:
                at(start, [this, a] {
                    std::set<Address> censored;
                    for (auto s : a.senders) censored.insert(users[s]);
                    apply_censorship(node, [censored](const Transaction& tx) { return censored.contains(tx.sender); });
                    auto list = nlohmann::json::array();
                    for (auto s : a.senders) list.push_back(s);
                    announce(a, node.address, {{"senders", list}});
                });
                break;
            case AdversaryKind::kRevokedCollateral:
                at(start, [this, a] { revoke(a); });
                break;
            case AdversaryKind::kReplayQuote:
                for (std::uint64_t i = 0; i < a.count; ++i) {
                    at(start + i * a.interval_s * 1000, [this, a] { replay_once(a); });
                }
                break;
            case AdversaryKind::kSpuriousRenewalSpam: {
                at(start, [this, a] { announce(a, node.address, {{"spammers", a.spammers}}); });
                for (std::uint64_t j = 0; j < a.spammers; ++j) {
                    const std::string name = "spammer-" + std::to_string(j);
                    const Address addr = actor_address(name);
                    if (chain.balance(addr) == 0) chain.mint(addr, kWeiPerEth);
                    for (std::uint64_t t = start; t < duration_ms; t += a.interval_s * 1000) {
                        at(t, [this, a, addr, name] { renewal_request(a, addr, name, false); });
                    }
                }
                const Address requester = actor_address(a.requester);
                if (chain.balance(requester) == 0) chain.mint(requester, kWeiPerEth);
                const bool listed = std::find(cfg.protocol.whitelist.begin(), cfg.protocol.whitelist.end(),
                                              a.requester) != cfg.protocol.whitelist.end();
                for (auto s : a.whitelisted_requests_s) {
                    at(s * 1000, [this, a, requester, listed] {
                        renewal_request(a, requester, "requester:" + a.requester, listed);
                    });
                }
                break;
            }
        }
        return scheduled;
    }

    // ---- driver

    Trace run() {
        started = true;
        chain.set_observer([this](const LedgerEvent& e) { trace.push_back(trace_event_from_ledger(e, trace.size(), now)); });

        std::set<Address> whitelist;
        for (const auto& name : cfg.protocol.whitelist) {
            const Address a = actor_address(name);
            whitelist.insert(a);
            if (chain.balance(a) == 0) chain.mint(a, kWeiPerEth);
        }
        chain.set_whitelist(whitelist);

        PolicyView policy;
        policy.expected_mrenclave = node.enclave.mrenclave();
        policy.expected_mrsigner = node.enclave.mrsigner();
        policy.min_isv_svn = node.enclave.isv_svn();
        policy.freshness_drift_s = cfg.protocol.freshness_drift_s;
        policy.validity_window_blocks = cfg.protocol.validity_window_blocks;
        chain.configure(policy, pcs.root_public_key());

        const L2Block& genesis = node.chain.front();
        auto kinds = nlohmann::json::array();
        for (const auto& k : adversary_kinds) kinds.push_back(k);
        const std::uint64_t bound =
            (cfg.protocol.l1_block_ms + batch_interval_ms() - 1) / batch_interval_ms() + 1;
        emit("ScenarioStarted", operator_addr, sha256(to_config_text(cfg)),
             {{"name", cfg.name},
              {"seed", cfg.seed},
              {"duration_ms", duration_ms},
              {"sequencer", actor_hex(node.address)},
              {"l1_block_ms", cfg.protocol.l1_block_ms},
              {"l2_block_ms", cfg.protocol.l2_block_ms},
              {"batch_interval_ms", batch_interval_ms()},
              {"liveness_bound_steps", bound},
              {"validity_window_blocks", cfg.protocol.validity_window_blocks},
              {"l2_genesis_hash", to_hex(genesis.block_hash)},
              {"l2_genesis_state_root", to_hex(genesis.state_root)},
              {"total_supply", chain.total_supply()},
              {"adversaries", kinds}});

        (void)chain.deploy_attestation_suite(operator_addr);
        if (auto bundle = pcs.get_collateral(node.enclave.fmspc())) {
            (void)chain.store_collateral(*bundle, relay_addr);
        }
        (void)chain.set_quote_verifier(cfg.protocol.quote_version, operator_addr);

        schedule(cfg.protocol.l1_block_ms, kL1Block, [this] { l1_tick(); });
        schedule(0, kL2Tick, [this] { l2_tick(0); });
        generate_workload();

        while (!queue.empty()) {
            Scheduled next = queue.top();
            queue.pop();
            now = next.time;
            next.fn();
        }

        now = duration_ms;
        emit("ScenarioEnded", operator_addr, node.head().block_hash,
             {{"gas_total", chain.gas_spent_total()},
              {"total_supply", chain.total_supply()},
              {"burned_wei", chain.burned_wei()},
              {"pending_txs", node.mempool.size() + undelivered},
              {"l2_height", node.head().height},
              {"l1_block", chain.block_number()}});
        chain.set_observer({});
        return std::move(trace);
    }
};

Simulation::Simulation(std::unique_ptr<Impl> impl) : impl_{std::move(impl)} {}
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;
Simulation::~Simulation() = default;

Expected<Simulation, ConfigErrors> Simulation::create(const ScenarioConfig& cfg) {
    ConfigErrors errors = validate(cfg);
    if (!errors.empty()) return Unexpected{std::move(errors)};

    EnclaveConfig ec;
    ec.vendor_seed = cfg.enclave.vendor_seed;
    ec.instance_seed = cfg.enclave.instance_seed;
    ec.isv_svn = static_cast<std::uint16_t>(cfg.enclave.isv_svn);
    ec.quote_version = cfg.protocol.quote_version;
    ec.stale_offset_s = cfg.enclave.stale_offset_s;
    const std::string& image = cfg.enclave.code_image;
    auto enclave =
        Enclave::measure_and_boot(view_of(image), ec);
    if (!enclave) {
        return Unexpected{ConfigErrors{{"enclave.code_image", std::string{to_string(enclave.error())}}}};
    }
    auto impl = std::make_unique<Impl>(cfg, std::move(*enclave));
    if (auto p = impl->node.enclave.provision(impl->pcs, cfg.genesis_unix_s); !p) {
        return Unexpected{ConfigErrors{{"enclave", std::string{to_string(p.error())}}}};
    }
    impl->node.address = impl->node.enclave.address();
    return Simulation{std::move(impl)};
}

Expected<std::size_t, SimError> Simulation::inject_adversary(const AdversaryConfig& adversary) {
    if (impl_->started) return Unexpected{SimError::kAlreadyStarted};
    if (adversary.start_s > impl_->cfg.duration_s) return Unexpected{SimError::kInvalidAdversary};
    if (adversary.kind == AdversaryKind::kCensorship) {
        for (auto s : adversary.senders) {
            if (s >= impl_->users.size()) return Unexpected{SimError::kInvalidAdversary};
        }
    }
    return impl_->inject(adversary);
}

Expected<Trace, SimError> Simulation::run() {
    if (impl_->started) return Unexpected{SimError::kAlreadyStarted};
    return impl_->run();
}

Expected<Trace, ConfigErrors> run_scenario(const ScenarioConfig& cfg) {
    auto sim = Simulation::create(cfg);
    if (!sim) return Unexpected{sim.error()};
    for (const auto& a : cfg.adversaries) {
        if (auto r = sim->inject_adversary(a); !r) {
            return Unexpected{ConfigErrors{{"adversary", std::string{to_string(r.error())}}}};
        }
    }
    auto trace = sim->run();
    return std::move(*trace);
}

}  // namespace attseq
