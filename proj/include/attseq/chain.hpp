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
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include <attseq/attestation.hpp>
#include <attseq/bytes.hpp>
#include <attseq/expected.hpp>
#include <attseq/gas_model.hpp>
#include <attseq/verifier.hpp>

namespace attseq {

inline constexpr std::uint64_t kWeiPerEth{1'000'000'000'000'000'000ULL};

enum class GasAccounting {
    kCumulative,  // each submission pays the calibrated total
    kSplit,       // submission and verifier registration are charged as two transactions
};

struct ChainParams {
    std::uint64_t block_time_s{12};
    std::uint64_t genesis_unix_s{1'700'000'000};
    std::uint64_t rate_limit_blocks{150};
    std::uint64_t required_bond_wei{kWeiPerEth / 10};
    std::uint64_t slash_threshold_pct{50};
    std::uint64_t challenge_window_blocks{50'400};
    GasAccounting gas_accounting{GasAccounting::kCumulative};
};

enum class ChainError {
    kNotDeployed,
    kAlreadyDeployed,
    kQuoteRejected,
    kNotWhitelisted,
    kRateLimited,
    kBadReason,
    kWrongBond,
    kInsufficientFunds,
    kNotAuthorized,
    kUnknownBatch,
    kBadBatchRange,
    kDuplicateCommitment,
};

struct ChainRejection {
    ChainError code;
    std::optional<RejectReason> quote_reason;

    // Quote reason name when the quote verifier rejected, else the code name.
    [[nodiscard]] std::string_view name() const;
    bool operator==(const ChainRejection&) const = default;
};

std::string_view to_string(ChainError e);

struct LedgerEvent {
    std::uint64_t block{0};
    std::string event_type;
    Address actor{};
    std::uint64_t gas{0};
    std::optional<std::string> reason;
    Digest payload_hash{};
    nlohmann::json data = nlohmann::json::object();
};

// {"block","event_type","actor","gas","reason","payload_hash"} plus "data".
nlohmann::json to_json(const LedgerEvent& e);

struct AttestationRecord {
    Address sequencer{};
    Digest quote_hash{};
    std::uint64_t attested_block{0};
    std::uint64_t expiration_block{0};
    std::uint64_t last_nonce{0};
    std::uint64_t pck_serial{0};
    SequencerMetadata attested_metadata;

    bool operator==(const AttestationRecord&) const = default;
};

enum class RenewalReason : std::uint8_t {
    kSuspiciousActivity = 0,
    kConfigChange = 1,
    kOther = 2,
};

struct RenewalRequest {
    Address requester{};
    Address sequencer{};
    std::uint8_t reason{0};  // RenewalReason wire code
    std::uint64_t bond_wei{0};
};

enum class BondOutcome {
    kRefunded,
    kSlashed,
};

struct BlockHeaderSummary {
    std::uint64_t height{0};
    Digest parent_hash{};
    Digest block_hash{};
    Digest state_root{};

    bool operator==(const BlockHeaderSummary&) const = default;
};

struct BatchSubmission {
    std::uint64_t start_height{0};
    std::uint64_t end_height{0};
    std::uint64_t compressed_size{0};
    std::vector<BlockHeaderSummary> headers;
};

struct PublishedBatch {
    std::uint64_t id{0};
    Address sequencer{};
    std::uint64_t start_height{0};
    std::uint64_t end_height{0};
    std::uint64_t compressed_size{0};
    std::uint64_t block{0};
    Digest last_block_hash{};
    Digest last_state_root{};
};

struct StateRootCommitment {
    std::uint64_t batch_id{0};
    Digest state_root{};
};

enum class CommitmentStatus {
    kPending,
    kFinal,
};

struct StateRootRecord {
    std::uint64_t id{0};
    std::uint64_t batch_id{0};
    Address sequencer{};
    Digest state_root{};
    std::uint64_t submitted_block{0};
    CommitmentStatus status{CommitmentStatus::kPending};
};

struct DeploymentReceipt {
    std::vector<std::pair<std::string, std::uint64_t>> contracts;
    std::uint64_t total_gas{0};
};

struct L1Block {
    std::uint64_t number{0};
    std::uint64_t time_s{0};
    Digest hash{};
};

// Wire-level transaction calls delivered to the chain through the simulated network.
struct SubmitQuoteCall {
    Address sequencer{};
    Bytes quote_bytes;
    std::optional<BlockProposal> proposal;
};
struct SetQuoteVerifierCall {
    QuoteVersion version{QuoteVersion::kV4};
};
struct StoreCollateralCall {
    CollateralBundle bundle;
};
struct RenewalRequestCall {
    RenewalRequest request;
};
struct AcceptBatchCall {
    Address sequencer{};
    BatchSubmission batch;
};
struct AcceptStateRootCall {
    Address sequencer{};
    StateRootCommitment commitment;
};

using L1Call = std::variant<SubmitQuoteCall, SetQuoteVerifierCall, StoreCollateralCall, RenewalRequestCall,
                            AcceptBatchCall, AcceptStateRootCall>;

struct L1Tx {
    std::uint64_t id{0};
    Address from{};
    L1Call call;
};

struct TxReceipt {
    std::uint64_t tx_id{0};
    std::uint64_t block{0};
    bool success{false};
    std::optional<ChainRejection> rejection;
};

// Deterministic L1 ledger hosting the attestation contract suite, the registry and the
// rollup inbox as one state machine. All mutations happen in the caller's order.
class L1Chain {
  public:
    using EventObserver = std::function<void(const LedgerEvent&)>;

    explicit L1Chain(ChainParams params = {}, GasModel gas = GasModel::calibrated());

    // ---- block production
    const L1Block& advance_block();
    [[nodiscard]] const L1Block& head() const noexcept { return blocks_.back(); }
    [[nodiscard]] std::uint64_t block_number() const noexcept { return head().number; }
    [[nodiscard]] std::uint64_t block_time_s() const noexcept { return head().time_s; }
    [[nodiscard]] bool knows_block_hash(const Digest& h) const { return block_hashes_.contains(h); }

    // ---- accounts
    void mint(const Address& to, std::uint64_t wei);
    [[nodiscard]] std::uint64_t balance(const Address& a) const;
    [[nodiscard]] std::uint64_t total_supply() const noexcept { return total_supply_; }
    [[nodiscard]] std::uint64_t burned_wei() const noexcept { return burned_; }

    // ---- governance (no gas)
    void configure(const PolicyView& policy, const PublicKey& trust_anchor);
    void set_whitelist(std::set<Address> whitelist) { whitelist_ = std::move(whitelist); }

    // ---- contract suite
    Expected<DeploymentReceipt, ChainRejection> deploy_attestation_suite(const Address& deployer);
    Expected<std::uint64_t, ChainRejection> store_collateral(const CollateralBundle& bundle, const Address& from);
    Expected<std::uint64_t, ChainRejection> set_quote_verifier(QuoteVersion version, const Address& from);
    Expected<AttestationRecord, ChainRejection> submit_quote(const Address& sequencer, ByteView quote_bytes,
                                                             const std::optional<BlockProposal>& proposal,
                                                             const Address& from);
    Expected<BondOutcome, ChainRejection> request_fresh_attestation(const RenewalRequest& req);
    Expected<PublishedBatch, ChainRejection> accept_batch(const Address& sequencer, const BatchSubmission& batch);
    Expected<StateRootRecord, ChainRejection> accept_state_root(const Address& sequencer,
                                                                const StateRootCommitment& commitment);

    // Dispatches a delivered transaction and records its receipt.
    TxReceipt apply(const L1Tx& tx);
    [[nodiscard]] std::optional<TxReceipt> receipt(std::uint64_t tx_id) const;

    // ---- views
    [[nodiscard]] bool deployed() const noexcept { return deployed_; }
    [[nodiscard]] bool is_authorized(const Address& sequencer, std::uint64_t at_block) const;
    [[nodiscard]] std::optional<AttestationRecord> record(const Address& sequencer) const;
    [[nodiscard]] bool renewal_demanded(const Address& sequencer) const;
    [[nodiscard]] std::uint64_t l2_head(const Address& sequencer) const;
    [[nodiscard]] std::optional<Bytes> last_attested_quote(const Address& sequencer) const;
    [[nodiscard]] std::optional<BlockProposal> last_attested_proposal(const Address& sequencer) const;
    [[nodiscard]] std::optional<CollateralBundle> collateral(std::uint64_t id) const;
    [[nodiscard]] std::optional<CollateralBundle> latest_collateral(const Fmspc& fmspc) const;
    [[nodiscard]] const std::vector<PublishedBatch>& batches() const noexcept { return batches_; }
    [[nodiscard]] const std::vector<StateRootRecord>& state_roots() const noexcept { return state_roots_; }
    [[nodiscard]] std::optional<CommitmentStatus> state_root_status(std::uint64_t id) const;
    [[nodiscard]] bool has_commitment_for(std::uint64_t batch_id) const;
    [[nodiscard]] const std::set<QuoteVersion>& verifiers() const noexcept { return verifiers_; }

    [[nodiscard]] const std::vector<LedgerEvent>& events() const noexcept { return events_; }
    [[nodiscard]] std::uint64_t gas_spent_total() const noexcept { return gas_spent_total_; }
    [[nodiscard]] const ChainParams& params() const noexcept { return params_; }
    [[nodiscard]] const GasModel& gas_model() const noexcept { return gas_; }

    void set_observer(EventObserver obs) { observer_ = std::move(obs); }

    // JSON-lines export of the event log.
    [[nodiscard]] std::string export_event_log() const;

  private:
    struct SequencerState {
        std::optional<AttestationRecord> record;
        bool ever_attested{false};
        std::uint64_t last_nonce{0};
        std::uint64_t l2_head{0};
        std::optional<Digest> last_published_hash;
        bool renewal_demand{false};
        std::optional<std::uint64_t> last_renewal_request_block;
        Bytes last_quote;
        std::optional<BlockProposal> last_proposal;
    };

    void emit(LedgerEvent e);
    void on_crl_update(const Crl& crl);
    [[nodiscard]] std::uint64_t quote_gas(std::size_t size) const;

    ChainParams params_;
    GasModel gas_;

    std::vector<L1Block> blocks_;
    std::set<Digest> block_hashes_;
    std::map<Address, std::uint64_t> balances_;
    std::uint64_t total_supply_{0};
    std::uint64_t burned_{0};

    bool deployed_{false};
    PolicyView policy_;
    PublicKey trust_anchor_{};
    std::set<Address> whitelist_;
    std::set<QuoteVersion> verifiers_;

    std::vector<CollateralBundle> collateral_;
    std::map<std::uint64_t, PckCert> pck_by_serial_;
    std::optional<Crl> crl_;
    std::map<Fmspc, TcbInfo> tcb_by_fmspc_;
    std::map<Fmspc, std::uint64_t> latest_collateral_by_fmspc_;

    std::map<Address, SequencerState> sequencers_;
    std::vector<PublishedBatch> batches_;
    std::vector<StateRootRecord> state_roots_;
    std::set<std::uint64_t> committed_batches_;
    std::size_t next_to_finalize_{0};
    std::map<std::uint64_t, TxReceipt> receipts_;

    std::vector<LedgerEvent> events_;
    std::uint64_t gas_spent_total_{0};
    EventObserver observer_;
};

}  // namespace attseq
