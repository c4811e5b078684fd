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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <attseq/attestation.hpp>
#include <attseq/chain.hpp>
#include <attseq/expected.hpp>

namespace attseq {

enum class AdversaryKind {
    kForgedQuote,
    kReplayQuote,
    kStaleQuote,
    kRevokedCollateral,
    kMeasurementSwap,
    kMetadataTamper,
    kCensorship,
    kSpuriousRenewalSpam,
};

std::string_view to_string(AdversaryKind k);
std::optional<AdversaryKind> adversary_kind_from_string(std::string_view s);

enum class ArrivalPattern {
    kPoisson,
    kBurst,
};

// Workload sizes the experiments sweep over.
inline constexpr std::array<std::uint64_t, 7> kTxCounts{10, 50, 100, 200, 300, 500, 1000};
inline constexpr std::array<std::uint64_t, 7> kPayloadSizes{100, 300, 500, 1000, 2000, 3000, 5000};

struct WorkloadConfig {
    std::uint64_t tx_count{100};
    std::uint32_t payload_bytes{500};
    ArrivalPattern arrival{ArrivalPattern::kPoisson};
    double rate_per_s{1.0};
    std::uint64_t start_s{30};
    std::uint64_t burst_at_s{30};
    std::uint32_t senders{10};
};

struct ProtocolConfig {
    std::uint64_t validity_window_blocks{1200};
    std::uint64_t renewal_threshold_pct{20};
    std::uint64_t freshness_drift_s{60};
    std::uint64_t rate_limit_blocks{150};
    std::uint64_t required_bond_wei{kWeiPerEth / 10};
    std::uint64_t slash_threshold_pct{50};
    std::uint64_t quote_size_target{kDefaultQuoteSize};
    QuoteVersion quote_version{QuoteVersion::kV4};
    std::uint64_t challenge_window_blocks{50'400};
    std::uint64_t max_txs_per_block{100};
    std::uint64_t batch_size_blocks{5};
    GasAccounting gas_accounting{GasAccounting::kCumulative};
    std::uint64_t cert_lifetime_s{30ULL * 86'400};
    std::vector<std::string> whitelist{"validator-1"};
    std::uint64_t l1_block_ms{12'000};
    std::uint64_t l2_block_ms{2'000};
    std::uint64_t retry_backoff_s{60};  // first delay after a rejected quote; doubles up to 16x
};

struct NetworkConfig {
    std::uint64_t delay_min_ms{50};
    std::uint64_t delay_max_ms{50};
};

struct EnclaveSection {
    std::string code_image{"op-node+op-geth sequencer build 1"};
    std::uint64_t vendor_seed{1};
    std::uint64_t instance_seed{1};
    std::uint64_t isv_svn{1};
    std::uint64_t stale_offset_s{3600};
};

struct AdversaryConfig {
    AdversaryKind kind{AdversaryKind::kReplayQuote};
    std::uint64_t start_s{0};
    std::vector<std::uint64_t> senders;  // censorship: sender indices to drop
    std::uint64_t interval_s{60};        // renewal spam cadence
    std::uint64_t spammers{3};
    std::vector<std::uint64_t> whitelisted_requests_s;
    std::string requester{"validator-1"};
    std::uint64_t count{1};  // replay: number of replayed submissions
};

struct ScenarioConfig {
    std::string name{"scenario"};
    std::uint64_t seed{1};
    std::uint64_t duration_s{3600};
    std::uint64_t genesis_unix_s{1'700'000'000};
    WorkloadConfig workload;
    ProtocolConfig protocol;
    NetworkConfig network;
    EnclaveSection enclave;
    std::vector<AdversaryConfig> adversaries;
};

struct ConfigError {
    std::string field;
    std::string message;
};

using ConfigErrors = std::vector<ConfigError>;

std::string format_errors(const ConfigErrors& errors);

// Sets one dotted key (e.g. "protocol.validity_window_blocks") from its textual value.
std::optional<ConfigError> set_config_field(ScenarioConfig& cfg, std::string_view key, std::string_view value);

// Applies a "key=value" override.
std::optional<ConfigError> apply_override(ScenarioConfig& cfg, std::string_view assignment);

// Cross-field validation; empty result means the config can run.
ConfigErrors validate(const ScenarioConfig& cfg);

// Flat format: one "dotted.key = value" per line, '#' starts a comment. Duplicate and
// unknown keys are errors. The result is validated.
Expected<ScenarioConfig, ConfigErrors> parse_config(std::string_view text);

// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ScenarioConfig& cfg);

}  // namespace attseq
