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

#include <attseq/config.hpp>

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>
#include <sstream>

namespace attseq {

std::string_view to_string(AdversaryKind k) {
    switch (k) {
        case AdversaryKind::kForgedQuote:
            return "ForgedQuote";
        case AdversaryKind::kReplayQuote:
            return "ReplayQuote";
        case AdversaryKind::kStaleQuote:
            return "StaleQuote";
        case AdversaryKind::kRevokedCollateral:
            return "RevokedCollateral";
        case AdversaryKind::kMeasurementSwap:
            return "MeasurementSwap";
        case AdversaryKind::kMetadataTamper:
            return "MetadataTamper";
        case AdversaryKind::kCensorship:
            return "Censorship";
        case AdversaryKind::kSpuriousRenewalSpam:
            return "SpuriousRenewalSpam";
    }
    return "unknown";
}

std::optional<AdversaryKind> adversary_kind_from_string(std::string_view s) {
    for (auto k : {AdversaryKind::kForgedQuote, AdversaryKind::kReplayQuote, AdversaryKind::kStaleQuote,
                   AdversaryKind::kRevokedCollateral, AdversaryKind::kMeasurementSwap, AdversaryKind::kMetadataTamper,
                   AdversaryKind::kCensorship, AdversaryKind::kSpuriousRenewalSpam}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string format_errors(const ConfigErrors& errors) {
    std::string out;
    for (const auto& e : errors) {
        out += e.field + ": " + e.message + "\n";
    }
    return out;
}

namespace {

    std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    }

    std::vector<std::string_view> split_list(std::string_view s) {
        std::vector<std::string_view> out;
        s = trim(s);
        if (s.empty()) return out;
        while (true) {
            auto comma = s.find(',');
            out.push_back(trim(s.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            s.remove_prefix(comma + 1);
        }
        return out;
    }

    std::optional<std::uint64_t> parse_u64(std::string_view s) {
        s = trim(s);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
        return v;
    }

    std::optional<double> parse_double(std::string_view s) {
        s = trim(s);
        double v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
        return v;
    }

    std::optional<std::vector<std::uint64_t>> parse_u64_list(std::string_view s) {
        std::vector<std::uint64_t> out;
        for (auto item : split_list(s)) {
            auto v = parse_u64(item);
            if (!v) return std::nullopt;
            out.push_back(*v);
        }
        return out;
    }

    std::string join(const std::vector<std::uint64_t>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(v[i]);
        }
        return out;
    }

    std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += v[i];
        }
        return out;
    }

    ConfigError err(std::string_view field, std::string message) { return {std::string{field}, std::move(message)}; }

    template <typename T>
    std::optional<ConfigError> set_uint(T& dst, std::string_view key, std::string_view value) {
        auto v = parse_u64(value);
        if (!v) return err(key, "expected unsigned integer, got '" + std::string{value} + "'");
        if (*v > std::numeric_limits<T>::max()) return err(key, "value out of range");
        dst = static_cast<T>(*v);
        return std::nullopt;
    }

    std::optional<ConfigError> set_adversary_field(AdversaryConfig& a, std::string_view key, std::string_view field,
                                                   std::string_view value) {
        if (field == "kind") {
            auto k = adversary_kind_from_string(trim(value));
            if (!k) return err(key, "unknown adversary kind '" + std::string{trim(value)} + "'");
            a.kind = *k;
            return std::nullopt;
        }
        if (field == "start_s") return set_uint(a.start_s, key, value);
        if (field == "interval_s") return set_uint(a.interval_s, key, value);
        if (field == "spammers") return set_uint(a.spammers, key, value);
        if (field == "count") return set_uint(a.count, key, value);
        if (field == "requester") {
            a.requester = std::string{trim(value)};
            return std::nullopt;
        }
        if (field == "senders" || field == "whitelisted_requests_s") {
            auto list = parse_u64_list(value);
            if (!list) return err(key, "expected comma-separated unsigned integers");
            (field == "senders" ? a.senders : a.whitelisted_requests_s) = std::move(*list);
            return std::nullopt;
        }
        return err(key, "unknown key");
    }

}  // namespace

std::optional<ConfigError> set_config_field(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    auto& w = cfg.workload;
    auto& p = cfg.protocol;

    if (key == "name") {
        cfg.name = std::string{value};
        return std::nullopt;
    }
    if (key == "seed") return set_uint(cfg.seed, key, value);
    if (key == "duration_s") return set_uint(cfg.duration_s, key, value);
    if (key == "genesis_unix_s") return set_uint(cfg.genesis_unix_s, key, value);

    if (key == "workload.tx_count") return set_uint(w.tx_count, key, value);
    if (key == "workload.payload_bytes") return set_uint(w.payload_bytes, key, value);
    if (key == "workload.start_s") return set_uint(w.start_s, key, value);
    if (key == "workload.burst_at_s") return set_uint(w.burst_at_s, key, value);
    if (key == "workload.senders") return set_uint(w.senders, key, value);
    if (key == "workload.rate_per_s") {
        auto v = parse_double(value);
        if (!v) return err(key, "expected number, got '" + std::string{value} + "'");
        w.rate_per_s = *v;
        return std::nullopt;
    }
    if (key == "workload.arrival") {
        if (value == "poisson") {
            w.arrival = ArrivalPattern::kPoisson;
        } else if (value == "burst") {
            w.arrival = ArrivalPattern::kBurst;
        } else {
            return err(key, "expected 'poisson' or 'burst'");
        }
        return std::nullopt;
    }

    if (key == "protocol.validity_window_blocks") return set_uint(p.validity_window_blocks, key, value);
    if (key == "protocol.renewal_threshold_pct") return set_uint(p.renewal_threshold_pct, key, value);
    if (key == "protocol.freshness_drift_s") return set_uint(p.freshness_drift_s, key, value);
    if (key == "protocol.rate_limit_blocks") return set_uint(p.rate_limit_blocks, key, value);
    if (key == "protocol.required_bond_wei") return set_uint(p.required_bond_wei, key, value);
    if (key == "protocol.slash_threshold_pct") return set_uint(p.slash_threshold_pct, key, value);
    if (key == "protocol.quote_size_target") return set_uint(p.quote_size_target, key, value);
    if (key == "protocol.challenge_window_blocks") return set_uint(p.challenge_window_blocks, key, value);
    if (key == "protocol.max_txs_per_block") return set_uint(p.max_txs_per_block, key, value);
    if (key == "protocol.batch_size_blocks") return set_uint(p.batch_size_blocks, key, value);
    if (key == "protocol.cert_lifetime_s") return set_uint(p.cert_lifetime_s, key, value);
    if (key == "protocol.l1_block_ms") return set_uint(p.l1_block_ms, key, value);
    if (key == "protocol.l2_block_ms") return set_uint(p.l2_block_ms, key, value);
    if (key == "protocol.retry_backoff_s") return set_uint(p.retry_backoff_s, key, value);
    if (key == "protocol.quote_version") {
        auto v = quote_version_from_string(value);
        if (!v) return err(key, "expected V3 or V4");
        p.quote_version = *v;
        return std::nullopt;
    }
    if (key == "protocol.gas_accounting") {
        if (value == "cumulative") {
            p.gas_accounting = GasAccounting::kCumulative;
        } else if (value == "split") {
            p.gas_accounting = GasAccounting::kSplit;
        } else {
            return err(key, "expected 'cumulative' or 'split'");
        }
        return std::nullopt;
    }
    if (key == "protocol.whitelist") {
        p.whitelist.clear();
        for (auto item : split_list(value)) p.whitelist.emplace_back(item);
        return std::nullopt;
    }

    if (key == "network.delay_ms") {
        auto e = set_uint(cfg.network.delay_min_ms, key, value);
        if (!e) cfg.network.delay_max_ms = cfg.network.delay_min_ms;
        return e;
    }
    if (key == "network.delay_min_ms") return set_uint(cfg.network.delay_min_ms, key, value);
    if (key == "network.delay_max_ms") return set_uint(cfg.network.delay_max_ms, key, value);

    if (key == "enclave.code_image") {
        cfg.enclave.code_image = std::string{value};
        return std::nullopt;
    }
    if (key == "enclave.vendor_seed") return set_uint(cfg.enclave.vendor_seed, key, value);
    if (key == "enclave.instance_seed") return set_uint(cfg.enclave.instance_seed, key, value);
    if (key == "enclave.isv_svn") return set_uint(cfg.enclave.isv_svn, key, value);
    if (key == "enclave.stale_offset_s") return set_uint(cfg.enclave.stale_offset_s, key, value);

    if (key.starts_with("adversary.")) {
        auto rest = key.substr(10);
        auto dot = rest.find('.');
        if (dot == std::string_view::npos) return err(key, "expected adversary.<index>.<field>");
        auto idx = parse_u64(rest.substr(0, dot));
        if (!idx || *idx >= 64) return err(key, "adversary index must be in 0..63");
        if (cfg.adversaries.size() <= *idx) cfg.adversaries.resize(*idx + 1);
        return set_adversary_field(cfg.adversaries[*idx], key, rest.substr(dot + 1), value);
    }
    return err(key, "unknown key");
}

std::optional<ConfigError> apply_override(ScenarioConfig& cfg, std::string_view assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        return err(assignment, "override must have the form key=value");
    }
    return set_config_field(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

ConfigErrors validate(const ScenarioConfig& cfg) {
    ConfigErrors errors;
    auto require = [&](bool ok, std::string_view field, std::string message) {
        if (!ok) errors.push_back(err(field, std::move(message)));
    };
    const auto& w = cfg.workload;
    const auto& p = cfg.protocol;

    require(!cfg.name.empty(), "name", "must not be empty");
    require(cfg.duration_s >= 1 && cfg.duration_s <= 30ULL * 86'400, "duration_s", "must be in 1..2592000");
    require(std::ranges::find(kPayloadSizes, w.payload_bytes) != kPayloadSizes.end(), "workload.payload_bytes",
            "must be one of 100, 300, 500, 1000, 2000, 3000, 5000");
    require(w.senders >= 1 && w.senders <= 10'000, "workload.senders", "must be in 1..10000");
    require(w.tx_count == 0 || std::ranges::find(kTxCounts, w.tx_count) != kTxCounts.end(), "workload.tx_count",
            "must be 0 or one of 10, 50, 100, 200, 300, 500, 1000");
    if (w.arrival == ArrivalPattern::kPoisson) {
        require(w.rate_per_s > 0.0 && w.rate_per_s <= 10'000.0, "workload.rate_per_s",
                "must be in (0, 10000] for poisson arrivals");
    }

    require(p.validity_window_blocks >= 1, "protocol.validity_window_blocks", "must be at least 1");
    require(p.renewal_threshold_pct <= 100, "protocol.renewal_threshold_pct", "must be in 0..100");
    require(p.slash_threshold_pct <= 100, "protocol.slash_threshold_pct", "must be in 0..100");
    require(p.quote_size_target >= kMinQuoteSize && p.quote_size_target <= kMaxQuoteSize,
            "protocol.quote_size_target", "must be in 512..10240");
    require(p.max_txs_per_block >= 1, "protocol.max_txs_per_block", "must be at least 1");
    require(p.batch_size_blocks >= 1, "protocol.batch_size_blocks", "must be at least 1");
    require(p.challenge_window_blocks >= 1, "protocol.challenge_window_blocks", "must be at least 1");
    require(p.cert_lifetime_s >= 1, "protocol.cert_lifetime_s", "must be at least 1");
    require(p.l1_block_ms >= 1000 && p.l1_block_ms % 1000 == 0, "protocol.l1_block_ms",
            "must be a positive whole number of seconds");
    require(p.l2_block_ms >= 1 && p.l2_block_ms <= p.l1_block_ms, "protocol.l2_block_ms",
            "must be in 1..l1_block_ms");
    require(p.retry_backoff_s >= 1, "protocol.retry_backoff_s", "must be at least 1");
    for (const auto& name : p.whitelist) {
        require(!name.empty(), "protocol.whitelist", "entries must not be empty");
    }

    require(cfg.network.delay_min_ms <= cfg.network.delay_max_ms, "network.delay_max_ms",
            "must not be below network.delay_min_ms");
    require(cfg.network.delay_max_ms <= 60'000, "network.delay_max_ms", "must be at most 60000");
    require(!cfg.enclave.code_image.empty(), "enclave.code_image", "must not be empty");
    require(cfg.enclave.isv_svn <= 0xffff, "enclave.isv_svn", "must fit in 16 bits");

    for (std::size_t i = 0; i < cfg.adversaries.size(); ++i) {
        const auto& a = cfg.adversaries[i];
        const std::string prefix = "adversary." + std::to_string(i) + ".";
        require(a.start_s <= cfg.duration_s, prefix + "start_s", "must not exceed duration_s");
        if (a.kind == AdversaryKind::kSpuriousRenewalSpam) {
            require(a.interval_s >= 1, prefix + "interval_s", "must be at least 1");
            require(a.spammers <= 1000, prefix + "spammers", "must be at most 1000");
        }
        if (a.kind == AdversaryKind::kCensorship) {
            for (auto s : a.senders) {
                require(s < w.senders, prefix + "senders", "sender index out of range");
            }
        }
        require(a.count >= 1 && a.count <= 1000, prefix + "count", "must be in 1..1000");
    }
    return errors;
}

Expected<ScenarioConfig, ConfigErrors> parse_config(std::string_view text) {
    ScenarioConfig cfg;
    ConfigErrors errors;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back(err("line " + std::to_string(line_no), "expected 'key = value'"));
            continue;
        }
        auto key = trim(line.substr(0, eq));
        if (!seen.emplace(key).second) {
            errors.push_back(err(key, "duplicate key"));
            continue;
        }
        if (auto e = set_config_field(cfg, key, line.substr(eq + 1))) {
            errors.push_back(std::move(*e));
        }
    }
    // Fields that failed to parse keep their defaults, so validation still reports the rest.
    for (auto& e : validate(cfg)) errors.push_back(std::move(e));
    if (!errors.empty()) return Unexpected{std::move(errors)};
    return cfg;
}

std::string to_config_text(const ScenarioConfig& cfg) {
    std::ostringstream o;
    const auto& w = cfg.workload;
    const auto& p = cfg.protocol;
    o << "name = " << cfg.name << "\n";
    o << "seed = " << cfg.seed << "\n";
    o << "duration_s = " << cfg.duration_s << "\n";
    o << "genesis_unix_s = " << cfg.genesis_unix_s << "\n";
    o << "workload.tx_count = " << w.tx_count << "\n";
    o << "workload.payload_bytes = " << w.payload_bytes << "\n";
    o << "workload.arrival = " << (w.arrival == ArrivalPattern::kPoisson ? "poisson" : "burst") << "\n";
    char rate[64];
    auto res = std::to_chars(rate, rate + sizeof rate, w.rate_per_s);
    o << "workload.rate_per_s = " << std::string_view(rate, static_cast<std::size_t>(res.ptr - rate)) << "\n";
    o << "workload.start_s = " << w.start_s << "\n";
    o << "workload.burst_at_s = " << w.burst_at_s << "\n";
    o << "workload.senders = " << w.senders << "\n";
    o << "protocol.validity_window_blocks = " << p.validity_window_blocks << "\n";
    o << "protocol.renewal_threshold_pct = " << p.renewal_threshold_pct << "\n";
    o << "protocol.freshness_drift_s = " << p.freshness_drift_s << "\n";
    o << "protocol.rate_limit_blocks = " << p.rate_limit_blocks << "\n";
    o << "protocol.required_bond_wei = " << p.required_bond_wei << "\n";
    o << "protocol.slash_threshold_pct = " << p.slash_threshold_pct << "\n";
    o << "protocol.quote_size_target = " << p.quote_size_target << "\n";
    o << "protocol.quote_version = " << to_string(p.quote_version) << "\n";
    o << "protocol.challenge_window_blocks = " << p.challenge_window_blocks << "\n";
    o << "protocol.max_txs_per_block = " << p.max_txs_per_block << "\n";
    o << "protocol.batch_size_blocks = " << p.batch_size_blocks << "\n";
    o << "protocol.gas_accounting = " << (p.gas_accounting == GasAccounting::kSplit ? "split" : "cumulative") << "\n";
    o << "protocol.cert_lifetime_s = " << p.cert_lifetime_s << "\n";
    o << "protocol.whitelist = " << join(p.whitelist) << "\n";
    o << "protocol.l1_block_ms = " << p.l1_block_ms << "\n";
    o << "protocol.l2_block_ms = " << p.l2_block_ms << "\n";
    o << "protocol.retry_backoff_s = " << p.retry_backoff_s << "\n";
    o << "network.delay_min_ms = " << cfg.network.delay_min_ms << "\n";
    o << "network.delay_max_ms = " << cfg.network.delay_max_ms << "\n";
    o << "enclave.code_image = " << cfg.enclave.code_image << "\n";
    o << "enclave.vendor_seed = " << cfg.enclave.vendor_seed << "\n";
    o << "enclave.instance_seed = " << cfg.enclave.instance_seed << "\n";
    o << "enclave.isv_svn = " << cfg.enclave.isv_svn << "\n";
    o << "enclave.stale_offset_s = " << cfg.enclave.stale_offset_s << "\n";
    for (std::size_t i = 0; i < cfg.adversaries.size(); ++i) {
        const auto& a = cfg.adversaries[i];
        const std::string k = "adversary." + std::to_string(i) + ".";
        o << k << "kind = " << to_string(a.kind) << "\n";
        o << k << "start_s = " << a.start_s << "\n";
        o << k << "senders = " << join(a.senders) << "\n";
        o << k << "interval_s = " << a.interval_s << "\n";
        o << k << "spammers = " << a.spammers << "\n";
        o << k << "whitelisted_requests_s = " << join(a.whitelisted_requests_s) << "\n";
        o << k << "requester = " << a.requester << "\n";
        o << k << "count = " << a.count << "\n";
    }
    return o.str();
}

}  // namespace attseq
