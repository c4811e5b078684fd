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

#include <attseq/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace attseq {

double percentile(std::vector<std::uint64_t> sample, double pct) {
    if (sample.empty()) return 0;
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
    rank = std::clamp<std::size_t>(rank, 1, sample.size());
    return static_cast<double>(sample[rank - 1]);
}

namespace {

    LatencyStats stats(const std::vector<std::uint64_t>& sample) {
        LatencyStats s;
        s.count = sample.size();
        if (sample.empty()) return s;
        const double sum = std::accumulate(sample.begin(), sample.end(), 0.0,
                                           [](double acc, std::uint64_t v) { return acc + static_cast<double>(v); });
        s.mean_ms = sum / static_cast<double>(sample.size());
        s.p50_ms = percentile(sample, 50);
        s.p95_ms = percentile(sample, 95);
        return s;
    }

    std::string_view gas_category(std::string_view event_type) {
        if (event_type == "ContractDeployed") return "deploy";
        if (event_type == "QuoteAttested" || event_type == "QuoteRejected" || event_type == "QuoteVerifierSet" ||
            event_type == "CollateralStored") {
            return "attest";
        }
        if (event_type == "RenewalRequested" || event_type == "RenewalRejected") return "renewal";
        if (event_type == "BatchPublished" || event_type == "BatchRejected") return "batch";
        if (event_type == "StateRootProposed" || event_type == "StateRootRejected") return "proposal";
        return {};
    }

    struct Submitted {
        std::uint64_t time_ms;
        std::string sender;
    };

}  // namespace

Expected<MetricsReport, TraceError> compute_metrics(const Trace& trace) {
    MetricsReport m;
    for (auto c : {"deploy", "attest", "renewal", "batch", "proposal"}) m.gas_by_category[c] = 0;
    if (trace.empty()) return m;

    std::unordered_map<std::string, Submitted> submitted;
    std::map<std::uint64_t, std::vector<std::string>> block_txs;
    std::map<std::string, std::uint64_t> included_by_sender;
    std::map<std::string, std::uint64_t> submitted_by_sender;
    std::unordered_map<std::string, std::string> cause_by_quote;
    std::vector<std::uint64_t> l2_lat;
    std::vector<std::uint64_t> l1_lat;
    std::optional<std::string> sequencer;
    std::optional<std::uint64_t> started_ms;
    std::optional<std::uint64_t> ended_ms;

    std::size_t at = 0;
    try {
        for (; at < trace.size(); ++at) {
            const TraceEvent& e = trace[at];
            const std::string& t = e.event_type;
            if (auto cat = gas_category(t); !cat.empty()) {
                m.gas_by_category[std::string{cat}] += e.gas;
            }
            m.gas_total += e.gas;

            if (t == "ScenarioStarted") {
                started_ms = e.time_ms;
                sequencer = e.data.at("sequencer").get<std::string>();
            } else if (t == "ScenarioEnded") {
                ended_ms = e.time_ms;
            } else if (t == "TxSubmitted") {
                const auto id = e.data.at("tx_id").get<std::string>();
                submitted[id] = {e.time_ms, e.actor};
                ++submitted_by_sender[e.actor];
                ++m.tx_submitted;
            } else if (t == "TxDropped") {
                ++m.tx_dropped;
            } else if (t == "L2BlockProduced") {
                const auto height = e.data.at("height").get<std::uint64_t>();
                auto& ids = block_txs[height];
                for (const auto& id : e.data.at("tx_ids")) {
                    auto s = id.get<std::string>();
                    ++m.tx_included;
                    if (auto it = submitted.find(s); it != submitted.end()) {
                        l2_lat.push_back(e.time_ms - it->second.time_ms);
                        ++included_by_sender[it->second.sender];
                    }
                    ids.push_back(std::move(s));
                }
            } else if (t == "BatchPublished") {
                ++m.batches_published;
                if (!sequencer || e.actor == *sequencer) {
                    const auto start = e.data.at("start").get<std::uint64_t>();
                    const auto end = e.data.at("end").get<std::uint64_t>();
                    for (auto it = block_txs.lower_bound(start); it != block_txs.end() && it->first <= end; ++it) {
                        for (const auto& id : it->second) {
                            if (auto s = submitted.find(id); s != submitted.end()) {
                                l1_lat.push_back(e.time_ms - s->second.time_ms);
                            }
                        }
                    }
                }
            } else if (t == "BatchWithheld") {
                ++m.batches_withheld;
            } else if (t == "QuoteSubmitted") {
                cause_by_quote[e.payload_hash] = e.data.at("cause").get<std::string>();
            } else if (t == "QuoteAttested") {
                if (e.data.at("renewal").get<bool>()) {
                    ++m.renewals;
                    auto it = cause_by_quote.find(e.payload_hash);
                    ++m.renewal_causes[it == cause_by_quote.end() ? "external" : it->second];
                }
            } else if (t == "QuoteRejected") {
                ++m.rejections[e.reason.value_or("unknown")];
            } else if (t == "BondSlashed") {
                ++m.bonds_slashed;
            } else if (t == "BondRefunded") {
                ++m.bonds_refunded;
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        return Unexpected{TraceError{at, std::string{"malformed event: "} + ex.what()}};
    }

    const std::uint64_t first = started_ms.value_or(trace.front().time_ms);
    const std::uint64_t last = ended_ms.value_or(trace.back().time_ms);
    m.duration_s = last > first ? static_cast<double>(last - first) / 1000.0 : 0.0;
    m.tx_pending = m.tx_submitted - std::min(m.tx_submitted, m.tx_included + m.tx_dropped);
    m.tps = m.duration_s > 0 ? static_cast<double>(m.tx_included) / m.duration_s : 0.0;
    m.l2_latency = stats(l2_lat);
    m.l1_latency = stats(l1_lat);
    for (const auto& [sender, n] : submitted_by_sender) {
        auto it = included_by_sender.find(sender);
        const std::uint64_t inc = it == included_by_sender.end() ? 0 : it->second;
        m.inclusion_rate[sender] = static_cast<double>(inc) / static_cast<double>(n);
    }
    return m;
}

nlohmann::json to_json(const MetricsReport& m) {
    auto lat = [](const LatencyStats& s) {
        return nlohmann::json{{"count", s.count}, {"mean_ms", s.mean_ms}, {"p50_ms", s.p50_ms}, {"p95_ms", s.p95_ms}};
    };
    return nlohmann::json{{"duration_s", m.duration_s},
                          {"tx_submitted", m.tx_submitted},
                          {"tx_included", m.tx_included},
                          {"tx_dropped", m.tx_dropped},
                          {"tx_pending", m.tx_pending},
                          {"tps", m.tps},
                          {"l2_latency", lat(m.l2_latency)},
                          {"l1_latency", lat(m.l1_latency)},
                          {"gas_by_category", m.gas_by_category},
                          {"gas_total", m.gas_total},
                          {"renewals", m.renewals},
                          {"renewal_causes", m.renewal_causes},
                          {"rejections", m.rejections},
                          {"batches_published", m.batches_published},
                          {"batches_withheld", m.batches_withheld},
                          {"bonds_slashed", m.bonds_slashed},
                          {"bonds_refunded", m.bonds_refunded},
                          {"inclusion_rate", m.inclusion_rate}};
}

namespace {

    std::string num(double v) {
        std::ostringstream o;
        o.precision(17);
        o << v;
        return o.str();
    }

}  // namespace

std::string to_csv(const MetricsReport& m) {
    std::ostringstream o;
    o << "metric,key,value\n";
    auto row = [&](std::string_view metric, std::string_view key, const std::string& value) {
        o << metric << ',' << key << ',' << value << '\n';
    };
    row("duration_s", "", num(m.duration_s));
    row("tx_submitted", "", std::to_string(m.tx_submitted));
    row("tx_included", "", std::to_string(m.tx_included));
    row("tx_dropped", "", std::to_string(m.tx_dropped));
    row("tx_pending", "", std::to_string(m.tx_pending));
    row("tps", "", num(m.tps));
    for (auto [name, s] : {std::pair{"l2_latency", &m.l2_latency}, std::pair{"l1_latency", &m.l1_latency}}) {
        row(name, "count", std::to_string(s->count));
        row(name, "mean_ms", num(s->mean_ms));
        row(name, "p50_ms", num(s->p50_ms));
        row(name, "p95_ms", num(s->p95_ms));
    }
    for (const auto& [k, v] : m.gas_by_category) row("gas", k, std::to_string(v));
    row("gas_total", "", std::to_string(m.gas_total));
    row("renewals", "", std::to_string(m.renewals));
    for (const auto& [k, v] : m.renewal_causes) row("renewal_cause", k, std::to_string(v));
    for (const auto& [k, v] : m.rejections) row("rejection", k, std::to_string(v));
    row("batches_published", "", std::to_string(m.batches_published));
    row("batches_withheld", "", std::to_string(m.batches_withheld));
    row("bonds_slashed", "", std::to_string(m.bonds_slashed));
    row("bonds_refunded", "", std::to_string(m.bonds_refunded));
    for (const auto& [k, v] : m.inclusion_rate) row("inclusion_rate", k, num(v));
    return o.str();
}

}  // namespace attseq
