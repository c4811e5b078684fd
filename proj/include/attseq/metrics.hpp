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
#include <map>
#include <string>

#include <json.hpp>

#include <attseq/expected.hpp>
#include <attseq/trace.hpp>

namespace attseq {

struct LatencyStats {
    std::uint64_t count{0};
    double mean_ms{0};
    double p50_ms{0};
    double p95_ms{0};
};

struct MetricsReport {
    double duration_s{0};
    std::uint64_t tx_submitted{0};
    std::uint64_t tx_included{0};
    std::uint64_t tx_dropped{0};
    std::uint64_t tx_pending{0};
    double tps{0};
    LatencyStats l2_latency;  // submission to L2 inclusion
    LatencyStats l1_latency;  // submission to publication of the containing batch

    std::map<std::string, std::uint64_t> gas_by_category;  // deploy, attest, renewal, batch, proposal
    std::uint64_t gas_total{0};

    std::uint64_t renewals{0};  // attestations after the first
    std::map<std::string, std::uint64_t> renewal_causes;
    std::map<std::string, std::uint64_t> rejections;  // QuoteRejected reasons
    std::uint64_t batches_published{0};
    std::uint64_t batches_withheld{0};
    std::uint64_t bonds_slashed{0};
    std::uint64_t bonds_refunded{0};
    std::map<std::string, double> inclusion_rate;  // per sender address
};

// Nearest-rank percentile of an unsorted sample; 0 for an empty sample.
double percentile(std::vector<std::uint64_t> sample, double pct);

Expected<MetricsReport, TraceError> compute_metrics(const Trace& trace);

nlohmann::json to_json(const MetricsReport& m);

// Columns metric,key,value; key is empty for scalar metrics.
std::string to_csv(const MetricsReport& m);

}  // namespace attseq
