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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <attseq/chain.hpp>
#include <attseq/expected.hpp>

namespace attseq {

// One line of trace.jsonl. Ledger events keep their on-chain fields; simulator events
// (L2 production, network, adversaries) use the same shape with gas 0.
struct TraceEvent {
    std::uint64_t seq{0};
    std::uint64_t time_ms{0};
    std::uint64_t block{0};
    std::string event_type;
    std::string actor;  // 0x-prefixed address
    std::uint64_t gas{0};
    std::optional<std::string> reason;
    std::string payload_hash;  // hex digest
    nlohmann::json data = nlohmann::json::object();

    [[nodiscard]] bool is_ledger_event() const;
};

using Trace = std::vector<TraceEvent>;

struct TraceError {
    std::size_t line{0};
    std::string message;
};

std::string actor_hex(const Address& a);

TraceEvent trace_event_from_ledger(const LedgerEvent& e, std::uint64_t seq, std::uint64_t time_ms);

nlohmann::json to_json(const TraceEvent& e);
Expected<TraceEvent, std::string> trace_event_from_json(const nlohmann::json& j);

std::string write_trace_jsonl(const Trace& trace);
Expected<Trace, TraceError> read_trace_jsonl(std::string_view text);

}  // namespace attseq
