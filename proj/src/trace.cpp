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

#include <attseq/trace.hpp>

#include <array>
#include <sstream>

namespace attseq {

namespace {

    constexpr std::array kLedgerEventTypes{
        "ContractDeployed", "CollateralStored", "RecordRevoked",     "QuoteVerifierSet",   "QuoteAttested",
        "QuoteRejected",    "RenewalRequested", "RenewalRejected",   "BondSlashed",        "BondRefunded",
        "BatchPublished",   "BatchRejected",    "StateRootProposed", "StateRootRejected", "StateRootFinalized",
    };

}  // namespace

bool TraceEvent::is_ledger_event() const {
    for (std::string_view t : kLedgerEventTypes) {
        if (t == event_type) return true;
    }
    return false;
}

std::string actor_hex(const Address& a) { return "0x" + to_hex(a); }

TraceEvent trace_event_from_ledger(const LedgerEvent& e, std::uint64_t seq, std::uint64_t time_ms) {
    TraceEvent t;
    t.seq = seq;
    t.time_ms = time_ms;
    t.block = e.block;
    t.event_type = e.event_type;
    t.actor = actor_hex(e.actor);
    t.gas = e.gas;
    t.reason = e.reason;
    t.payload_hash = to_hex(e.payload_hash);
    t.data = e.data;
    return t;
}

nlohmann::json to_json(const TraceEvent& e) {
    nlohmann::json j;
    j["seq"] = e.seq;
    j["time_ms"] = e.time_ms;
    j["block"] = e.block;
    j["event_type"] = e.event_type;
    j["actor"] = e.actor;
    j["gas"] = e.gas;
    j["reason"] = e.reason ? nlohmann::json(*e.reason) : nlohmann::json(nullptr);
    j["payload_hash"] = e.payload_hash;
    j["data"] = e.data;
    return j;
}

Expected<TraceEvent, std::string> trace_event_from_json(const nlohmann::json& j) {
    if (!j.is_object()) return Unexpected{std::string{"event is not an object"}};
    TraceEvent e;
    try {
        e.seq = j.at("seq").get<std::uint64_t>();
        e.time_ms = j.at("time_ms").get<std::uint64_t>();
        e.block = j.at("block").get<std::uint64_t>();
        e.event_type = j.at("event_type").get<std::string>();
        e.actor = j.at("actor").get<std::string>();
        e.gas = j.at("gas").get<std::uint64_t>();
        const auto& r = j.at("reason");
        if (!r.is_null()) e.reason = r.get<std::string>();
        e.payload_hash = j.at("payload_hash").get<std::string>();
        if (j.contains("data")) e.data = j.at("data");
    } catch (const nlohmann::json::exception& ex) {
        return Unexpected{std::string{ex.what()}};
    }
    if (e.event_type.empty()) return Unexpected{std::string{"empty event_type"}};
    return e;
}

std::string write_trace_jsonl(const Trace& trace) {
    std::string out;
    for (const auto& e : trace) {
        out += to_json(e).dump();
        out += '\n';
    }
    return out;
}

Expected<Trace, TraceError> read_trace_jsonl(std::string_view text) {
    Trace trace;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) return Unexpected{TraceError{line_no, "invalid JSON"}};
        auto e = trace_event_from_json(j);
        if (!e) return Unexpected{TraceError{line_no, e.error()}};
        trace.push_back(std::move(*e));
    }
    return trace;
}

}  // namespace attseq
