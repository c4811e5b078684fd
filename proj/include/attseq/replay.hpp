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

#include <attseq/expected.hpp>
#include <attseq/trace.hpp>

namespace attseq {

struct InvariantVerdict {
    std::string name;
    bool applicable{true};
    bool holds{true};
    std::optional<std::uint64_t> first_violation_seq;
    std::string detail;
};

struct ReplayReport {
    std::vector<InvariantVerdict> verdicts;

    [[nodiscard]] bool all_hold() const;
    [[nodiscard]] const InvariantVerdict* find(std::string_view name) const;
};

// Re-derives every invariant from the trace alone:
//   gating_safety        published batches and state roots come from live attestations
//   replay_safety        attested nonces strictly increase per sequencer
//   gas_conservation     per-event gas sums to the reported total
//   bond_conservation    each accepted renewal request settles once; supply drops by slashed bonds
//   chain_integrity      L2 blocks form a hash chain with consistent state roots
//   fifo_honesty         blocks include mempool transactions in arrival order
//   gated_publication    the batcher and proposer only submit while attested
//   liveness             honest runs never withhold beyond one renewal round trip
//   metrics_conservation submitted = included + dropped + pending
Expected<ReplayReport, TraceError> replay(const Trace& trace);

}  // namespace attseq
