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
#include <memory>
#include <string_view>

#include <attseq/config.hpp>
#include <attseq/expected.hpp>
#include <attseq/trace.hpp>

namespace attseq {

enum class SimError {
    kAlreadyStarted,
    kInvalidAdversary,
};

std::string_view to_string(SimError e);

// Discrete-event simulation of one scenario: an L1 producing blocks, an L2 sequencer with
// its batcher and proposer, users, a PCS and adversaries. Time is integer milliseconds and
// every random draw comes from streams seeded by the config seed, so a run is a pure
// function of its config.
class Simulation {
  public:
    static Expected<Simulation, ConfigErrors> create(const ScenarioConfig& cfg);

    Simulation(Simulation&&) noexcept;
    Simulation& operator=(Simulation&&) noexcept;
    ~Simulation();

    // Schedules the adversary's actions; returns how many were scheduled.
    Expected<std::size_t, SimError> inject_adversary(const AdversaryConfig& adversary);

    // Runs to the configured duration. A second call returns kAlreadyStarted.
    Expected<Trace, SimError> run();

  private:
    struct Impl;
    explicit Simulation(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
};

// create + inject every adversary from the config + run.
Expected<Trace, ConfigErrors> run_scenario(const ScenarioConfig& cfg);

// Well-known actor addresses used by the simulator.
Address actor_address(std::string_view name);

}  // namespace attseq
