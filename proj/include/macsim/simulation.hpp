#pragma once

#include "macsim/adversary.hpp"
#include "macsim/algorithms.hpp"
#include "macsim/channel.hpp"

#include <vector>

namespace macsim {

// Per-station view left over at the end of a run (packets still queued
// are reported, never dropped).
struct PendingPacket {
    PacketId id;
    Station station;
};

struct SimulationResult {
    Trace trace;
    std::vector<PendingPacket> in_flight;  // id order
};

// Runs `horizon` rounds of: a) each station transmits or pauses, b) the
// channel resolves one common feedback, c) the adversary's injections
// are enqueued, d) every station transitions. Packet ids are global,
// monotone, assigned at injection; ties within a round are ordered by
// (station name, emission order).
//
// Throws std::invalid_argument on algorithm/channel incompatibility and
// BudgetViolation when the adversary's actions overdraw its type.
SimulationResult run_simulation(const ChannelConfig& config, AlgorithmId id, int J,
                                Adversary& adversary, Round horizon,
                                FaultInjection faults = {});

// Same, with a caller-constructed algorithm instance.
SimulationResult run_simulation(const ChannelConfig& config, BroadcastAlgorithm& algorithm,
                                const std::string& algorithm_name, int J, Adversary& adversary,
                                Round horizon);

}  // namespace macsim
