#pragma once

#include "macsim/algorithm_id.hpp"
#include "macsim/channel.hpp"

#include <deque>
#include <memory>
#include <vector>

namespace macsim {

// Fault injection for the checker suites: deliberately broken variants
// that the lemma trace checks must reject.
struct FaultInjection {
    bool jrrw_threshold_minus_one = false;   // move the token after J void rounds, not J+1
    bool crrw_move_every_other_control = false;  // token needs two heard control rounds
    bool srr_linear_scan = false;            // sweep singletons instead of splitting
};

// A deterministic distributed broadcast algorithm: all n station state
// machines of one execution. Station i's action depends only on shared
// state (identical everywhere, driven by feedback) and its own queue;
// the transition consumes the common feedback and this round's
// injections.
class BroadcastAlgorithm {
public:
    virtual ~BroadcastAlgorithm() = default;

    // Step (a): station i transmits a message or pauses (nullopt).
    virtual std::optional<OutboundMessage> transmit(Station i) const = 0;
    // Step (d) for all stations: enqueue injections, discard the heard
    // packet, advance shared state.
    virtual void advance(const Feedback& fb, const std::vector<Injection>& injections) = 0;

    virtual const std::deque<PacketId>& queue(Station i) const = 0;
    virtual std::size_t old_count(Station i) const = 0;
    // True when the last advance() ended a phase (never for mbtf).
    virtual bool phase_ended() const = 0;
};

std::unique_ptr<BroadcastAlgorithm> make_algorithm(AlgorithmId id, const ChannelConfig& config,
                                                   int J = -1, FaultInjection faults = {});

// Throws std::invalid_argument when the algorithm cannot run on the
// channel (srr family needs collision detection and no jamming, rrw
// family needs no jamming, jrrw family needs J >= 0).
void check_compatibility(AlgorithmId id, const ChannelConfig& config, int J);

}  // namespace macsim
