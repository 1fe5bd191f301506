#pragma once

#include "macsim/adversary.hpp"
#include "macsim/channel.hpp"
#include "macsim/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace macsim {

struct PacketStats {
    PacketId id = 0;
    Station station = 0;
    Round injected = 0;
    std::optional<Round> heard;  // absent: still queued at the horizon
};

struct LatencyReport {
    std::vector<PacketStats> packets;  // id order
    long long total = 0;
    long long heard = 0;
    Round max_latency = 0;                 // over heard packets
    Rational mean_latency{0};              // over heard packets
    std::map<Round, long long> histogram;  // latency -> count, heard packets
    Round max_pending_age = 0;  // horizon - injected, over in-flight packets
    // Lower bound on the eventual worst latency: no packet is dropped,
    // so an in-flight packet's age already counts against any bound.
    Round observed_worst = 0;
};

LatencyReport compute_latencies(const Trace& trace);

struct OccupancyReport {
    std::vector<long long> total;                     // end-of-round totals
    std::vector<std::vector<long long>> per_station;  // [round][station]
    long long max_total = 0;
};

OccupancyReport queue_occupancy(const Trace& trace);

struct PhaseStats {
    long long index = 1;  // 1-based
    Round start = 0;
    Round end = 0;  // inclusive
    Round length = 0;
    long long packets_at_start = 0;  // old packets for older-first variants
    long long injected_during = 0;
    long long heard_during = 0;
};

struct PhaseDecomposition {
    std::vector<PhaseStats> full;
    std::optional<PhaseStats> partial;  // truncated final phase, if any
};

// Throws std::invalid_argument for non-phase algorithms (mbtf).
PhaseDecomposition phase_stats(const Trace& trace);

// MBTF credit: per list position p (0-based) with queue size q, the
// station holds max(0, q - (n - 1 - p)) credit; C is the sum.
struct DelayWindow {
    Round discovery = 0;      // round whose heard message had the big flag
    int from_position = 0;    // discovered station's list position before the shift
    Station successor = 0;    // station that was at the next list position
    Round end = 0;            // round at whose end the token reached the successor
    long long clear_rounds = 0;  // non-jammed rounds in [discovery+1, end]
    bool ended_by_discovery = false;
    bool truncated = false;  // horizon ended before the window closed
};

struct CreditReport {
    std::vector<long long> credit;       // end-of-round C(n, t)
    std::vector<long long> total_queue;  // end-of-round occupancy
    std::vector<DelayWindow> windows;
};

// Throws std::invalid_argument unless the trace is an mbtf trace.
CreditReport credit_ledger(const Trace& trace);

// Credit held at the end of round `eval_round` by the packets that were
// queued at the end of round `snapshot_round` (later injections ignored;
// FIFO makes survivors per station well defined). snapshot_round == -1
// denotes the empty initial state.
long long snapshot_credit(const Trace& trace, Round snapshot_round, Round eval_round);

struct CheckOutcome {
    bool pass = true;
    bool applicable = true;
    Round round = -1;  // first counterexample
    std::string details;
};

// Lemma-level trace checks. Ids:
//   "jrrw-window":    from any round with x old packets, at least x
//                     packets are heard within ceil((x + n(J+1) + b) / (1-lambda))
//                     rounds (of-jrrw traces).
//   "control-window": same with n control rounds per cycle, i.e.
//                     ceil((x + n + b) / (1-lambda)) (ofc-rrw traces).
//   "search-phase":   every complete sweep satisfies
//                     t_i <= heard_i + 2*min(episodes_i * lg n, n-1) + 1
//                     (srr / of-srr traces; lg n = ceil(log2 n)).
// Throws std::invalid_argument for an unknown id.
CheckOutcome lemma_check(const Trace& trace, const std::string& lemma_id,
                         const AdversaryType& type);

// Recomputes every round's feedback from its transmitter set and jam
// flag and checks the stored value (feedback uniqueness).
CheckOutcome validate_trace(const Trace& trace);

// Replays the shared algorithm state from the feedback sequence alone
// and checks every transmitter against it (full-sensing coherence).
CheckOutcome check_shared_state_coherence(const Trace& trace);

// Multiset conservation, no duplicate hears, FIFO per station.
CheckOutcome check_conservation(const Trace& trace);

std::string metrics_csv(const LatencyReport& report);

}  // namespace macsim
