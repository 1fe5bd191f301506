#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace macsim {

using Station = int;      // names are exactly 0..n-1
using PacketId = std::int64_t;
using Round = std::int64_t;

struct ChannelConfig {
    int n = 1;
    bool jamming_enabled = false;
    bool collision_detection = false;
};

// A message is a packet plus control bits, or control bits only.
struct OutboundMessage {
    Station sender = 0;
    std::optional<PacketId> payload;  // nullopt = control-only
    bool big = false;                 // MBTF control bit

    bool control_only() const { return !payload.has_value(); }
    friend bool operator==(const OutboundMessage&, const OutboundMessage&) = default;
};

enum class FeedbackKind { Heard, Silence, Collision };

// Identical at every station in a round. `message` is meaningful only
// for Heard; on a channel without collision detection the kind is never
// Collision (void rounds are perceived as silence).
struct Feedback {
    FeedbackKind kind = FeedbackKind::Silence;
    OutboundMessage message;

    static Feedback silence() { return Feedback{FeedbackKind::Silence, {}}; }
    static Feedback collision() { return Feedback{FeedbackKind::Collision, {}}; }
    static Feedback heard(OutboundMessage m) { return Feedback{FeedbackKind::Heard, m}; }
    friend bool operator==(const Feedback&, const Feedback&) = default;
};

struct Injection {
    Station station = 0;
    PacketId packet = 0;
    friend bool operator==(const Injection&, const Injection&) = default;
};

struct RoundRecord {
    Round round = 0;
    std::vector<OutboundMessage> transmitters;  // sorted by sender
    bool jammed = false;
    Feedback feedback;
    std::vector<Injection> injections;  // in packet-id order
};

struct Trace {
    ChannelConfig config;
    std::string algorithm;  // algorithm identifier, e.g. "jrrw"
    int J = -1;             // meaningful for the jrrw family only
    std::vector<RoundRecord> rounds;
};

// Resolves one round of the slotted channel into the feedback every
// station perceives. Throws std::invalid_argument on a duplicate sender
// (a station transmits at most once per round) and when `jammed` is set
// on a channel without jamming.
Feedback resolve_round(const std::vector<OutboundMessage>& transmitters, bool jammed,
                       const ChannelConfig& config);

// Canonical one-line-per-round serialization:
//   round;transmitters(sender:payload,...);jammed(0|1);feedback(H:<id>|S|C);injections(station:packet,...)
// Payloads render as the packet id, "-" for control-only, with "!"
// appended when the big bit is set. Byte-identical across reruns.
std::string canonical_line(const RoundRecord& rec);
std::string canonical_trace(const Trace& trace);

}  // namespace macsim
