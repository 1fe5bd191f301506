#include "macsim/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace macsim {

Feedback resolve_round(const std::vector<OutboundMessage>& transmitters, bool jammed,
                       const ChannelConfig& config) {
    if (jammed && !config.jamming_enabled)
        throw std::invalid_argument("jammed round on a channel without jamming");
    std::vector<Station> senders;
    senders.reserve(transmitters.size());
    for (const auto& m : transmitters) {
        if (m.sender < 0 || m.sender >= config.n)
            throw std::invalid_argument("transmitter is not a valid station name");
        senders.push_back(m.sender);
    }
    std::sort(senders.begin(), senders.end());
    if (std::adjacent_find(senders.begin(), senders.end()) != senders.end())
        throw std::invalid_argument("duplicate sender: a station transmits at most once per round");

    if (!jammed && transmitters.size() == 1) return Feedback::heard(transmitters.front());
    if (!jammed && transmitters.empty()) return Feedback::silence();
    // Collision or jam: indistinguishable; perceived as silence without
    // collision detection.
    return config.collision_detection ? Feedback::collision() : Feedback::silence();
}

namespace {

void append_payload(std::string& out, const OutboundMessage& m) {
    if (m.payload)
        out += std::to_string(*m.payload);
    else
        out += '-';
    if (m.big) out += '!';
}

}  // namespace

std::string canonical_line(const RoundRecord& rec) {
    std::string out = std::to_string(rec.round);
    out += ';';
    for (std::size_t i = 0; i < rec.transmitters.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(rec.transmitters[i].sender);
        out += ':';
        append_payload(out, rec.transmitters[i]);
    }
    out += ';';
    out += rec.jammed ? '1' : '0';
    out += ';';
    switch (rec.feedback.kind) {
        case FeedbackKind::Silence: out += 'S'; break;
        case FeedbackKind::Collision: out += 'C'; break;
        case FeedbackKind::Heard:
            out += "H:";
            append_payload(out, rec.feedback.message);
            break;
    }
    out += ';';
    for (std::size_t i = 0; i < rec.injections.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(rec.injections[i].station);
        out += ':';
        out += std::to_string(rec.injections[i].packet);
    }
    return out;
}

std::string canonical_trace(const Trace& trace) {
    std::string out;
    for (const auto& rec : trace.rounds) {
        out += canonical_line(rec);
        out += '\n';
    }
    return out;
}

}  // namespace macsim
