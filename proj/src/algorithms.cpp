#include "macsim/algorithms.hpp"

#include <algorithm>
#include <stdexcept>

namespace macsim {

namespace {

class StationSetBase : public BroadcastAlgorithm {
public:
    StationSetBase(const ChannelConfig& config, bool older_first)
        : n_(config.n), older_first_(older_first) {
        queues_.resize(static_cast<std::size_t>(n_));
        old_.resize(static_cast<std::size_t>(n_), 0);
    }

    const std::deque<PacketId>& queue(Station i) const override {
        return queues_[static_cast<std::size_t>(i)];
    }
    std::size_t old_count(Station i) const override { return old_[static_cast<std::size_t>(i)]; }
    bool phase_ended() const override { return phase_ended_; }

protected:
    // Old packets occupy the FIFO prefix, so the front is transmittable
    // iff the station has any eligible packet.
    bool eligible(Station i) const {
        auto s = static_cast<std::size_t>(i);
        return older_first_ ? old_[s] > 0 : !queues_[s].empty();
    }
    OutboundMessage packet_message(Station i) const {
        return OutboundMessage{i, queues_[static_cast<std::size_t>(i)].front(), false};
    }
    void enqueue(const std::vector<Injection>& injections) {
        for (const auto& in : injections)
            queues_[static_cast<std::size_t>(in.station)].push_back(in.packet);
    }
    // A successfully heard packet is discarded exactly once, by its sender.
    void discard_heard(const Feedback& fb) {
        if (fb.kind != FeedbackKind::Heard || !fb.message.payload) return;
        auto s = static_cast<std::size_t>(fb.message.sender);
        if (queues_[s].empty() || queues_[s].front() != *fb.message.payload)
            throw std::logic_error("heard packet is not the sender's queue front");
        queues_[s].pop_front();
        if (old_[s] > 0) --old_[s];
    }
    void graduate() {
        for (std::size_t s = 0; s < queues_.size(); ++s) old_[s] = queues_[s].size();
    }

    int n_;
    bool older_first_;
    std::vector<std::deque<PacketId>> queues_;
    std::vector<std::size_t> old_;
    bool phase_ended_ = false;
};

// rrw / of-rrw: the holder withholds the channel to unload the packets
// queued when it acquired the token (later arrivals wait for its next
// visit; the older-first variant serves old packets only); one silent
// round passes the token to the cyclic successor, which transmits in
// the following round.
class RrwMachine : public StationSetBase {
public:
    RrwMachine(const ChannelConfig& config, bool older_first)
        : StationSetBase(config, older_first) {}

    std::optional<OutboundMessage> transmit(Station i) const override {
        if (i != holder_ || !unload_eligible(i)) return std::nullopt;
        return packet_message(i);
    }

    void advance(const Feedback& fb, const std::vector<Injection>& injections) override {
        phase_ended_ = false;
        enqueue(injections);
        if (fb.kind == FeedbackKind::Heard) {
            discard_heard(fb);
            if (unload_budget_ > 0) --unload_budget_;
        } else {
            holder_ = (holder_ + 1) % n_;
            if (++moves_ % n_ == 0) phase_ended_ = true;
            if (phase_ended_) graduate();
            unload_budget_ =
                static_cast<long long>(queues_[static_cast<std::size_t>(holder_)].size());
        }
    }

protected:
    bool unload_eligible(Station i) const {
        return older_first_ ? eligible(i) : unload_budget_ > 0;
    }

private:
    Station holder_ = 0;
    long long moves_ = 0;
    long long unload_budget_ = 0;
};

// jrrw(J) / of-jrrw(J): as rrw, except token transfer requires J+1
// contiguous void rounds; hearing a packet or moving the token zeroes
// the counter.
class JrrwMachine : public StationSetBase {
public:
    JrrwMachine(const ChannelConfig& config, bool older_first, int J, bool threshold_minus_one)
        : StationSetBase(config, older_first),
          threshold_(threshold_minus_one ? J : J + 1) {
        if (threshold_ < 1) threshold_ = 1;
    }

    std::optional<OutboundMessage> transmit(Station i) const override {
        if (i != holder_) return std::nullopt;
        bool can = older_first_ ? eligible(i) : unload_budget_ > 0;
        if (!can) return std::nullopt;
        return packet_message(i);
    }

    void advance(const Feedback& fb, const std::vector<Injection>& injections) override {
        phase_ended_ = false;
        enqueue(injections);
        if (fb.kind == FeedbackKind::Heard) {
            discard_heard(fb);
            if (unload_budget_ > 0) --unload_budget_;
            counter_ = 0;
        } else if (++counter_ == threshold_) {
            counter_ = 0;
            holder_ = (holder_ + 1) % n_;
            if (++moves_ % n_ == 0) phase_ended_ = true;
            if (phase_ended_) graduate();
            unload_budget_ =
                static_cast<long long>(queues_[static_cast<std::size_t>(holder_)].size());
        }
    }

private:
    long long threshold_;
    Station holder_ = 0;
    long long counter_ = 0;
    long long moves_ = 0;
    long long unload_budget_ = 0;
};

// c-rrw / ofc-rrw: the holder always transmits; a heard control round
// moves the token, a void round is a virtual collision (jam) and is
// ignored for the flow of control.
class CrrwMachine : public StationSetBase {
public:
    CrrwMachine(const ChannelConfig& config, bool older_first, bool move_every_other)
        : StationSetBase(config, older_first), move_every_other_(move_every_other) {}

    std::optional<OutboundMessage> transmit(Station i) const override {
        if (i != holder_) return std::nullopt;
        if (eligible(i)) return packet_message(i);
        return OutboundMessage{i, std::nullopt, false};
    }

    void advance(const Feedback& fb, const std::vector<Injection>& injections) override {
        phase_ended_ = false;
        if (fb.kind == FeedbackKind::Heard) {
            if (fb.message.payload) {
                discard_heard(fb);
            } else if (!move_every_other_ || ++controls_ % 2 == 0) {
                holder_ = (holder_ + 1) % n_;
                if (++moves_ % n_ == 0) phase_ended_ = true;
            }
        }
        enqueue(injections);
        if (phase_ended_) graduate();
    }

private:
    bool move_every_other_;
    Station holder_ = 0;
    long long moves_ = 0;
    long long controls_ = 0;
};

// mbtf: shared station list, big stations (queue >= n) flag their
// packets and move to the front on discovery, keeping the token. On a
// jamming channel the holder sends a control-only message instead of
// pausing, so a void round is identified as jammed and the token holds.
class MbtfMachine : public StationSetBase {
public:
    explicit MbtfMachine(const ChannelConfig& config)
        : StationSetBase(config, false), control_variant_(config.jamming_enabled) {
        list_.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) list_[static_cast<std::size_t>(i)] = i;
    }

    std::optional<OutboundMessage> transmit(Station i) const override {
        if (i != list_[static_cast<std::size_t>(idx_)]) return std::nullopt;
        const auto& q = queues_[static_cast<std::size_t>(i)];
        if (!q.empty())
            return OutboundMessage{i, q.front(), q.size() >= static_cast<std::size_t>(n_)};
        if (control_variant_) return OutboundMessage{i, std::nullopt, false};
        return std::nullopt;
    }

    void advance(const Feedback& fb, const std::vector<Injection>& injections) override {
        if (fb.kind == FeedbackKind::Heard) {
            discard_heard(fb);
            if (fb.message.big) {
                std::rotate(list_.begin(), list_.begin() + idx_, list_.begin() + idx_ + 1);
                idx_ = 0;  // moved to the front, keeps the token
            } else {
                idx_ = (idx_ + 1) % n_;
            }
        } else if (!control_variant_) {
            idx_ = (idx_ + 1) % n_;
        }
        enqueue(injections);
    }

private:
    bool control_variant_;
    std::vector<Station> list_;
    int idx_ = 0;
};

// srr / of-srr: binary search over station segments with collision
// detection. All eligible stations of the queried segment transmit; a
// collision splits it (ceil-left processed next, right pushed), silence
// discards it, a heard packet starts that station's unload, which ends
// with one silent round. The sweep restarts when the stack empties.
class SrrMachine : public StationSetBase {
public:
    SrrMachine(const ChannelConfig& config, bool older_first, bool linear_scan)
        : StationSetBase(config, older_first), linear_scan_(linear_scan) {
        reset_stack();
    }

    std::optional<OutboundMessage> transmit(Station i) const override {
        if (unloading_) {
            if (i != unloader_ || !eligible(i)) return std::nullopt;
            return packet_message(i);
        }
        auto [lo, hi] = stack_.back();
        if (i < lo || i > hi || !eligible(i)) return std::nullopt;
        return packet_message(i);
    }

    void advance(const Feedback& fb, const std::vector<Injection>& injections) override {
        phase_ended_ = false;
        if (unloading_) {
            if (fb.kind == FeedbackKind::Heard) {
                discard_heard(fb);
            } else {
                unloading_ = false;
                maybe_end_sweep();
            }
        } else {
            auto [lo, hi] = stack_.back();
            stack_.pop_back();
            switch (fb.kind) {
                case FeedbackKind::Heard:
                    discard_heard(fb);
                    unloading_ = true;
                    unloader_ = fb.message.sender;
                    break;
                case FeedbackKind::Collision: {
                    int size = hi - lo + 1;
                    if (size >= 2) {
                        int left = (size + 1) / 2;
                        stack_.emplace_back(lo + left, hi);
                        stack_.emplace_back(lo, lo + left - 1);
                    } else {
                        stack_.emplace_back(lo, hi);
                    }
                    break;
                }
                case FeedbackKind::Silence:
                    break;
            }
            maybe_end_sweep();
        }
        enqueue(injections);
        if (phase_ended_) graduate();
    }

private:
    void reset_stack() {
        if (linear_scan_) {
            for (int i = n_ - 1; i >= 0; --i) stack_.emplace_back(i, i);
        } else {
            stack_.emplace_back(0, n_ - 1);
        }
    }
    void maybe_end_sweep() {
        if (unloading_ || !stack_.empty()) return;
        phase_ended_ = true;
        reset_stack();
    }

    bool linear_scan_;
    std::vector<std::pair<Station, Station>> stack_;
    bool unloading_ = false;
    Station unloader_ = 0;
};

}  // namespace

void check_compatibility(AlgorithmId id, const ChannelConfig& config, int J) {
    if (config.n < 1) throw std::invalid_argument("n must be at least 1");
    if (requires_collision_detection(id) && !config.collision_detection)
        throw std::invalid_argument(to_string(id) + " requires collision detection");
    if (forbids_jamming(id) && config.jamming_enabled)
        throw std::invalid_argument(to_string(id) + " runs on channels without jamming");
    if (is_jrrw_family(id) && J < 0)
        throw std::invalid_argument(to_string(id) + " requires parameter J >= 0");
}

std::unique_ptr<BroadcastAlgorithm> make_algorithm(AlgorithmId id, const ChannelConfig& config,
                                                   int J, FaultInjection faults) {
    check_compatibility(id, config, J);
    switch (id) {
        case AlgorithmId::Rrw:
            return std::make_unique<RrwMachine>(config, false);
        case AlgorithmId::OfRrw:
            return std::make_unique<RrwMachine>(config, true);
        case AlgorithmId::Jrrw:
            return std::make_unique<JrrwMachine>(config, false, J, faults.jrrw_threshold_minus_one);
        case AlgorithmId::OfJrrw:
            return std::make_unique<JrrwMachine>(config, true, J, faults.jrrw_threshold_minus_one);
        case AlgorithmId::Crrw:
            return std::make_unique<CrrwMachine>(config, false,
                                                 faults.crrw_move_every_other_control);
        case AlgorithmId::OfcRrw:
            return std::make_unique<CrrwMachine>(config, true,
                                                 faults.crrw_move_every_other_control);
        case AlgorithmId::Mbtf:
            return std::make_unique<MbtfMachine>(config);
        case AlgorithmId::Srr:
            return std::make_unique<SrrMachine>(config, false, faults.srr_linear_scan);
        case AlgorithmId::OfSrr:
            return std::make_unique<SrrMachine>(config, true, faults.srr_linear_scan);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace macsim
