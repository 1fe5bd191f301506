#include "macsim/replay.hpp"

#include <algorithm>
#include <stdexcept>

namespace macsim {

namespace {

// rrw / jrrw(J) / c-rrw families share cyclic token movement and differ
// only in the trigger; J = 0 reproduces rrw, trigger Control reproduces
// the adaptive variants.
class CyclicTokenReplay : public SharedReplay {
public:
    enum class Trigger { VoidRun, HeardControl };

    CyclicTokenReplay(const ChannelConfig& config, Trigger trigger, int J)
        : n_(config.n), trigger_(trigger), threshold_(J + 1), last_left_(config.n - 1) {}

    void advance(const Feedback& fb, bool) override {
        moved_ = false;
        boundary_ = false;
        if (trigger_ == Trigger::VoidRun) {
            if (fb.kind == FeedbackKind::Heard) {
                counter_ = 0;
            } else if (++counter_ == threshold_) {
                counter_ = 0;
                move();
            }
        } else {
            if (fb.kind == FeedbackKind::Heard && fb.message.control_only()) move();
        }
    }

    Station holder() const override { return holder_; }
    bool moved() const override { return moved_; }
    Station last_left() const override { return last_left_; }
    bool phase_boundary() const override { return boundary_; }
    long long phase_index() const override { return phase_; }

private:
    void move() {
        last_left_ = holder_;
        holder_ = (holder_ + 1) % n_;
        if (++moves_ % n_ == 0) {
            boundary_ = true;
            ++phase_;
        }
        moved_ = true;
    }

    int n_;
    Trigger trigger_;
    long long threshold_;
    Station holder_ = 0;
    Station last_left_;
    long long counter_ = 0;
    long long moves_ = 0;
    bool moved_ = false;
    bool boundary_ = false;
    long long phase_ = 1;
};

}  // namespace

MbtfReplay::MbtfReplay(const ChannelConfig& config)
    : control_variant_(config.jamming_enabled), n_(config.n), last_left_(config.n - 1) {
    list_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) list_[static_cast<std::size_t>(i)] = i;
}

void MbtfReplay::step_token() {
    last_left_ = list_[static_cast<std::size_t>(idx_)];
    idx_ = (idx_ + 1) % n_;
    moved_ = true;
    if (idx_ == 0) {
        pass_ended_ = true;  // full traversal back to the front
        ++pass_;
    }
}

void MbtfReplay::advance(const Feedback& fb, bool) {
    moved_ = false;
    pass_ended_ = false;
    big_discovered_ = false;
    if (fb.kind == FeedbackKind::Heard) {
        if (fb.message.big) {
            // Sender moves to the list front and keeps the token. A
            // discovery concludes the pass; the next pass begins with
            // the discovered station's transmission. The front station
            // transmitting while still big is that unload continuing,
            // not a new discovery.
            if (idx_ > 0) {
                big_discovered_ = true;
                discovered_pos_ = idx_;
                std::rotate(list_.begin(), list_.begin() + idx_, list_.begin() + idx_ + 1);
                idx_ = 0;
                pass_ended_ = true;
                ++pass_;
            }
        } else {
            step_token();
        }
        return;
    }
    // Void round. The control variant treats it as jammed and holds the
    // token; the original variant passes the token on silence.
    if (!control_variant_) step_token();
}

SearchReplay::SearchReplay(const ChannelConfig& config) : n_(config.n), last_left_(config.n - 1) {
    stack_.emplace_back(0, n_ - 1);
}

Station SearchReplay::holder() const { return unloading_ ? unloader_ : last_left_; }

void SearchReplay::advance(const Feedback& fb, bool) {
    moved_ = false;
    sweep_ended_ = false;
    unload_started_ = false;
    if (unloading_) {
        if (fb.kind == FeedbackKind::Heard) return;  // unload continues
        // Silence ends the unload; the sweep resumes.
        unloading_ = false;
        last_left_ = unloader_;
        moved_ = true;
        if (stack_.empty()) {
            sweep_ended_ = true;
            ++sweep_;
            stack_.emplace_back(0, n_ - 1);
        }
        return;
    }
    auto [lo, hi] = stack_.back();
    stack_.pop_back();
    switch (fb.kind) {
        case FeedbackKind::Heard:
            unloading_ = true;
            unloader_ = fb.message.sender;
            unload_started_ = true;
            break;
        case FeedbackKind::Collision: {
            int size = hi - lo + 1;
            if (size >= 2) {
                int left_size = (size + 1) / 2;  // ceil-left split
                stack_.emplace_back(lo + left_size, hi);
                stack_.emplace_back(lo, lo + left_size - 1);
            } else {
                stack_.emplace_back(lo, hi);  // not reachable on a valid channel
            }
            break;
        }
        case FeedbackKind::Silence:
            break;  // segment empty of eligible stations
    }
    if (!unloading_ && stack_.empty()) {
        sweep_ended_ = true;
        ++sweep_;
        stack_.emplace_back(0, n_ - 1);
    }
}

std::unique_ptr<SharedReplay> make_replay(AlgorithmId id, const ChannelConfig& config, int J) {
    switch (id) {
        case AlgorithmId::Rrw:
        case AlgorithmId::OfRrw:
            return std::make_unique<CyclicTokenReplay>(config, CyclicTokenReplay::Trigger::VoidRun,
                                                       0);
        case AlgorithmId::Jrrw:
        case AlgorithmId::OfJrrw:
            if (J < 0) throw std::invalid_argument("jrrw family requires parameter J");
            return std::make_unique<CyclicTokenReplay>(config, CyclicTokenReplay::Trigger::VoidRun,
                                                       J);
        case AlgorithmId::Crrw:
        case AlgorithmId::OfcRrw:
            return std::make_unique<CyclicTokenReplay>(config,
                                                       CyclicTokenReplay::Trigger::HeardControl, 0);
        case AlgorithmId::Mbtf:
            return std::make_unique<MbtfReplay>(config);
        case AlgorithmId::Srr:
        case AlgorithmId::OfSrr:
            return std::make_unique<SearchReplay>(config);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace macsim
