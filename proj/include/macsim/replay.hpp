#pragma once

#include "macsim/algorithm_id.hpp"
#include "macsim/channel.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace macsim {

// Reconstructs the shared component of an algorithm's state (token
// position, void counter, list order, segment stack, phase index) from
// the public feedback sequence alone. Written independently of the
// station machines so the two routes can be checked against each other.
class SharedReplay {
public:
    virtual ~SharedReplay() = default;
    virtual void advance(const Feedback& fb, bool jammed) = 0;

    virtual Station holder() const = 0;      // current token holder / unloader
    virtual bool moved() const = 0;          // token moved in the last advance
    virtual Station last_left() const = 0;   // station the token most recently left
    virtual bool phase_boundary() const = 0; // last advance ended a phase
    virtual long long phase_index() const = 0;  // 1-based; mbtf reports passes
};

std::unique_ptr<SharedReplay> make_replay(AlgorithmId id, const ChannelConfig& config, int J);

// Extra introspection for MBTF (list order and pass/discovery events).
class MbtfReplay : public SharedReplay {
public:
    explicit MbtfReplay(const ChannelConfig& config);

    void advance(const Feedback& fb, bool jammed) override;
    Station holder() const override { return list_[idx_]; }
    bool moved() const override { return moved_; }
    Station last_left() const override { return last_left_; }
    bool phase_boundary() const override { return pass_ended_; }
    long long phase_index() const override { return pass_; }

    const std::vector<Station>& list() const { return list_; }
    int holder_position() const { return idx_; }
    // Set when the last advance heard a big-flagged message; .second is
    // the discovered station's list position before the move to front.
    bool big_discovered() const { return big_discovered_; }
    int discovered_from_position() const { return discovered_pos_; }

private:
    void step_token();

    bool control_variant_;  // jamming channel: holder always transmits
    int n_;
    std::vector<Station> list_;
    int idx_ = 0;
    bool moved_ = false;
    Station last_left_;
    bool pass_ended_ = false;
    long long pass_ = 1;
    bool big_discovered_ = false;
    int discovered_pos_ = 0;
};

// Segment-stack view for the SRR family.
class SearchReplay : public SharedReplay {
public:
    explicit SearchReplay(const ChannelConfig& config);

    void advance(const Feedback& fb, bool jammed) override;
    Station holder() const override;  // unloader, else last heard sender
    bool moved() const override { return moved_; }
    Station last_left() const override { return last_left_; }
    bool phase_boundary() const override { return sweep_ended_; }
    long long phase_index() const override { return sweep_; }

    bool unloading() const { return unloading_; }
    Station unloader() const { return unloader_; }
    // True when the last advance began an unload (a search round was
    // answered by a heard packet).
    bool unload_started() const { return unload_started_; }
    const std::vector<std::pair<Station, Station>>& stack() const { return stack_; }

private:
    int n_;
    std::vector<std::pair<Station, Station>> stack_;  // inclusive segments; back = current
    bool unloading_ = false;
    Station unloader_ = 0;
    bool unload_started_ = false;
    bool moved_ = false;
    Station last_left_;
    bool sweep_ended_ = false;
    long long sweep_ = 1;
};

}  // namespace macsim
