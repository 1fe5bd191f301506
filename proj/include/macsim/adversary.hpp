#pragma once

#include "macsim/algorithm_id.hpp"
#include "macsim/channel.hpp"
#include "macsim/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace macsim {

// Leaky-bucket (jamming) adversary type (rho, lambda, b): at most
// rho|w| + b injections and, independently, lambda|w| + b jammed rounds
// in every contiguous window w of |w| > 0 rounds.
struct AdversaryType {
    Rational rho{0};     // injection rate, in [0,1]
    Rational lambda{0};  // jamming rate, in [0,1)
    long long b = 1;     // burstiness

    void validate() const;
    bool stable() const { return rho + lambda < Rational(1); }
    // Max packets injectable in one round.
    long long injection_burstiness() const { return floor_rat(rho + Rational(b)); }
    // Max consecutive jammed rounds.
    long long jamming_burstiness() const {
        return floor_rat(Rational(b) / (Rational(1) - lambda));
    }
};

struct AdversaryScript {
    std::map<Round, std::vector<Station>> injections;  // one entry per packet
    std::set<Round> jams;

    long long total_injections() const;
    Round max_round() const;  // -1 when empty
};

// Script file format: one directive per line, "inject <round> <station>"
// or "jam <round>", '#' starts a comment. Writer emits rounds sorted.
AdversaryScript parse_script(const std::string& text);
AdversaryScript load_script(const std::string& path);
std::string format_script(const AdversaryScript& script);

enum class BudgetKind { Injection, Jamming };

struct ScriptValidation {
    bool ok = true;
    Round window_begin = 0;  // first offending window, inclusive
    Round window_end = 0;
    BudgetKind kind = BudgetKind::Injection;
};

// Exhaustive windowed check of both budgets over all O(horizon^2)
// windows, in exact rational arithmetic. Throws std::invalid_argument
// when a script round is outside [0, horizon).
ScriptValidation validate_script(const AdversaryScript& script, const AdversaryType& type,
                                 Round horizon);

// Online budget tracker equivalent to the windowed definition: the level
// available for round r is min(carry-over, b) + rate, starting from
// b + rate at round 0. An action consuming k units is permitted iff
// k <= level; a packet needs a whole unit.
class TokenBucket {
public:
    TokenBucket(Rational rate, long long burst)
        : rate_(rate), burst_(burst), level_(rate + Rational(burst)) {}

    const Rational& level() const { return level_; }
    long long whole() const {
        long long f = floor_rat(level_);
        return f > 0 ? f : 0;
    }
    bool try_consume(long long k) {
        if (Rational(k) > level_) return false;
        level_ -= Rational(k);
        return true;
    }
    void next_round() {
        if (level_ > Rational(burst_)) level_ = Rational(burst_);
        level_ += rate_;
    }

private:
    Rational rate_;
    long long burst_;
    Rational level_;
};

struct BudgetViolation : std::runtime_error {
    BudgetViolation(Round r, BudgetKind k)
        : std::runtime_error("budget violation at round " + std::to_string(r) +
                             (k == BudgetKind::Injection ? " (injection)" : " (jamming)")),
          round(r),
          kind(k) {}
    Round round;
    BudgetKind kind;
};

// One adversary drives one simulation. Decisions for round r may use
// anything up to and including round r's feedback (the a)-d) event order
// delivers injections after the feedback), plus the adversary's own
// past actions.
class Adversary {
public:
    virtual ~Adversary() = default;
    virtual const AdversaryType& type() const = 0;
    // Jam decision for round r, committed before the round resolves.
    virtual bool jam(Round r) = 0;
    // Stations receiving one packet each in round r, in emission order.
    virtual std::vector<Station> inject(Round r, const Feedback& fb) = 0;
    // Completed record for round r.
    virtual void observe(const RoundRecord& rec) { (void)rec; }
};

struct Targeting {
    enum Kind { SingleStation, RoundRobin, BehindToken } kind = SingleStation;
    Station station = 0;  // SingleStation target

    static Targeting single(Station s) { return Targeting{SingleStation, s}; }
    static Targeting round_robin() { return Targeting{RoundRobin, 0}; }
    static Targeting behind_token() { return Targeting{BehindToken, 0}; }
    std::string name() const;
};

// Strategy factories. Every generated action stream satisfies the
// token-bucket trackers, hence validate_script.
std::unique_ptr<Adversary> make_scripted_adversary(AdversaryScript script, AdversaryType type);
std::unique_ptr<Adversary> make_greedy_adversary(AdversaryType type, const ChannelConfig& config,
                                                 Targeting targeting, AlgorithmId algorithm, int J);
std::unique_ptr<Adversary> make_random_adversary(AdversaryType type, const ChannelConfig& config,
                                                 std::uint64_t seed);
std::unique_ptr<Adversary> make_jrrw_tightness_adversary(AdversaryType type,
                                                         const ChannelConfig& config,
                                                         AlgorithmId algorithm, int J);
std::unique_ptr<Adversary> make_mbtf_tightness_adversary(AdversaryType type,
                                                         const ChannelConfig& config);

// The script an online adversary emitted, reconstructed from a trace.
AdversaryScript script_from_trace(const Trace& trace);

}  // namespace macsim
