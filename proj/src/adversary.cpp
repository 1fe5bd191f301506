#include "macsim/adversary.hpp"

#include "macsim/replay.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace macsim {

void AdversaryType::validate() const {
    if (rho < Rational(0) || rho > Rational(1))
        throw std::invalid_argument("injection rate rho must be in [0,1]");
    if (lambda < Rational(0) || lambda >= Rational(1))
        throw std::invalid_argument("jamming rate lambda must be in [0,1)");
    if (b < 0) throw std::invalid_argument("burstiness b must be non-negative");
}

long long AdversaryScript::total_injections() const {
    long long total = 0;
    for (const auto& [r, stations] : injections) total += static_cast<long long>(stations.size());
    return total;
}

Round AdversaryScript::max_round() const {
    Round m = -1;
    if (!injections.empty()) m = std::max(m, injections.rbegin()->first);
    if (!jams.empty()) m = std::max(m, *jams.rbegin());
    return m;
}

AdversaryScript parse_script(const std::string& text) {
    AdversaryScript script;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string verb;
        if (!(fields >> verb)) continue;
        if (verb == "inject") {
            Round r;
            Station s;
            if (!(fields >> r >> s) || r < 0)
                throw std::invalid_argument("bad inject directive at line " +
                                            std::to_string(lineno));
            script.injections[r].push_back(s);
        } else if (verb == "jam") {
            Round r;
            if (!(fields >> r) || r < 0)
                throw std::invalid_argument("bad jam directive at line " + std::to_string(lineno));
            script.jams.insert(r);
        } else {
            throw std::invalid_argument("unknown directive '" + verb + "' at line " +
                                        std::to_string(lineno));
        }
        std::string extra;
        if (fields >> extra)
            throw std::invalid_argument("trailing tokens at line " + std::to_string(lineno));
    }
    return script;
}

AdversaryScript load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open script file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_script(buf.str());
}

std::string format_script(const AdversaryScript& script) {
    // One directive per line, sorted by round; jams before injections
    // within a round.
    std::string out;
    auto it = script.injections.begin();
    auto jt = script.jams.begin();
    auto emit_jam = [&](Round r) { out += "jam " + std::to_string(r) + "\n"; };
    auto emit_inj = [&](Round r, const std::vector<Station>& stations) {
        for (Station s : stations)
            out += "inject " + std::to_string(r) + " " + std::to_string(s) + "\n";
    };
    while (it != script.injections.end() || jt != script.jams.end()) {
        if (jt == script.jams.end() || (it != script.injections.end() && it->first < *jt)) {
            emit_inj(it->first, it->second);
            ++it;
        } else if (it == script.injections.end() || *jt < it->first) {
            emit_jam(*jt);
            ++jt;
        } else {
            emit_jam(*jt);
            emit_inj(it->first, it->second);
            ++jt;
            ++it;
        }
    }
    return out;
}

ScriptValidation validate_script(const AdversaryScript& script, const AdversaryType& type,
                                 Round horizon) {
    type.validate();
    for (const auto& [r, stations] : script.injections) {
        if (r >= horizon) throw std::invalid_argument("script injection round beyond horizon");
        (void)stations;
    }
    for (Round r : script.jams)
        if (r >= horizon) throw std::invalid_argument("script jam round beyond horizon");

    std::vector<long long> inj(static_cast<std::size_t>(horizon), 0);
    std::vector<long long> jam(static_cast<std::size_t>(horizon), 0);
    for (const auto& [r, stations] : script.injections)
        inj[static_cast<std::size_t>(r)] = static_cast<long long>(stations.size());
    for (Round r : script.jams) jam[static_cast<std::size_t>(r)] = 1;

    // count <= rate*len + b  <=>  count*q <= p*len + b*q
    const long long ip = type.rho.numerator(), iq = type.rho.denominator();
    const long long jp = type.lambda.numerator(), jq = type.lambda.denominator();
    for (Round s = 0; s < horizon; ++s) {
        long long inj_sum = 0, jam_sum = 0;
        for (Round e = s; e < horizon; ++e) {
            inj_sum += inj[static_cast<std::size_t>(e)];
            jam_sum += jam[static_cast<std::size_t>(e)];
            long long len = e - s + 1;
            if (inj_sum * iq > ip * len + type.b * iq)
                return ScriptValidation{false, s, e, BudgetKind::Injection};
            if (jam_sum * jq > jp * len + type.b * jq)
                return ScriptValidation{false, s, e, BudgetKind::Jamming};
        }
    }
    return ScriptValidation{};
}

std::string Targeting::name() const {
    switch (kind) {
        case SingleStation: return "single-" + std::to_string(station);
        case RoundRobin: return "round-robin";
        case BehindToken: return "behind-token";
    }
    return "?";
}

AdversaryScript script_from_trace(const Trace& trace) {
    AdversaryScript script;
    for (const auto& rec : trace.rounds) {
        if (rec.jammed) script.jams.insert(rec.round);
        for (const auto& in : rec.injections) script.injections[rec.round].push_back(in.station);
    }
    return script;
}

namespace {

class ScriptedAdversary : public Adversary {
public:
    ScriptedAdversary(AdversaryScript script, AdversaryType type)
        : script_(std::move(script)), type_(type) {}

    const AdversaryType& type() const override { return type_; }
    bool jam(Round r) override { return script_.jams.count(r) > 0; }
    std::vector<Station> inject(Round r, const Feedback&) override {
        auto it = script_.injections.find(r);
        return it == script_.injections.end() ? std::vector<Station>{} : it->second;
    }

private:
    AdversaryScript script_;
    AdversaryType type_;
};

class GreedyAdversary : public Adversary {
public:
    GreedyAdversary(AdversaryType type, const ChannelConfig& config, Targeting targeting,
                    AlgorithmId algorithm, int J)
        : type_(type),
          config_(config),
          targeting_(targeting),
          inj_(type.rho, type.b),
          jam_(type.lambda, type.b),
          behind_(config.n - 1) {
        if (targeting_.kind == Targeting::BehindToken)
            replay_ = make_replay(algorithm, config, J);
        if (targeting_.kind == Targeting::SingleStation &&
            (targeting_.station < 0 || targeting_.station >= config.n))
            throw std::invalid_argument("greedy targeting names an invalid station");
    }

    const AdversaryType& type() const override { return type_; }

    bool jam(Round) override { return config_.jamming_enabled && jam_.try_consume(1); }

    std::vector<Station> inject(Round, const Feedback&) override {
        long long k = inj_.whole();
        inj_.try_consume(k);
        std::vector<Station> out;
        out.reserve(static_cast<std::size_t>(k));
        for (long long i = 0; i < k; ++i) {
            switch (targeting_.kind) {
                case Targeting::SingleStation: out.push_back(targeting_.station); break;
                case Targeting::RoundRobin:
                    out.push_back(rr_next_);
                    rr_next_ = (rr_next_ + 1) % config_.n;
                    break;
                case Targeting::BehindToken: out.push_back(behind_); break;
            }
        }
        return out;
    }

    void observe(const RoundRecord& rec) override {
        if (replay_) {
            replay_->advance(rec.feedback, rec.jammed);
            if (replay_->moved()) behind_ = replay_->last_left();
        }
        inj_.next_round();
        jam_.next_round();
    }

private:
    AdversaryType type_;
    ChannelConfig config_;
    Targeting targeting_;
    TokenBucket inj_, jam_;
    std::unique_ptr<SharedReplay> replay_;
    Station behind_;
    Station rr_next_ = 0;
};

class RandomAdversary : public Adversary {
public:
    RandomAdversary(AdversaryType type, const ChannelConfig& config, std::uint64_t seed)
        : type_(type),
          config_(config),
          inj_(type.rho, type.b),
          jam_(type.lambda, type.b),
          rng_(seed) {}

    const AdversaryType& type() const override { return type_; }

    bool jam(Round) override {
        if (!config_.jamming_enabled || jam_.whole() < 1) return false;
        if ((rng_() & 1) == 0) return false;
        return jam_.try_consume(1);
    }

    std::vector<Station> inject(Round, const Feedback&) override {
        std::vector<Station> out;
        long long m = inj_.whole();
        if (m > 0) {
            long long k = static_cast<long long>(rng_() % static_cast<std::uint64_t>(m + 1));
            inj_.try_consume(k);
            for (long long i = 0; i < k; ++i)
                out.push_back(static_cast<Station>(rng_() % static_cast<std::uint64_t>(config_.n)));
        }
        return out;
    }

    void observe(const RoundRecord&) override {
        inj_.next_round();
        jam_.next_round();
    }

private:
    AdversaryType type_;
    ChannelConfig config_;
    TokenBucket inj_, jam_;
    std::mt19937_64 rng_;
};

// Tightness construction for jrrw(J)/of-jrrw(J): injects at full power
// into the station the token will acquire next (so every packet lands
// before that station's acquisition snapshot is taken), plants a single
// distinguished packet into station 2 right after the token leaves it
// in the late build phase, then keeps chasing the token until the
// distinguished packet is heard. Jams are spent only on rounds that
// would otherwise be heard.
class JrrwTightnessAdversary : public Adversary {
public:
    JrrwTightnessAdversary(AdversaryType type, const ChannelConfig& config, AlgorithmId algorithm,
                           int J)
        : type_(type),
          config_(config),
          older_first_(is_older_first(algorithm)),
          inj_(type.rho, type.b),
          jam_(type.lambda, type.b),
          replay_(make_replay(algorithm, config, J)),
          queues_(static_cast<std::size_t>(config.n), 0),
          old_(static_cast<std::size_t>(config.n), 0) {
        if (!is_jrrw_family(algorithm))
            throw std::invalid_argument("jrrw-tightness targets the jrrw family");
        if (config.n < 3)
            throw std::invalid_argument("jrrw-tightness needs at least 3 stations");
        if (!type.stable())
            throw std::invalid_argument("jrrw-tightness requires rho + lambda < 1");
        // J large enough that the n(J+1) term carries the construction.
        if (Rational(2 * J) * (Rational(1) - type.lambda) < Rational(type.b))
            throw std::invalid_argument("jrrw-tightness requires J >= b / (2(1-lambda))");
    }

    const AdversaryType& type() const override { return type_; }

    bool jam(Round) override {
        if (done_ || !config_.jamming_enabled) return false;
        Station h = replay_->holder();
        auto hs = static_cast<std::size_t>(h);
        bool would_hear = older_first_ ? old_[hs] > 0 : budget_ > 0;
        return would_hear && jam_.try_consume(1);
    }

    std::vector<Station> inject(Round, const Feedback&) override {
        std::vector<Station> out;
        if (done_) return out;
        long long avail = inj_.whole();
        if (!distinguished_injected_ && avail > 0) --avail;  // keep one unit reserved
        if (want_distinguished_ && !distinguished_injected_ && inj_.whole() >= 1) {
            out.push_back(2);
            distinguished_injected_ = true;
        }
        Station target = (replay_->holder() + 1) % config_.n;
        if (distinguished_injected_ && target == 2) target = (target + 1) % config_.n;
        for (long long i = 0; i < avail; ++i) out.push_back(target);
        inj_.try_consume(static_cast<long long>(out.size()));
        return out;
    }

    void observe(const RoundRecord& rec) override {
        for (const auto& in : rec.injections) {
            ++queues_[static_cast<std::size_t>(in.station)];
            if (distinguished_injected_ && distinguished_id_ < 0 && in.station == 2)
                distinguished_id_ = in.packet;
        }
        if (rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload) {
            auto s = static_cast<std::size_t>(rec.feedback.message.sender);
            --queues_[s];
            if (old_[s] > 0) --old_[s];
            if (budget_ > 0) --budget_;
            if (*rec.feedback.message.payload == distinguished_id_) done_ = true;
        }
        long long phase_before = replay_->phase_index();
        replay_->advance(rec.feedback, rec.jammed);
        if (replay_->moved()) {
            budget_ = queues_[static_cast<std::size_t>(replay_->holder())];
            if (replay_->last_left() == 2 && phase_before >= config_.n - 2 &&
                !distinguished_injected_)
                want_distinguished_ = true;
        }
        if (replay_->phase_boundary())
            for (std::size_t s = 0; s < queues_.size(); ++s) old_[s] = queues_[s];
        inj_.next_round();
        jam_.next_round();
    }

private:
    AdversaryType type_;
    ChannelConfig config_;
    bool older_first_;
    TokenBucket inj_, jam_;
    std::unique_ptr<SharedReplay> replay_;
    std::vector<long long> queues_;
    std::vector<long long> old_;
    long long budget_ = 0;  // the holder's acquisition snapshot
    bool want_distinguished_ = false;
    bool distinguished_injected_ = false;
    PacketId distinguished_id_ = -1;
    bool done_ = false;
};

// Tightness construction for mbtf: loads n-1 packets into the last list
// station, then keeps a critical station just ahead of the token big so
// each discovery sends the token back to the front; the critical walk
// moves to the preceding list station whenever the current one has
// stored n packets, wrapping when it reaches the front. Stops once the
// last station's packets have all been heard.
class MbtfTightnessAdversary : public Adversary {
public:
    MbtfTightnessAdversary(AdversaryType type, const ChannelConfig& config)
        : type_(type),
          config_(config),
          inj_(type.rho, type.b),
          jam_(type.lambda, type.b),
          replay_(config),
          queues_(static_cast<std::size_t>(config.n), 0) {
        if (config.n < 3) throw std::invalid_argument("mbtf-tightness needs at least 3 stations");
        last_ = config.n - 1;
    }

    const AdversaryType& type() const override { return type_; }

    bool jam(Round) override {
        if (done_ || !config_.jamming_enabled) return false;
        return jam_.try_consume(1);
    }

    std::vector<Station> inject(Round, const Feedback&) override {
        std::vector<Station> out;
        if (done_) return out;
        long long avail = inj_.whole();
        const long long n = config_.n;
        while (avail > 0 && seeded_ < n - 1) {
            out.push_back(last_);
            ++seeded_;
            --avail;
        }
        if (seeded_ == n - 1 && avail > 0) {
            if (critical_ < 0) critical_ = replay_.list()[static_cast<std::size_t>(n - 2)];
            // The walk can visit at most n-1 stations before every
            // candidate already stores n packets.
            for (int guard = 0; avail > 0 && guard < config_.n; ++guard) {
                long long need = n - queues_[static_cast<std::size_t>(critical_)] - queued(out, critical_);
                if (need <= 0) {
                    step_critical();
                    continue;
                }
                long long k = std::min(avail, need);
                for (long long i = 0; i < k; ++i) out.push_back(critical_);
                avail -= k;
            }
        }
        inj_.try_consume(static_cast<long long>(out.size()));
        return out;
    }

    void observe(const RoundRecord& rec) override {
        for (const auto& in : rec.injections) ++queues_[static_cast<std::size_t>(in.station)];
        if (rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload) {
            auto s = rec.feedback.message.sender;
            --queues_[static_cast<std::size_t>(s)];
            if (s == last_ && queues_[static_cast<std::size_t>(s)] == 0 && seeded_ == config_.n - 1)
                done_ = true;  // the delayed backlog has drained
        }
        replay_.advance(rec.feedback, rec.jammed);
        if (critical_ >= 0 && queues_[static_cast<std::size_t>(critical_)] >= config_.n)
            step_critical();
        inj_.next_round();
        jam_.next_round();
    }

private:
    static long long queued(const std::vector<Station>& out, Station s) {
        return static_cast<long long>(std::count(out.begin(), out.end(), s));
    }

    void step_critical() {
        // The station immediately preceding the current critical one in
        // the list; the walk wraps to position n-2 past the front and
        // never targets the last station.
        const auto& list = replay_.list();
        int pos = 0;
        for (int i = 0; i < config_.n; ++i)
            if (list[static_cast<std::size_t>(i)] == critical_) pos = i;
        int next = pos <= 1 ? config_.n - 2 : pos - 1;
        critical_ = list[static_cast<std::size_t>(next)];
    }

    AdversaryType type_;
    ChannelConfig config_;
    TokenBucket inj_, jam_;
    MbtfReplay replay_;
    std::vector<long long> queues_;
    Station last_ = 0;
    long long seeded_ = 0;
    Station critical_ = -1;
    bool done_ = false;
};

}  // namespace

std::unique_ptr<Adversary> make_scripted_adversary(AdversaryScript script, AdversaryType type) {
    return std::make_unique<ScriptedAdversary>(std::move(script), type);
}

std::unique_ptr<Adversary> make_greedy_adversary(AdversaryType type, const ChannelConfig& config,
                                                 Targeting targeting, AlgorithmId algorithm,
                                                 int J) {
    return std::make_unique<GreedyAdversary>(type, config, targeting, algorithm, J);
}

std::unique_ptr<Adversary> make_random_adversary(AdversaryType type, const ChannelConfig& config,
                                                 std::uint64_t seed) {
    return std::make_unique<RandomAdversary>(type, config, seed);
}

std::unique_ptr<Adversary> make_jrrw_tightness_adversary(AdversaryType type,
                                                         const ChannelConfig& config,
                                                         AlgorithmId algorithm, int J) {
    return std::make_unique<JrrwTightnessAdversary>(type, config, algorithm, J);
}

std::unique_ptr<Adversary> make_mbtf_tightness_adversary(AdversaryType type,
                                                         const ChannelConfig& config) {
    return std::make_unique<MbtfTightnessAdversary>(type, config);
}

}  // namespace macsim
