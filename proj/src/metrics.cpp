#include "macsim/metrics.hpp"

#include "macsim/replay.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace macsim {

namespace {

AlgorithmId algorithm_of(const Trace& trace) {
    auto id = parse_algorithm(trace.algorithm);
    if (!id) throw std::invalid_argument("trace carries unknown algorithm '" + trace.algorithm + "'");
    return *id;
}

long long lg_ceil(long long n) {  // ceil(log2 n), lg 1 = 0
    long long lg = 0;
    while ((1LL << lg) < n) ++lg;
    return lg;
}

}  // namespace

LatencyReport compute_latencies(const Trace& trace) {
    LatencyReport report;
    const Round horizon = static_cast<Round>(trace.rounds.size());
    for (const auto& rec : trace.rounds) {
        for (const auto& in : rec.injections) {
            if (in.packet != static_cast<PacketId>(report.packets.size()))
                throw std::invalid_argument("packet ids are not dense and monotone");
            report.packets.push_back(PacketStats{in.packet, in.station, rec.round, std::nullopt});
        }
        if (rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload) {
            PacketId p = *rec.feedback.message.payload;
            if (p < 0 || p >= static_cast<PacketId>(report.packets.size()))
                throw std::invalid_argument("heard packet was never injected");
            report.packets[static_cast<std::size_t>(p)].heard = rec.round;
        }
    }
    report.total = static_cast<long long>(report.packets.size());
    long long latency_sum = 0;
    for (const auto& ps : report.packets) {
        if (ps.heard) {
            Round latency = *ps.heard - ps.injected;
            ++report.heard;
            latency_sum += latency;
            report.max_latency = std::max(report.max_latency, latency);
            ++report.histogram[latency];
        } else {
            report.max_pending_age = std::max(report.max_pending_age, horizon - ps.injected);
        }
    }
    if (report.heard > 0) report.mean_latency = Rational(latency_sum, report.heard);
    report.observed_worst = std::max(report.max_latency, report.max_pending_age);
    return report;
}

OccupancyReport queue_occupancy(const Trace& trace) {
    OccupancyReport report;
    const auto n = static_cast<std::size_t>(trace.config.n);
    std::vector<long long> sizes(n, 0);
    long long total = 0;
    report.total.reserve(trace.rounds.size());
    report.per_station.reserve(trace.rounds.size());
    for (const auto& rec : trace.rounds) {
        if (rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload) {
            --sizes[static_cast<std::size_t>(rec.feedback.message.sender)];
            --total;
        }
        for (const auto& in : rec.injections) {
            ++sizes[static_cast<std::size_t>(in.station)];
            ++total;
        }
        report.total.push_back(total);
        report.per_station.push_back(sizes);
        report.max_total = std::max(report.max_total, total);
    }
    return report;
}

PhaseDecomposition phase_stats(const Trace& trace) {
    AlgorithmId id = algorithm_of(trace);
    if (!is_phase_algorithm(id))
        throw std::invalid_argument(trace.algorithm + " is not a phase algorithm");
    auto replay = make_replay(id, trace.config, trace.J);

    PhaseDecomposition out;
    PhaseStats cur;
    cur.index = 1;
    cur.start = 0;
    long long queued = 0;  // end-of-round system occupancy
    for (const auto& rec : trace.rounds) {
        bool heard_packet =
            rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload.has_value();
        if (heard_packet) {
            ++cur.heard_during;
            --queued;
        }
        cur.injected_during += static_cast<long long>(rec.injections.size());
        queued += static_cast<long long>(rec.injections.size());
        replay->advance(rec.feedback, rec.jammed);
        if (replay->phase_boundary()) {
            cur.end = rec.round;
            cur.length = cur.end - cur.start + 1;
            out.full.push_back(cur);
            cur = PhaseStats{};
            cur.index = static_cast<long long>(out.full.size()) + 1;
            cur.start = rec.round + 1;
            cur.packets_at_start = queued;
        }
    }
    if (cur.start < static_cast<Round>(trace.rounds.size())) {
        cur.end = static_cast<Round>(trace.rounds.size()) - 1;
        cur.length = cur.end - cur.start + 1;
        out.partial = cur;
    }
    return out;
}

CreditReport credit_ledger(const Trace& trace) {
    if (algorithm_of(trace) != AlgorithmId::Mbtf)
        throw std::invalid_argument("credit ledger applies to mbtf traces");
    const int n = trace.config.n;
    MbtfReplay replay(trace.config);
    OccupancyReport occ = queue_occupancy(trace);

    CreditReport report;
    report.total_queue = occ.total;
    report.credit.reserve(trace.rounds.size());

    std::optional<DelayWindow> open;
    for (const auto& rec : trace.rounds) {
        replay.advance(rec.feedback, rec.jammed);
        const auto& sizes = occ.per_station[static_cast<std::size_t>(rec.round)];
        long long credit = 0;
        const auto& list = replay.list();
        for (int p = 0; p < n; ++p) {
            long long q = sizes[static_cast<std::size_t>(list[static_cast<std::size_t>(p)])];
            long long slack = n - 1 - p;  // positions behind it in the list
            if (q > slack) credit += q - slack;
        }
        report.credit.push_back(credit);

        if (open) {
            if (!rec.jammed) ++open->clear_rounds;
            if (replay.big_discovered()) {
                open->end = rec.round;
                open->ended_by_discovery = true;
                report.windows.push_back(*open);
                open.reset();
            } else if (replay.holder() == open->successor) {
                open->end = rec.round;
                report.windows.push_back(*open);
                open.reset();
            }
        }
        if (replay.big_discovered() && replay.discovered_from_position() + 1 < n) {
            DelayWindow w;
            w.discovery = rec.round;
            w.from_position = replay.discovered_from_position();
            w.successor =
                replay.list()[static_cast<std::size_t>(replay.discovered_from_position() + 1)];
            open = w;
        }
    }
    if (open) {
        open->end = static_cast<Round>(trace.rounds.size()) - 1;
        open->truncated = true;
        report.windows.push_back(*open);
    }
    return report;
}

long long snapshot_credit(const Trace& trace, Round snapshot_round, Round eval_round) {
    if (algorithm_of(trace) != AlgorithmId::Mbtf)
        throw std::invalid_argument("credit applies to mbtf traces");
    if (eval_round < snapshot_round) throw std::invalid_argument("eval round before snapshot");
    const int n = trace.config.n;
    std::vector<long long> snap(static_cast<std::size_t>(n), 0);
    std::vector<long long> heard_since(static_cast<std::size_t>(n), 0);
    MbtfReplay replay(trace.config);
    for (const auto& rec : trace.rounds) {
        if (rec.round > eval_round) break;
        bool heard_packet =
            rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload.has_value();
        if (rec.round <= snapshot_round) {
            for (const auto& in : rec.injections) ++snap[static_cast<std::size_t>(in.station)];
            if (heard_packet) --snap[static_cast<std::size_t>(rec.feedback.message.sender)];
        } else if (heard_packet) {
            ++heard_since[static_cast<std::size_t>(rec.feedback.message.sender)];
        }
        replay.advance(rec.feedback, rec.jammed);
    }
    long long credit = 0;
    const auto& list = replay.list();
    for (int p = 0; p < n; ++p) {
        Station s = list[static_cast<std::size_t>(p)];
        long long q = snap[static_cast<std::size_t>(s)] - heard_since[static_cast<std::size_t>(s)];
        long long slack = n - 1 - p;
        if (q > slack) credit += q - slack;
    }
    return credit;
}

namespace {

// Shared engine for the two unload-window checks: from any round with
// x eligible old packets, at least x packets must be heard within
// ceil((x + cycle + b) / (1 - lambda)) rounds.
CheckOutcome unload_window_check(const Trace& trace, long long cycle_voids,
                                 const AdversaryType& type) {
    AlgorithmId id = algorithm_of(trace);
    auto replay = make_replay(id, trace.config, trace.J);
    const Round horizon = static_cast<Round>(trace.rounds.size());

    // heard_prefix[t] = packets heard in rounds [0, t)
    std::vector<long long> heard_prefix(static_cast<std::size_t>(horizon) + 1, 0);
    std::vector<long long> old_at_start(static_cast<std::size_t>(horizon), 0);
    long long old_count = 0;
    long long phase_injections = 0;
    for (const auto& rec : trace.rounds) {
        auto t = static_cast<std::size_t>(rec.round);
        old_at_start[t] = old_count;
        bool heard_packet =
            rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload.has_value();
        heard_prefix[t + 1] = heard_prefix[t] + (heard_packet ? 1 : 0);
        if (heard_packet && old_count > 0) --old_count;
        phase_injections += static_cast<long long>(rec.injections.size());
        replay->advance(rec.feedback, rec.jammed);
        if (replay->phase_boundary()) {
            old_count += phase_injections;  // new packets graduate
            phase_injections = 0;
        }
    }

    const Rational one_minus_lambda = Rational(1) - type.lambda;
    for (Round t = 0; t < horizon; ++t) {
        long long x = old_at_start[static_cast<std::size_t>(t)];
        if (x < 1) continue;
        long long window =
            ceil_rat(Rational(x + cycle_voids + type.b) / one_minus_lambda);
        if (t + window > horizon) continue;  // truncated, cannot evaluate
        long long heard = heard_prefix[static_cast<std::size_t>(t + window)] -
                          heard_prefix[static_cast<std::size_t>(t)];
        if (heard < x) {
            CheckOutcome out;
            out.pass = false;
            out.round = t;
            out.details = "only " + std::to_string(heard) + " of " + std::to_string(x) +
                          " packets heard within " + std::to_string(window) + " rounds";
            return out;
        }
    }
    return CheckOutcome{};
}

CheckOutcome search_phase_check(const Trace& trace) {
    const int n = trace.config.n;
    const long long lg = lg_ceil(n);
    SearchReplay replay(trace.config);
    CheckOutcome out;
    Round phase_start = 0;
    long long heard = 0, episodes = 0;
    long long queued = 0;
    long long gap = 0;  // consecutive non-heard rounds with packets pending
    const long long gap_budget = 3 * lg + 2;
    for (const auto& rec : trace.rounds) {
        bool heard_packet =
            rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload.has_value();
        // A backlog must not sit unheard longer than one stack descent:
        // an unload-end silence, the pops above the packet's segment and
        // the collision path down to it.
        if (queued > 0 && !heard_packet) {
            if (++gap > gap_budget) {
                out.pass = false;
                out.round = rec.round;
                out.details = std::to_string(gap) + " consecutive rounds without a heard packet "
                              "while the backlog is nonempty (budget " +
                              std::to_string(gap_budget) + ")";
                return out;
            }
        } else {
            gap = 0;
        }
        if (heard_packet) {
            ++heard;
            --queued;
        }
        queued += static_cast<long long>(rec.injections.size());
        replay.advance(rec.feedback, rec.jammed);
        if (replay.unload_started()) ++episodes;
        if (replay.phase_boundary()) {
            Round length = rec.round - phase_start + 1;
            long long budget = heard + 2 * std::min(episodes * lg, static_cast<long long>(n - 1)) + 1;
            if (length > budget) {
                out.pass = false;
                out.round = phase_start;
                out.details = "sweep of " + std::to_string(length) + " rounds exceeds " +
                              std::to_string(budget) + " (" + std::to_string(heard) +
                              " heard, " + std::to_string(episodes) + " episodes)";
                return out;
            }
            phase_start = rec.round + 1;
            heard = episodes = 0;
        }
    }
    return out;
}

}  // namespace

CheckOutcome lemma_check(const Trace& trace, const std::string& lemma_id,
                         const AdversaryType& type) {
    AlgorithmId id = algorithm_of(trace);
    if (lemma_id == "jrrw-window") {
        if (id != AlgorithmId::OfJrrw) {
            CheckOutcome out;
            out.applicable = false;
            out.details = "jrrw-window applies to of-jrrw traces";
            return out;
        }
        return unload_window_check(
            trace, static_cast<long long>(trace.config.n) * (trace.J + 1), type);
    }
    if (lemma_id == "control-window") {
        if (id != AlgorithmId::OfcRrw) {
            CheckOutcome out;
            out.applicable = false;
            out.details = "control-window applies to ofc-rrw traces";
            return out;
        }
        return unload_window_check(trace, trace.config.n, type);
    }
    if (lemma_id == "search-phase") {
        if (id != AlgorithmId::Srr && id != AlgorithmId::OfSrr) {
            CheckOutcome out;
            out.applicable = false;
            out.details = "search-phase applies to srr/of-srr traces";
            return out;
        }
        return search_phase_check(trace);
    }
    throw std::invalid_argument("unknown lemma id '" + lemma_id + "'");
}

CheckOutcome validate_trace(const Trace& trace) {
    CheckOutcome out;
    for (const auto& rec : trace.rounds) {
        Feedback expect = resolve_round(rec.transmitters, rec.jammed, trace.config);
        if (!(expect == rec.feedback)) {
            out.pass = false;
            out.round = rec.round;
            out.details = "stored feedback differs from resolve_round";
            return out;
        }
    }
    return out;
}

CheckOutcome check_shared_state_coherence(const Trace& trace) {
    AlgorithmId id = algorithm_of(trace);
    auto replay = make_replay(id, trace.config, trace.J);
    CheckOutcome out;
    const bool search = id == AlgorithmId::Srr || id == AlgorithmId::OfSrr;
    auto* search_replay = search ? static_cast<SearchReplay*>(replay.get()) : nullptr;
    for (const auto& rec : trace.rounds) {
        for (const auto& m : rec.transmitters) {
            bool ok;
            if (!search) {
                ok = m.sender == replay->holder();
            } else if (search_replay->unloading()) {
                ok = m.sender == search_replay->unloader();
            } else {
                auto [lo, hi] = search_replay->stack().back();
                ok = m.sender >= lo && m.sender <= hi;
            }
            if (!ok) {
                out.pass = false;
                out.round = rec.round;
                out.details = "transmitter " + std::to_string(m.sender) +
                              " disagrees with the replayed shared state";
                return out;
            }
        }
        replay->advance(rec.feedback, rec.jammed);
    }
    return out;
}

CheckOutcome check_conservation(const Trace& trace) {
    CheckOutcome out;
    std::vector<Station> owner;  // by packet id
    std::set<PacketId> heard;
    std::vector<PacketId> last_heard_per_station(static_cast<std::size_t>(trace.config.n), -1);
    for (const auto& rec : trace.rounds) {
        if (rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload) {
            PacketId p = *rec.feedback.message.payload;
            Station s = rec.feedback.message.sender;
            bool fresh = p >= 0 && p < static_cast<PacketId>(owner.size()) &&
                         owner[static_cast<std::size_t>(p)] == s && heard.insert(p).second;
            bool fifo = p > last_heard_per_station[static_cast<std::size_t>(s)];
            if (!fresh || !fifo) {
                out.pass = false;
                out.round = rec.round;
                out.details = !fresh ? "heard packet not injected (or heard twice)"
                                     : "station heard packets out of injection order";
                return out;
            }
            last_heard_per_station[static_cast<std::size_t>(s)] = p;
        }
        for (const auto& in : rec.injections) {
            if (in.packet != static_cast<PacketId>(owner.size())) {
                out.pass = false;
                out.round = rec.round;
                out.details = "packet ids not assigned densely at injection";
                return out;
            }
            owner.push_back(in.station);
        }
    }
    return out;
}

std::string metrics_csv(const LatencyReport& report) {
    std::string out = "packet_id,station,injected,heard,latency\n";
    for (const auto& ps : report.packets) {
        out += std::to_string(ps.id);
        out += ',';
        out += std::to_string(ps.station);
        out += ',';
        out += std::to_string(ps.injected);
        out += ',';
        if (ps.heard) {
            out += std::to_string(*ps.heard);
            out += ',';
            out += std::to_string(*ps.heard - ps.injected);
        } else {
            out += "-,-";
        }
        out += '\n';
    }
    return out;
}

}  // namespace macsim
