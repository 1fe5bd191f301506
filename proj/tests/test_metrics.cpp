#include "macsim/metrics.hpp"

#include "macsim/simulation.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace macsim;

namespace {

AdversaryType type_of(const char* rho, const char* lambda, long long b) {
    return AdversaryType{parse_rational(rho), parse_rational(lambda), b};
}

Trace synthetic_same_round_trace() {
    // Hand-built (not engine-produced): inject and hear in one round.
    Trace trace;
    trace.config = ChannelConfig{1, false, false};
    trace.algorithm = "rrw";
    RoundRecord rec;
    rec.round = 0;
    rec.transmitters = {OutboundMessage{0, 0, false}};
    rec.feedback = Feedback::heard(OutboundMessage{0, 0, false});
    rec.injections = {Injection{0, 0}};
    trace.rounds.push_back(rec);
    return trace;
}

}  // namespace

TEST_CASE("latency derivation: same-round service counts as zero") {
    LatencyReport report = compute_latencies(synthetic_same_round_trace());
    CHECK(report.total == 1);
    CHECK(report.heard == 1);
    CHECK(report.max_latency == 0);
    CHECK(report.histogram.at(0) == 1);
}

TEST_CASE("latency derivation: empty trace gives an empty summary") {
    Trace trace;
    trace.config = ChannelConfig{1, false, false};
    trace.algorithm = "rrw";
    LatencyReport report = compute_latencies(trace);
    CHECK(report.total == 0);
    CHECK(report.heard == 0);
    CHECK(report.max_latency == 0);
    CHECK(report.mean_latency == Rational(0));
}

TEST_CASE("one station, b packets at round zero: max latency is b") {
    for (long long b : {1LL, 3LL, 5LL}) {
        ChannelConfig config{1, false, false};
        AdversaryScript script;
        for (long long i = 0; i < b; ++i) script.injections[0].push_back(0);
        auto adv = make_scripted_adversary(script, type_of("0", "0", b));
        Trace trace = run_simulation(config, AlgorithmId::Rrw, -1, *adv, b + 3).trace;
        LatencyReport report = compute_latencies(trace);
        CHECK(report.heard == b);
        CHECK(report.max_latency == b);
        CHECK(report.mean_latency == Rational(b + 1, 2));
    }
}

TEST_CASE("occupancy equals injections minus hears, per round") {
    ChannelConfig config{4, true, false};
    AdversaryType type = type_of("1/2", "1/4", 2);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto adv = make_random_adversary(type, config, seed);
        Trace trace = run_simulation(config, AlgorithmId::Crrw, -1, *adv, 300).trace;
        OccupancyReport occ = queue_occupancy(trace);
        long long injected = 0, heard = 0;
        for (const auto& rec : trace.rounds) {
            injected += static_cast<long long>(rec.injections.size());
            if (rec.feedback.kind == FeedbackKind::Heard && rec.feedback.message.payload)
                ++heard;
            CHECK(occ.total[static_cast<std::size_t>(rec.round)] == injected - heard);
        }
    }
}

TEST_CASE("phase stats reject non-phase algorithms") {
    ChannelConfig config{3, false, false};
    auto adv = make_scripted_adversary(AdversaryScript{}, type_of("0", "0", 1));
    Trace trace = run_simulation(config, AlgorithmId::Mbtf, -1, *adv, 10).trace;
    CHECK_THROWS_AS(phase_stats(trace), std::invalid_argument);
}

TEST_CASE("phase injection recurrence holds on random runs") {
    ChannelConfig config{4, true, false};
    AdversaryType type = type_of("1/2", "1/4", 2);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto adv = make_random_adversary(type, config, seed);
        Trace trace = run_simulation(config, AlgorithmId::OfcRrw, -1, *adv, 400).trace;
        PhaseDecomposition phases = phase_stats(trace);
        REQUIRE(phases.full.size() >= 2);
        for (std::size_t i = 0; i + 1 < phases.full.size(); ++i) {
            CHECK(Rational(phases.full[i + 1].packets_at_start) <=
                  type.rho * Rational(phases.full[i].length) + Rational(type.b));
        }
        // Phases partition the trace.
        Round covered = 0;
        for (const auto& p : phases.full) {
            CHECK(p.start == covered);
            covered = p.end + 1;
        }
        if (phases.partial) {
            CHECK(phases.partial->start == covered);
            covered = phases.partial->end + 1;
        }
        CHECK(covered == static_cast<Round>(trace.rounds.size()));
    }
}

TEST_CASE("credit: zero when all queues are under their list slack") {
    ChannelConfig config{4, false, false};
    AdversaryType type = type_of("1/4", "0", 1);
    auto adv = make_random_adversary(type, config, 5);
    Trace trace = run_simulation(config, AlgorithmId::Mbtf, -1, *adv, 200).trace;
    CreditReport credit = credit_ledger(trace);
    for (std::size_t t = 0; t < credit.credit.size(); ++t) {
        // Credit never exceeds the number of queued packets.
        CHECK(credit.credit[t] <= credit.total_queue[t]);
    }
}

TEST_CASE("credit identity across a big-station delay window") {
    // Three packets make station 1 big (n = 3). Discovery happens when
    // the token reaches it; the window ends when the token reaches the
    // station that sat just behind it in the list.
    ChannelConfig config{3, false, false};
    AdversaryType type = type_of("1", "0", 4);
    AdversaryScript script;
    script.injections[0] = {1, 1, 1};
    auto adv = make_scripted_adversary(script, type);
    Trace trace = run_simulation(config, AlgorithmId::Mbtf, -1, *adv, 12).trace;
    CreditReport credit = credit_ledger(trace);
    REQUIRE(credit.windows.size() >= 1);
    const DelayWindow& w = credit.windows.front();
    CHECK(w.discovery == 1);
    CHECK(w.from_position == 1);
    CHECK(w.successor == 2);
    CHECK(w.end == 3);
    CHECK(w.clear_rounds == 2);
    CHECK_FALSE(w.truncated);
    long long before = snapshot_credit(trace, w.discovery - 1, w.discovery - 1);
    long long after = snapshot_credit(trace, w.discovery - 1, w.end);
    CHECK(before == 2);
    CHECK(after == before - w.clear_rounds);
}

TEST_CASE("credit identity with a taller big station and a bigger list") {
    // n = 4, station 2 collects 5 packets; the unload takes q - (n-1)
    // big rounds before the token travels on.
    ChannelConfig config{4, false, false};
    AdversaryType type = type_of("1", "0", 4);
    AdversaryScript script;
    script.injections[0] = {2, 2, 2, 2};
    script.injections[1] = {2};
    auto adv = make_scripted_adversary(script, type);
    Trace trace = run_simulation(config, AlgorithmId::Mbtf, -1, *adv, 16).trace;
    CreditReport credit = credit_ledger(trace);
    REQUIRE(credit.windows.size() >= 1);
    const DelayWindow& w = credit.windows.front();
    long long before = snapshot_credit(trace, w.discovery - 1, w.discovery - 1);
    long long after = snapshot_credit(trace, w.discovery - 1, w.end);
    CHECK(after == before - w.clear_rounds);
}

TEST_CASE("unload-window checks pass on greedy runs and fail on corrupted traces") {
    ChannelConfig config{4, true, false};
    AdversaryType type = type_of("1/2", "1/4", 2);
    int J = static_cast<int>(type.jamming_burstiness());
    auto adv = make_greedy_adversary(type, config, Targeting::round_robin(),
                                     AlgorithmId::OfJrrw, J);
    Trace trace = run_simulation(config, AlgorithmId::OfJrrw, J, *adv, 600).trace;
    CheckOutcome ok = lemma_check(trace, "jrrw-window", type);
    CHECK(ok.pass);
    CHECK(ok.applicable);

    // Deleting the heard round of a lone packet breaks the window
    // guarantee: its old packet is then never served.
    ChannelConfig sparse_config{4, true, false};
    AdversaryType sparse_type = type_of("0", "1/4", 2);
    AdversaryScript script;
    script.injections[0] = {1};
    auto sparse_adv = make_scripted_adversary(script, sparse_type);
    Trace sparse =
        run_simulation(sparse_config, AlgorithmId::OfJrrw, 2, *sparse_adv, 200).trace;
    CHECK(lemma_check(sparse, "jrrw-window", sparse_type).pass);
    Trace corrupted = sparse;
    bool removed = false;
    for (auto& rec : corrupted.rounds) {
        if (!removed && rec.feedback.kind == FeedbackKind::Heard &&
            rec.feedback.message.payload) {
            rec.feedback = Feedback::silence();
            rec.transmitters.clear();
            removed = true;
        }
    }
    REQUIRE(removed);
    CheckOutcome bad = lemma_check(corrupted, "jrrw-window", sparse_type);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("lemma checks: empty traces pass, unknown ids throw, wrong algorithm is inapplicable") {
    Trace trace;
    trace.config = ChannelConfig{4, true, false};
    trace.algorithm = "of-jrrw";
    trace.J = 2;
    AdversaryType type = type_of("1/2", "1/4", 2);
    CHECK(lemma_check(trace, "jrrw-window", type).pass);
    CHECK_THROWS_AS(lemma_check(trace, "no-such-lemma", type), std::invalid_argument);
    trace.algorithm = "rrw";
    trace.J = -1;
    CHECK_FALSE(lemma_check(trace, "jrrw-window", type).applicable);
}

TEST_CASE("search-phase check passes on random srr runs") {
    for (const char* name : {"srr", "of-srr"}) {
        ChannelConfig config{8, false, true};
        AdversaryType type = type_of("1/2", "0", 2);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto adv = make_random_adversary(type, config, seed);
            Trace trace = run_simulation(config, *parse_algorithm(name), -1, *adv, 400).trace;
            CheckOutcome out = lemma_check(trace, "search-phase", type);
            CAPTURE(name);
            CAPTURE(seed);
            CHECK_MESSAGE(out.pass, out.details);
        }
    }
}

TEST_CASE("metrics csv lists in-flight packets with dashes") {
    ChannelConfig config{2, false, false};
    AdversaryScript script;
    script.injections[0] = {1, 1};
    auto adv = make_scripted_adversary(script, type_of("0", "0", 2));
    Trace trace = run_simulation(config, AlgorithmId::Rrw, -1, *adv, 2).trace;
    LatencyReport report = compute_latencies(trace);
    CHECK(metrics_csv(report) ==
          "packet_id,station,injected,heard,latency\n"
          "0,1,0,1,1\n"
          "1,1,0,-,-\n");
}
