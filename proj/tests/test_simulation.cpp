#include "macsim/simulation.hpp"

#include "macsim/metrics.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace macsim;

TEST_CASE("zero horizon produces an empty trace") {
    ChannelConfig config{2, false, false};
    AdversaryType type{parse_rational("0"), parse_rational("0"), 1};
    auto adv = make_scripted_adversary(AdversaryScript{}, type);
    SimulationResult sim = run_simulation(config, AlgorithmId::Rrw, -1, *adv, 0);
    CHECK(sim.trace.rounds.empty());
    CHECK(sim.in_flight.empty());
}

TEST_CASE("conservation, uniqueness and FIFO hold across algorithms and seeds") {
    for (const char* name :
         {"rrw", "of-rrw", "srr", "of-srr", "mbtf", "jrrw", "of-jrrw", "c-rrw", "ofc-rrw"}) {
        AlgorithmId id = *parse_algorithm(name);
        ChannelConfig config{4, !forbids_jamming(id), requires_collision_detection(id)};
        AdversaryType type{parse_rational("1/2"),
                           config.jamming_enabled ? parse_rational("1/4") : parse_rational("0"),
                           2};
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            auto adv = make_random_adversary(type, config, seed);
            SimulationResult sim =
                run_simulation(config, id, is_jrrw_family(id) ? 3 : -1, *adv, 300);
            CAPTURE(name);
            CAPTURE(seed);
            CheckOutcome out = check_conservation(sim.trace);
            CHECK_MESSAGE(out.pass, out.details);
            out = validate_trace(sim.trace);
            CHECK_MESSAGE(out.pass, out.details);
            // Heard + still queued accounts for every injected packet.
            LatencyReport lat = compute_latencies(sim.trace);
            CHECK(lat.heard + static_cast<long long>(sim.in_flight.size()) == lat.total);
        }
    }
}

TEST_CASE("identical runs serialize byte-identically") {
    ChannelConfig config{4, true, false};
    AdversaryType type{parse_rational("1/2"), parse_rational("1/4"), 2};
    auto run_once = [&]() {
        auto adv = make_random_adversary(type, config, 99);
        return run_simulation(config, AlgorithmId::OfJrrw, 3, *adv, 500);
    };
    SimulationResult a = run_once();
    SimulationResult b = run_once();
    CHECK(canonical_trace(a.trace) == canonical_trace(b.trace));
    CHECK(metrics_csv(compute_latencies(a.trace)) == metrics_csv(compute_latencies(b.trace)));
}

TEST_CASE("in-flight packets are reported, never dropped") {
    ChannelConfig config{2, false, false};
    AdversaryType type{parse_rational("0"), parse_rational("0"), 3};
    AdversaryScript script;
    script.injections[0] = {1, 1, 1};
    auto adv = make_scripted_adversary(script, type);
    SimulationResult sim = run_simulation(config, AlgorithmId::Rrw, -1, *adv, 2);
    // Round 0 is silent, round 1 hears the first packet; two remain.
    REQUIRE(sim.in_flight.size() == 2);
    CHECK(sim.in_flight[0].id == 1);
    CHECK(sim.in_flight[1].id == 2);
    CHECK(sim.in_flight[0].station == 1);
}

TEST_CASE("budget violations during a run name the round and kind") {
    ChannelConfig config{2, false, false};
    AdversaryType type{parse_rational("0"), parse_rational("0"), 1};
    AdversaryScript script;
    script.injections[5] = {0, 0};  // two packets against a lifetime budget of one
    auto adv = make_scripted_adversary(script, type);
    try {
        run_simulation(config, AlgorithmId::Rrw, -1, *adv, 10);
        FAIL("expected a budget violation");
    } catch (const BudgetViolation& e) {
        CHECK(e.round == 5);
        CHECK(e.kind == BudgetKind::Injection);
    }
}

TEST_CASE("jamming a channel without jamming is rejected") {
    ChannelConfig config{2, false, false};
    AdversaryType type{parse_rational("0"), parse_rational("1/2"), 1};
    AdversaryScript script;
    script.jams.insert(0);
    auto adv = make_scripted_adversary(script, type);
    CHECK_THROWS_AS(run_simulation(config, AlgorithmId::Rrw, -1, *adv, 5),
                    std::invalid_argument);
}

TEST_CASE("packet ids order by station name then emission within a round") {
    ChannelConfig config{4, false, false};
    AdversaryType type{parse_rational("0"), parse_rational("0"), 3};
    AdversaryScript script;
    script.injections[0] = {3, 0, 3};  // emission order
    auto adv = make_scripted_adversary(script, type);
    SimulationResult sim = run_simulation(config, AlgorithmId::Rrw, -1, *adv, 1);
    const auto& inj = sim.trace.rounds[0].injections;
    REQUIRE(inj.size() == 3);
    CHECK(inj[0] == Injection{0, 0});
    CHECK(inj[1] == Injection{3, 1});
    CHECK(inj[2] == Injection{3, 2});
}
