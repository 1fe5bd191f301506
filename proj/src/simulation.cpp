#include "macsim/simulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace macsim {

SimulationResult run_simulation(const ChannelConfig& config, BroadcastAlgorithm& algorithm,
                                const std::string& algorithm_name, int J, Adversary& adversary,
                                Round horizon) {
    const AdversaryType& type = adversary.type();
    type.validate();

    SimulationResult result;
    Trace& trace = result.trace;
    trace.config = config;
    trace.algorithm = algorithm_name;
    trace.J = J;
    trace.rounds.reserve(static_cast<std::size_t>(horizon));

    TokenBucket inj_budget(type.rho, type.b);
    TokenBucket jam_budget(type.lambda, type.b);
    PacketId next_id = 0;

    for (Round r = 0; r < horizon; ++r) {
        RoundRecord rec;
        rec.round = r;
        for (Station i = 0; i < config.n; ++i)
            if (auto m = algorithm.transmit(i)) rec.transmitters.push_back(*m);

        rec.jammed = adversary.jam(r);
        if (rec.jammed) {
            if (!config.jamming_enabled)
                throw std::invalid_argument("adversary jams a channel without jamming");
            if (!jam_budget.try_consume(1)) throw BudgetViolation(r, BudgetKind::Jamming);
        }
        rec.feedback = resolve_round(rec.transmitters, rec.jammed, config);

        std::vector<Station> targets = adversary.inject(r, rec.feedback);
        for (Station s : targets)
            if (s < 0 || s >= config.n)
                throw std::invalid_argument("injection into an invalid station name");
        if (!inj_budget.try_consume(static_cast<long long>(targets.size())))
            throw BudgetViolation(r, BudgetKind::Injection);
        std::stable_sort(targets.begin(), targets.end());
        rec.injections.reserve(targets.size());
        for (Station s : targets) rec.injections.push_back(Injection{s, next_id++});

        algorithm.advance(rec.feedback, rec.injections);
        adversary.observe(rec);
        inj_budget.next_round();
        jam_budget.next_round();
        trace.rounds.push_back(std::move(rec));
    }

    for (Station i = 0; i < config.n; ++i)
        for (PacketId p : algorithm.queue(i)) result.in_flight.push_back(PendingPacket{p, i});
    std::sort(result.in_flight.begin(), result.in_flight.end(),
              [](const PendingPacket& a, const PendingPacket& b) { return a.id < b.id; });
    return result;
}

SimulationResult run_simulation(const ChannelConfig& config, AlgorithmId id, int J,
                                Adversary& adversary, Round horizon, FaultInjection faults) {
    auto algorithm = make_algorithm(id, config, J, faults);
    return run_simulation(config, *algorithm, to_string(id), J, adversary, horizon);
}

}  // namespace macsim
