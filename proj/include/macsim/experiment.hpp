#pragma once

#include "macsim/adversary.hpp"
#include "macsim/algorithm_id.hpp"
#include "macsim/bounds.hpp"
#include "macsim/metrics.hpp"
#include "macsim/simulation.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace macsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AdversarySpec {
    enum Kind { Greedy, Random, JrrwTightness, MbtfTightness, Script } kind = Greedy;
    Targeting targeting;  // Greedy
    std::uint64_t seed = 0;
    std::string script_path;

    std::string name() const;
    // "greedy:single:0" | "greedy:round-robin" | "greedy:behind-token" |
    // "random" | "jrrw-tightness" | "mbtf-tightness" | "script:PATH"
    static AdversarySpec parse(const std::string& text);
};

struct RunSpec {
    AlgorithmId algorithm = AlgorithmId::Rrw;
    int n = 2;
    AdversaryType type;
    int J = -1;           // resolved for the jrrw family
    bool jamming = false; // resolved channel
    Round horizon = 0;    // 0: auto = ceil(4 * latency bound)
    AdversarySpec adversary;

    ChannelConfig channel() const {
        return ChannelConfig{n, jamming, requires_collision_detection(algorithm)};
    }
    std::string config_id() const;
};

struct RunResult {
    RunSpec spec;
    Round horizon = 0;
    Trace trace;
    std::vector<PendingPacket> in_flight;
    LatencyReport latency;
    long long max_queue = 0;
    BoundResult bound;
    ComparisonRow comparison;
};

// Builds the adversary, resolves the horizon, runs the simulation and
// derives metrics and the bound comparison. Throws ConfigError on bad
// specs, BudgetViolation when a script overdraws its type.
RunResult execute_run(const RunSpec& spec);

std::unique_ptr<Adversary> build_adversary(const RunSpec& spec);

// Flat key=value configuration with comma-separated lists expanded as a
// cross product. Keys: algorithm, n, rho, lambda, b, J, horizon,
// adversary, seed, channel (auto|clear|jamming), out.
struct ParsedConfig {
    std::map<std::string, std::vector<std::string>> values;

    static ParsedConfig parse(const std::string& text);
    static ParsedConfig load(const std::string& path);
    void set(const std::string& key, const std::string& value);  // override, single value
};

// Expands the cross product in fixed key order (algorithm, n, rho,
// lambda, b, J, adversary, seed); grid order is deterministic.
std::vector<RunSpec> expand_grid(const ParsedConfig& config);

std::string summary_csv_header();
std::string summary_csv_row(const RunResult& result);
std::string run_report(const RunResult& result);

}  // namespace macsim
