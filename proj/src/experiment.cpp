#include "macsim/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace macsim {

std::string AdversarySpec::name() const {
    switch (kind) {
        case Greedy: return "greedy-" + targeting.name();
        case Random: return "random-s" + std::to_string(seed);
        case JrrwTightness: return "jrrw-tightness";
        case MbtfTightness: return "mbtf-tightness";
        case Script: return "script";
    }
    return "?";
}

AdversarySpec AdversarySpec::parse(const std::string& text) {
    AdversarySpec spec;
    if (text.rfind("greedy:", 0) == 0) {
        spec.kind = Greedy;
        std::string rest = text.substr(7);
        if (rest == "round-robin") {
            spec.targeting = Targeting::round_robin();
        } else if (rest == "behind-token") {
            spec.targeting = Targeting::behind_token();
        } else if (rest.rfind("single:", 0) == 0) {
            try {
                spec.targeting = Targeting::single(std::stoi(rest.substr(7)));
            } catch (const std::exception&) {
                throw ConfigError("bad greedy target: " + text);
            }
        } else {
            throw ConfigError("unknown greedy targeting: " + text);
        }
        return spec;
    }
    if (text == "random") {
        spec.kind = Random;
        return spec;
    }
    if (text == "jrrw-tightness") {
        spec.kind = JrrwTightness;
        return spec;
    }
    if (text == "mbtf-tightness") {
        spec.kind = MbtfTightness;
        return spec;
    }
    if (text.rfind("script:", 0) == 0) {
        spec.kind = Script;
        spec.script_path = text.substr(7);
        if (spec.script_path.empty()) throw ConfigError("script adversary needs a path");
        return spec;
    }
    throw ConfigError("unknown adversary spec: " + text);
}

namespace {

std::string rat_id(const Rational& r) {
    std::string s = format_rational(r);
    std::replace(s.begin(), s.end(), '/', '_');
    return s;
}

}  // namespace

std::string RunSpec::config_id() const {
    std::string id = to_string(algorithm) + "-n" + std::to_string(n);
    if (is_jrrw_family(algorithm)) id += "-J" + std::to_string(J);
    id += "-rho" + rat_id(type.rho) + "-lam" + rat_id(type.lambda) + "-b" + std::to_string(type.b);
    id += jamming ? "-jam" : "-clear";
    id += "-" + adversary.name();
    return id;
}

std::unique_ptr<Adversary> build_adversary(const RunSpec& spec) {
    ChannelConfig channel = spec.channel();
    switch (spec.adversary.kind) {
        case AdversarySpec::Greedy:
            return make_greedy_adversary(spec.type, channel, spec.adversary.targeting,
                                         spec.algorithm, spec.J);
        case AdversarySpec::Random:
            return make_random_adversary(spec.type, channel, spec.adversary.seed);
        case AdversarySpec::JrrwTightness:
            return make_jrrw_tightness_adversary(spec.type, channel, spec.algorithm, spec.J);
        case AdversarySpec::MbtfTightness:
            return make_mbtf_tightness_adversary(spec.type, channel);
        case AdversarySpec::Script: {
            AdversaryScript script = load_script(spec.adversary.script_path);
            return make_scripted_adversary(std::move(script), spec.type);
        }
    }
    throw ConfigError("unknown adversary kind");
}

RunResult execute_run(const RunSpec& spec) {
    spec.type.validate();
    ChannelConfig channel = spec.channel();
    check_compatibility(spec.algorithm, channel, is_jrrw_family(spec.algorithm) ? spec.J : 0);
    if (!channel.jamming_enabled && spec.type.lambda != Rational(0))
        throw ConfigError("lambda > 0 needs a jamming channel");

    RunResult result;
    result.spec = spec;
    result.bound = latency_bound(spec.algorithm, spec.n, spec.type,
                                 is_jrrw_family(spec.algorithm) ? std::optional<int>(spec.J)
                                                                : std::nullopt);
    result.horizon = spec.horizon;
    if (result.horizon <= 0) {
        if (result.bound.status != BoundStatus::Finite)
            throw ConfigError("horizon required: no finite latency bound for " +
                              spec.config_id() + " (" + result.bound.reason + ")");
        result.horizon = ceil_rat(Rational(4) * result.bound.value);
        if (result.horizon < 1) result.horizon = 1;
    }

    auto adversary = build_adversary(spec);
    if (spec.adversary.kind == AdversarySpec::Script) {
        AdversaryScript script = load_script(spec.adversary.script_path);
        if (!channel.jamming_enabled && !script.jams.empty())
            throw ConfigError("script jams a channel without jamming");
        ScriptValidation v = validate_script(script, spec.type, result.horizon);
        if (!v.ok)
            throw BudgetViolation(v.window_begin, v.kind);
    }

    SimulationResult sim =
        run_simulation(channel, spec.algorithm, spec.J, *adversary, result.horizon);
    result.trace = std::move(sim.trace);
    result.in_flight = std::move(sim.in_flight);
    result.latency = compute_latencies(result.trace);
    result.max_queue = queue_occupancy(result.trace).max_total;
    if (result.bound.status == BoundStatus::Finite && result.bound.value != Rational(0))
        result.comparison = compare(result.latency.observed_worst, result.bound);
    return result;
}

ParsedConfig ParsedConfig::parse(const std::string& text) {
    ParsedConfig config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key=value at line " + std::to_string(lineno));
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        std::vector<std::string> items;
        std::istringstream vs(value);
        std::string item;
        while (std::getline(vs, item, ',')) items.push_back(item);
        if (items.empty()) throw ConfigError("empty value for key " + key);
        config.values[key] = std::move(items);
    }
    return config;
}

ParsedConfig ParsedConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void ParsedConfig::set(const std::string& key, const std::string& value) {
    values[key] = {value};
}

namespace {

long long parse_int(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": '" + s + "'");
    }
}

}  // namespace

std::vector<RunSpec> expand_grid(const ParsedConfig& config) {
    auto get = [&](const std::string& key,
                   std::vector<std::string> fallback) -> std::vector<std::string> {
        auto it = config.values.find(key);
        return it == config.values.end() ? fallback : it->second;
    };
    for (const auto& [key, v] : config.values) {
        static const std::vector<std::string> known = {"algorithm", "n",       "rho",
                                                       "lambda",    "b",       "J",
                                                       "horizon",   "adversary", "seed",
                                                       "channel",   "out"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key: " + key);
    }
    auto algorithms = get("algorithm", {});
    if (algorithms.empty()) throw ConfigError("config needs an algorithm");
    auto ns = get("n", {});
    if (ns.empty()) throw ConfigError("config needs n");
    auto rhos = get("rho", {"0"});
    auto lambdas = get("lambda", {"0"});
    auto bs = get("b", {"1"});
    auto js = get("J", {});
    auto horizons = get("horizon", {"0"});
    auto adversaries = get("adversary", {});
    if (adversaries.empty()) throw ConfigError("config needs an adversary");
    auto seeds = get("seed", {"0"});
    auto channels = get("channel", {"auto"});
    if (horizons.size() != 1 || channels.size() != 1)
        throw ConfigError("horizon and channel do not expand as grids");

    std::vector<RunSpec> specs;
    for (const auto& alg_s : algorithms)
        for (const auto& n_s : ns)
            for (const auto& rho_s : rhos)
                for (const auto& lam_s : lambdas)
                    for (const auto& b_s : bs)
                        for (const auto& j_s : js.empty() ? std::vector<std::string>{""} : js)
                            for (const auto& adv_s : adversaries)
                                for (const auto& seed_s : seeds) {
                                    RunSpec spec;
                                    auto id = parse_algorithm(alg_s);
                                    if (!id) throw ConfigError("unknown algorithm: " + alg_s);
                                    spec.algorithm = *id;
                                    spec.n = static_cast<int>(parse_int(n_s, "n"));
                                    try {
                                        spec.type.rho = parse_rational(rho_s);
                                        spec.type.lambda = parse_rational(lam_s);
                                    } catch (const std::exception& e) {
                                        throw ConfigError(e.what());
                                    }
                                    spec.type.b = parse_int(b_s, "b");
                                    if (is_jrrw_family(spec.algorithm)) {
                                        spec.J = j_s.empty()
                                                     ? static_cast<int>(
                                                           spec.type.jamming_burstiness())
                                                     : static_cast<int>(parse_int(j_s, "J"));
                                    }
                                    spec.horizon = parse_int(horizons[0], "horizon");
                                    const std::string& ch = channels[0];
                                    if (ch == "clear") {
                                        spec.jamming = false;
                                    } else if (ch == "jamming") {
                                        spec.jamming = true;
                                    } else if (ch == "auto") {
                                        spec.jamming = !forbids_jamming(spec.algorithm) &&
                                                       (spec.type.lambda != Rational(0) ||
                                                        is_jrrw_family(spec.algorithm) ||
                                                        is_adaptive(spec.algorithm));
                                    } else {
                                        throw ConfigError("channel must be auto|clear|jamming");
                                    }
                                    spec.adversary = AdversarySpec::parse(adv_s);
                                    if (spec.adversary.kind == AdversarySpec::Random)
                                        spec.adversary.seed = static_cast<std::uint64_t>(
                                            parse_int(seed_s, "seed"));
                                    specs.push_back(spec);
                                }
    return specs;
}

std::string summary_csv_header() {
    return "config_id,algorithm,n,rho,lambda,b,J,max_latency,max_queue,bound,ratio\n";
}

std::string summary_csv_row(const RunResult& result) {
    const RunSpec& spec = result.spec;
    std::string out = spec.config_id();
    out += ',';
    out += to_string(spec.algorithm);
    out += ',';
    out += std::to_string(spec.n);
    out += ',';
    out += format_rational(spec.type.rho);
    out += ',';
    out += format_rational(spec.type.lambda);
    out += ',';
    out += std::to_string(spec.type.b);
    out += ',';
    out += is_jrrw_family(spec.algorithm) ? std::to_string(spec.J) : std::string("-");
    out += ',';
    out += std::to_string(result.latency.observed_worst);
    out += ',';
    out += std::to_string(result.max_queue);
    out += ',';
    switch (result.bound.status) {
        case BoundStatus::Finite: out += format_rational(result.bound.value); break;
        case BoundStatus::Unbounded: out += "unbounded"; break;
        case BoundStatus::NotApplicable: out += "n/a"; break;
    }
    out += ',';
    out += result.comparison.applicable ? format_decimal(result.comparison.ratio)
                                        : std::string("-");
    out += '\n';
    return out;
}

std::string run_report(const RunResult& result) {
    const RunSpec& spec = result.spec;
    std::ostringstream out;
    out << "run " << spec.config_id() << "\n";
    out << "  algorithm " << to_string(spec.algorithm) << " on n=" << spec.n
        << (spec.jamming ? " (jamming channel)" : " (clear channel)");
    if (is_jrrw_family(spec.algorithm)) out << ", J=" << spec.J;
    out << "\n  adversary " << spec.adversary.name() << " of type (rho="
        << format_rational(spec.type.rho) << ", lambda=" << format_rational(spec.type.lambda)
        << ", b=" << spec.type.b << ")\n";
    out << "  horizon " << result.horizon << " rounds\n";
    out << "  packets injected " << result.latency.total << ", heard " << result.latency.heard
        << ", in flight " << result.in_flight.size() << "\n";
    out << "  max latency " << result.latency.max_latency;
    if (!result.in_flight.empty())
        out << " (pending age up to " << result.latency.max_pending_age << ")";
    out << ", mean " << format_decimal(result.latency.mean_latency, 3) << "\n";
    out << "  max queued " << result.max_queue << "\n";
    switch (result.bound.status) {
        case BoundStatus::Finite:
            out << "  latency bound " << format_rational(result.bound.value) << " ["
                << result.bound.provenance << "]\n";
            if (result.comparison.applicable)
                out << "  observed/bound ratio " << format_decimal(result.comparison.ratio)
                    << (result.comparison.sound ? " (sound)" : " (VIOLATION)") << "\n";
            break;
        case BoundStatus::Unbounded:
            out << "  latency bound unbounded: " << result.bound.reason << "\n";
            break;
        case BoundStatus::NotApplicable:
            out << "  latency bound not applicable: " << result.bound.reason << "\n";
            break;
    }
    if (spec.algorithm == AlgorithmId::Mbtf) {
        BoundResult qb = queue_bound_mbtf(spec.n, spec.type);
        if (qb.status == BoundStatus::Finite)
            out << "  queue bound " << format_rational(qb.value) << " [" << qb.provenance
                << "]\n";
    }
    return out.str();
}

}  // namespace macsim
