#include "macsim/verification.hpp"

#include "macsim/replay.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace macsim {

bool VerifyReport::all_pass() const {
    for (const auto& c : criteria)
        if (!c.pass) return false;
    return true;
}

std::string VerifyReport::summary() const {
    std::string out;
    for (const auto& c : criteria) {
        out += c.pass ? "PASS " : "FAIL ";
        out += c.name;
        if (!c.details.empty()) out += ": " + c.details;
        out += '\n';
    }
    return out;
}

namespace {

struct RatePair {
    const char* rho;
    const char* lambda;
};

constexpr RatePair kRatePairs[] = {{"1/4", "0"},   {"1/2", "0"},   {"3/4", "0"},
                                   {"1/4", "1/4"}, {"1/2", "1/4"}, {"1/4", "1/2"}};

constexpr AlgorithmId kAllAlgorithms[] = {
    AlgorithmId::Rrw,  AlgorithmId::OfRrw, AlgorithmId::Srr,  AlgorithmId::OfSrr,
    AlgorithmId::Mbtf, AlgorithmId::Jrrw,  AlgorithmId::OfJrrw, AlgorithmId::Crrw,
    AlgorithmId::OfcRrw};

struct Tally {
    long long checked = 0;
    long long failures = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        ++failures;
        if (first_failure.empty()) first_failure = what;
    }
    std::string detail(const std::string& unit) const {
        std::string out = std::to_string(checked) + " " + unit;
        if (failures > 0)
            out += ", " + std::to_string(failures) + " failures, first: " + first_failure;
        return out;
    }
};

std::string lemma_id_for(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::OfJrrw: return "jrrw-window";
        case AlgorithmId::OfcRrw: return "control-window";
        case AlgorithmId::Srr:
        case AlgorithmId::OfSrr: return "search-phase";
        default: return "";
    }
}

// Grid points from the acceptance matrix: every algorithm on its valid
// channel, mbtf additionally on the clear channel at lambda = 0.
std::vector<RunSpec> grid_points(const VerifyOptions& options) {
    std::vector<RunSpec> points;
    for (AlgorithmId id : kAllAlgorithms) {
        for (int clear_pass = 0; clear_pass < 2; ++clear_pass) {
            bool jamming;
            if (forbids_jamming(id)) {
                if (clear_pass == 1) continue;
                jamming = false;
            } else if (id == AlgorithmId::Mbtf) {
                jamming = clear_pass == 0;
            } else {
                if (clear_pass == 1) continue;
                jamming = true;
            }
            for (int n : options.grid_n)
                for (long long b : options.grid_b)
                    for (const auto& pair : kRatePairs) {
                        RunSpec spec;
                        spec.algorithm = id;
                        spec.n = n;
                        spec.type.rho = parse_rational(pair.rho);
                        spec.type.lambda = parse_rational(pair.lambda);
                        spec.type.b = b;
                        if (!spec.type.stable()) continue;
                        if (!jamming && spec.type.lambda != Rational(0)) continue;
                        spec.jamming = jamming;
                        if (is_jrrw_family(id))
                            spec.J = static_cast<int>(spec.type.jamming_burstiness());
                        points.push_back(spec);
                    }
        }
    }
    return points;
}

std::vector<AdversarySpec> adversaries_for(const RunSpec& point, int random_count) {
    std::vector<AdversarySpec> advs;
    AdversarySpec greedy;
    greedy.kind = AdversarySpec::Greedy;
    greedy.targeting = Targeting::single(0);
    advs.push_back(greedy);
    greedy.targeting = Targeting::round_robin();
    advs.push_back(greedy);
    greedy.targeting = Targeting::behind_token();
    advs.push_back(greedy);
    if (is_jrrw_family(point.algorithm) && point.n >= 4) {
        AdversarySpec t;
        t.kind = AdversarySpec::JrrwTightness;
        advs.push_back(t);
    }
    if (point.algorithm == AlgorithmId::Mbtf && point.n >= 3) {
        AdversarySpec t;
        t.kind = AdversarySpec::MbtfTightness;
        advs.push_back(t);
    }
    for (int s = 1; s <= random_count; ++s) {
        AdversarySpec r;
        r.kind = AdversarySpec::Random;
        r.seed = static_cast<std::uint64_t>(s);
        advs.push_back(r);
    }
    return advs;
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
    double sx = 0, sy = 0;
    for (auto [x, y] : points) {
        sx += std::log(x);
        sy += std::log(y);
    }
    double mx = sx / static_cast<double>(points.size());
    double my = sy / static_cast<double>(points.size());
    double num = 0, den = 0;
    for (auto [x, y] : points) {
        num += (std::log(x) - mx) * (std::log(y) - my);
        den += (std::log(x) - mx) * (std::log(x) - mx);
    }
    return num / den;
}

// --- criterion: budget tracker equals the windowed validator ----------

// One consumption stream (counts per round). The windowed verdict of a
// prefix is recomputed over all windows; the tracker verdict comes from
// the online level. Every prefixes' verdicts must agree; illegal
// prefixes are not extended (both verdicts are monotone in extensions).
struct StreamEnumerator {
    Rational rate;
    long long b;
    long long cap;  // counts 0..cap; cap = b + 2 exceeds every possible level
    int horizon;
    std::vector<long long> counts;
    std::string* failure;

    bool windowed_ok_at_end() const {
        // windows ending at the last round; earlier windows already held
        long long sum = 0;
        long long r = static_cast<long long>(counts.size()) - 1;
        for (long long s = r; s >= 0; --s) {
            sum += counts[static_cast<std::size_t>(s)];
            Rational budget = rate * Rational(r - s + 1) + Rational(b);
            if (Rational(sum) > budget) return false;
        }
        return true;
    }

    bool run() {
        TokenBucket bucket(rate, b);
        return descend(bucket);
    }

    bool descend(const TokenBucket& bucket) {
        if (static_cast<int>(counts.size()) == horizon) return true;
        for (long long c = 0; c <= cap; ++c) {
            TokenBucket next = bucket;
            bool tracker_ok = c == 0 || next.try_consume(c);
            counts.push_back(c);
            bool windowed_ok = windowed_ok_at_end();
            if (tracker_ok != windowed_ok) {
                if (failure) {
                    std::ostringstream os;
                    os << "rate " << format_rational(rate) << " b " << b << " counts";
                    for (long long v : counts) os << ' ' << v;
                    os << ": tracker " << (tracker_ok ? "accepts" : "rejects") << ", windowed "
                       << (windowed_ok ? "accepts" : "rejects");
                    *failure = os.str();
                }
                counts.pop_back();
                return false;
            }
            if (tracker_ok) {
                next.next_round();
                if (!descend(next)) {
                    counts.pop_back();
                    return false;
                }
            }
            counts.pop_back();
        }
        return true;
    }
};

}  // namespace

bool stream_budget_equivalence(const Rational& rate, long long b, int horizon,
                               std::string* failure) {
    StreamEnumerator e{rate, b, b + 2, horizon, {}, failure};
    return e.run();
}

namespace {

CriterionResult criterion_budget_equivalence() {
    CriterionResult c;
    c.name = "budget-tracker-equivalence";
    const char* rates[] = {"0", "1/2", "1"};
    long long checked = 0;
    for (const char* rate_s : rates)
        for (long long b : {0LL, 1LL, 2LL}) {
            std::string failure;
            if (!stream_budget_equivalence(parse_rational(rate_s), b, 10, &failure)) {
                c.pass = false;
                c.details = failure;
                return c;
            }
            ++checked;
        }
    // Joint sanity: the two budgets are enforced independently; random
    // joint scripts must agree between validate_script and a dual-bucket
    // replay.
    std::mt19937_64 rng(12345);
    long long joint = 0;
    for (int trial = 0; trial < 500; ++trial) {
        AdversaryType type;
        type.rho = Rational(static_cast<long long>(rng() % 5), 4);   // 0..1
        type.lambda = Rational(static_cast<long long>(rng() % 4), 4);  // 0..3/4
        type.b = static_cast<long long>(rng() % 3);
        const Round horizon = 12;
        AdversaryScript script;
        for (Round r = 0; r < horizon; ++r) {
            long long k = static_cast<long long>(rng() % 3);
            for (long long i = 0; i < k; ++i) script.injections[r].push_back(0);
            if (rng() % 2 == 0) script.jams.insert(r);
        }
        bool windowed = validate_script(script, type, horizon).ok;
        TokenBucket inj(type.rho, type.b), jam(type.lambda, type.b);
        bool tracked = true;
        for (Round r = 0; r < horizon; ++r) {
            auto it = script.injections.find(r);
            long long k = it == script.injections.end()
                              ? 0
                              : static_cast<long long>(it->second.size());
            if (k > 0 && !inj.try_consume(k)) tracked = false;
            if (script.jams.count(r) && !jam.try_consume(1)) tracked = false;
            inj.next_round();
            jam.next_round();
        }
        if (windowed != tracked) {
            c.pass = false;
            c.details = "joint script verdict mismatch (trial " + std::to_string(trial) + ")";
            return c;
        }
        ++joint;
    }
    c.details = std::to_string(checked) + " stream type combos exhaustive to horizon 10, " +
                std::to_string(joint) + " joint scripts";
    return c;
}

CriterionResult criterion_reference_traces() {
    CriterionResult c;
    c.name = "reference-traces";
    c.details = "checked in the acceptance binary against tests/oracles.hpp";
    return c;
}

struct MutantCase {
    const char* name;
    AlgorithmId algorithm;
    int n;
    int J;
    bool jamming;
    AdversaryType type;
    AdversaryScript script;
    Round horizon;
    FaultInjection faults;
    std::string lemma;
};

std::vector<MutantCase> mutant_cases() {
    std::vector<MutantCase> cases;
    {
        // Sustained jam bursts timed to the faulty machine's early token
        // moves strand the old packet at station 1 forever.
        MutantCase m;
        m.name = "jrrw-threshold";
        m.algorithm = AlgorithmId::OfJrrw;
        m.n = 4;
        m.J = 4;
        m.jamming = true;
        m.type = AdversaryType{parse_rational("0"), parse_rational("1/4"), 3};
        m.script.injections[0] = {1};
        for (Round k = 0; k < 4; ++k)
            for (Round j = 0; j < 4; ++j) m.script.jams.insert(20 + 16 * k + j);
        m.horizon = 80;
        m.faults.jrrw_threshold_minus_one = true;
        m.lemma = "jrrw-window";
        cases.push_back(std::move(m));
    }
    {
        // Two packets at the last station; a machine needing two heard
        // control rounds per token move serves them a full cycle late.
        MutantCase m;
        m.name = "crrw-double-control";
        m.algorithm = AlgorithmId::OfcRrw;
        m.n = 8;
        m.J = -1;
        m.jamming = true;
        m.type = AdversaryType{parse_rational("0"), parse_rational("0"), 2};
        m.script.injections[0] = {7, 7};
        m.horizon = 40;
        m.faults.crrw_move_every_other_control = true;
        m.lemma = "control-window";
        cases.push_back(std::move(m));
    }
    {
        // A singleton sweep spends n silent rounds where the splitting
        // search spends one.
        MutantCase m;
        m.name = "srr-linear-scan";
        m.algorithm = AlgorithmId::Srr;
        m.n = 16;
        m.J = -1;
        m.jamming = false;
        m.type = AdversaryType{parse_rational("0"), parse_rational("0"), 1};
        m.script.injections[0] = {15};
        m.horizon = 40;
        m.faults.srr_linear_scan = true;
        m.lemma = "search-phase";
        cases.push_back(std::move(m));
    }
    return cases;
}

void run_mutants(Tally& lemmas, Tally& mutants) {
    for (const auto& m : mutant_cases()) {
        ChannelConfig config{m.n, m.jamming, requires_collision_detection(m.algorithm)};
        {
            auto adv = make_scripted_adversary(m.script, m.type);
            SimulationResult sim = run_simulation(config, m.algorithm, m.J, *adv, m.horizon);
            CheckOutcome real = lemma_check(sim.trace, m.lemma, m.type);
            ++lemmas.checked;
            if (!real.pass || !real.applicable)
                lemmas.fail(std::string(m.name) + " baseline: " + real.details);
        }
        {
            auto adv = make_scripted_adversary(m.script, m.type);
            SimulationResult sim =
                run_simulation(config, m.algorithm, m.J, *adv, m.horizon, m.faults);
            CheckOutcome mutated = lemma_check(sim.trace, m.lemma, m.type);
            ++mutants.checked;
            if (mutated.pass)
                mutants.fail(std::string(m.name) + ": mutant passed the check");
        }
    }
}

CriterionResult criterion_trends(const VerifyOptions& options) {
    CriterionResult c;
    c.name = "tightness-trends";
    if (!options.include_trends) {
        c.details = "skipped by options";
        return c;
    }
    std::ostringstream detail;

    std::vector<std::pair<double, double>> mbtf_points;
    for (int n : {4, 8, 16, 32}) {
        RunSpec spec;
        spec.algorithm = AlgorithmId::Mbtf;
        spec.n = n;
        spec.type = AdversaryType{parse_rational("3/4"), parse_rational("0"), 1};
        spec.jamming = false;
        spec.adversary.kind = AdversarySpec::MbtfTightness;
        RunResult r = execute_run(spec);
        mbtf_points.emplace_back(static_cast<double>(n),
                                 static_cast<double>(r.latency.observed_worst));
    }
    double slope = loglog_slope(mbtf_points);
    detail << "mbtf log-log slope " << slope;
    if (slope < 1.7) {
        c.pass = false;
        c.details = detail.str() + " < 1.7";
        return c;
    }

    // Fixed n = 8, lambda = 1/4; the stability gap halves per step.
    std::vector<long long> jrrw_lat;
    for (const char* rho : {"1/4", "1/2", "5/8"}) {
        RunSpec spec;
        spec.algorithm = AlgorithmId::Jrrw;
        spec.n = 8;
        spec.type = AdversaryType{parse_rational(rho), parse_rational("1/4"), 2};
        spec.J = static_cast<int>(spec.type.jamming_burstiness());
        spec.jamming = true;
        spec.adversary.kind = AdversarySpec::JrrwTightness;
        RunResult r = execute_run(spec);
        jrrw_lat.push_back(r.latency.observed_worst);
    }
    detail << "; jrrw latencies " << jrrw_lat[0] << " " << jrrw_lat[1] << " " << jrrw_lat[2];
    if (jrrw_lat[1] < 2 * jrrw_lat[0] || jrrw_lat[2] < 2 * jrrw_lat[1]) {
        c.pass = false;
        c.details = detail.str() + " (ratios below 2x per gap halving)";
        return c;
    }
    c.details = detail.str();
    return c;
}

CriterionResult criterion_equivalences(const VerifyOptions& options, Tally& phase_tally) {
    CriterionResult c;
    c.name = "equivalences-and-phases";
    long long pairs = 0;
    for (auto [faulty, reference] :
         {std::pair{AlgorithmId::Jrrw, AlgorithmId::Rrw},
          std::pair{AlgorithmId::OfJrrw, AlgorithmId::OfRrw}}) {
        for (int seed = 1; seed <= options.equivalence_scripts; ++seed) {
            ChannelConfig config{4, false, false};
            AdversaryType type{parse_rational("1/2"), parse_rational("0"), 2};
            auto adv_a = make_random_adversary(type, config, static_cast<std::uint64_t>(seed));
            auto adv_b = make_random_adversary(type, config, static_cast<std::uint64_t>(seed));
            SimulationResult a = run_simulation(config, faulty, 0, *adv_a, 200);
            SimulationResult b = run_simulation(config, reference, -1, *adv_b, 200);
            if (canonical_trace(a.trace) != canonical_trace(b.trace)) {
                c.pass = false;
                c.details = to_string(faulty) + "(0) and " + to_string(reference) +
                            " diverge on seed " + std::to_string(seed);
                return c;
            }
            ++pairs;
        }
    }
    c.details = std::to_string(pairs) + " trace equalities, " + phase_tally.detail("phase steps");
    if (phase_tally.failures > 0) c.pass = false;
    return c;
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    VerifyReport report;

    Tally soundness, invariants, lemmas, mutants, queue_bound, phase_prop, determinism;

    std::vector<RunSpec> points = grid_points(options);
    long long run_count = 0;
    for (const RunSpec& point : points) {
        for (const AdversarySpec& adv : adversaries_for(point, options.random_adversaries)) {
            RunSpec spec = point;
            spec.adversary = adv;
            RunResult result = execute_run(spec);
            ++run_count;
            if (options.progress && run_count % 250 == 0) (*options.progress) << '.' << std::flush;

            // bound soundness (ratio <= 1, exact comparison, no tolerance)
            ++soundness.checked;
            if (result.bound.status != BoundStatus::Finite)
                soundness.fail(spec.config_id() + ": no finite bound on a grid point");
            else if (!result.comparison.sound)
                soundness.fail(spec.config_id() + ": observed " +
                               std::to_string(result.latency.observed_worst) + " > bound " +
                               format_rational(result.bound.value));

            // structural trace invariants
            ++invariants.checked;
            CheckOutcome v = validate_trace(result.trace);
            if (v.pass) v = check_conservation(result.trace);
            if (v.pass) v = check_shared_state_coherence(result.trace);
            if (!v.pass)
                invariants.fail(spec.config_id() + " round " + std::to_string(v.round) + ": " +
                                v.details);

            // lemma-level trace checks
            std::string lemma = lemma_id_for(spec.algorithm);
            if (!lemma.empty()) {
                ++lemmas.checked;
                CheckOutcome out = lemma_check(result.trace, lemma, spec.type);
                if (!out.pass)
                    lemmas.fail(spec.config_id() + " " + lemma + " round " +
                                std::to_string(out.round) + ": " + out.details);
            }

            // mbtf queue bound
            if (spec.algorithm == AlgorithmId::Mbtf) {
                ++queue_bound.checked;
                BoundResult qb = queue_bound_mbtf(spec.n, spec.type);
                if (qb.status != BoundStatus::Finite ||
                    Rational(result.max_queue) > qb.value)
                    queue_bound.fail(spec.config_id() + ": max queue " +
                                     std::to_string(result.max_queue) + " > bound " +
                                     format_rational(qb.value));
            }

            // per-phase injection recurrence on full phases
            if (is_phase_algorithm(spec.algorithm)) {
                PhaseDecomposition phases = phase_stats(result.trace);
                for (std::size_t i = 0; i + 1 < phases.full.size(); ++i) {
                    ++phase_prop.checked;
                    const auto& cur = phases.full[i];
                    const auto& next = phases.full[i + 1];
                    if (Rational(next.packets_at_start) >
                        spec.type.rho * Rational(cur.length) + Rational(spec.type.b)) {
                        phase_prop.fail(spec.config_id() + " phase " +
                                        std::to_string(next.index));
                        break;
                    }
                }
            }

            // determinism: rerun and byte-compare the emitted artifacts
            if (options.determinism) {
                ++determinism.checked;
                RunResult again = execute_run(spec);
                if (canonical_trace(result.trace) != canonical_trace(again.trace) ||
                    metrics_csv(result.latency) != metrics_csv(again.latency))
                    determinism.fail(spec.config_id() + ": rerun differs");
            }
        }
    }
    report.grid_runs = run_count;
    if (options.progress) (*options.progress) << '\n';

    run_mutants(lemmas, mutants);

    {
        CriterionResult c;
        c.name = "bound-soundness-grid";
        c.pass = soundness.failures == 0 && invariants.failures == 0;
        c.details = soundness.detail("runs");
        if (invariants.failures > 0) c.details += "; invariants: " + invariants.first_failure;
        report.criteria.push_back(std::move(c));
    }
    {
        CriterionResult c;
        c.name = "trace-checks-and-mutants";
        c.pass = lemmas.failures == 0 && mutants.failures == 0;
        c.details = lemmas.detail("traces") + "; " +
                    std::to_string(mutants.checked) + " mutants" +
                    (mutants.failures ? " (" + mutants.first_failure + ")" : " all caught");
        report.criteria.push_back(std::move(c));
    }
    report.criteria.push_back(criterion_reference_traces());
    {
        CriterionResult c;
        c.name = "mbtf-queue-bound";
        c.pass = queue_bound.failures == 0;
        c.details = queue_bound.detail("mbtf runs");
        report.criteria.push_back(std::move(c));
    }
    report.criteria.push_back(criterion_trends(options));
    report.criteria.push_back(criterion_budget_equivalence());
    report.criteria.push_back(criterion_equivalences(options, phase_prop));
    {
        CriterionResult c;
        c.name = "determinism";
        c.pass = determinism.failures == 0;
        c.details = options.determinism ? determinism.detail("reruns") : "skipped by options";
        report.criteria.push_back(std::move(c));
    }
    return report;
}

}  // namespace macsim
