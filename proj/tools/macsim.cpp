// Command-line front end: single runs, experiment grids, bound tables
// and the verification suite.

#include "macsim/bounds.hpp"
#include "macsim/experiment.hpp"
#include "macsim/verification.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitSoundnessFailure = 2;
constexpr int kExitBudgetViolation = 3;

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw macsim::ConfigError("cannot write " + path.string());
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace macsim;

    CLI::App app{"simulator of deterministic broadcast algorithms on adversarial"
                 " multiple access channels"};
    std::string config_path, algorithm, rho, lambda, adversary, out_dir, channel;
    long long n = -1, b = -1, J = -1, horizon = -1, seed = -1;
    bool verify = false, bound_table = false, quiet = false;

    app.add_option("--config", config_path, "configuration file (key=value lines)");
    app.add_option("--algorithm", algorithm,
                   "rrw|of-rrw|srr|of-srr|mbtf|jrrw|of-jrrw|c-rrw|ofc-rrw");
    app.add_option("--n", n, "number of stations");
    app.add_option("--rho", rho, "injection rate as p/q");
    app.add_option("--lambda", lambda, "jamming rate as p/q");
    app.add_option("--b", b, "burstiness");
    app.add_option("--J", J, "void-run length parameter for the jrrw family");
    app.add_option("--horizon", horizon, "rounds to simulate (0 = 4x the latency bound)");
    app.add_option("--adversary", adversary,
                   "greedy:single:K|greedy:round-robin|greedy:behind-token|random|"
                   "jrrw-tightness|mbtf-tightness|script:PATH");
    app.add_option("--seed", seed, "seed for the random adversary");
    app.add_option("--out", out_dir, "output directory (trace.csv, metrics.csv, summary.csv, report.txt)");
    app.add_option("--channel", channel, "auto|clear|jamming");
    app.add_flag("--verify", verify, "run the verification suite and exit");
    app.add_flag("--bound-table", bound_table, "emit the consolidated bound table as CSV");
    app.add_flag("--quiet", quiet, "suppress the report on stdout");
    CLI11_PARSE(app, argc, argv);

    try {
        if (verify) {
            VerifyOptions options;
            options.progress = quiet ? nullptr : &std::cerr;
            VerifyReport report = run_verification(options);
            std::cout << report.summary();
            std::cout << (report.all_pass() ? "verification passed" : "verification FAILED")
                      << " (" << report.grid_runs << " grid runs)\n";
            return report.all_pass() ? kExitOk : kExitSoundnessFailure;
        }

        ParsedConfig config;
        if (!config_path.empty()) config = ParsedConfig::load(config_path);
        if (!algorithm.empty()) config.set("algorithm", algorithm);
        if (n >= 0) config.set("n", std::to_string(n));
        if (!rho.empty()) config.set("rho", rho);
        if (!lambda.empty()) config.set("lambda", lambda);
        if (b >= 0) config.set("b", std::to_string(b));
        if (J >= 0) config.set("J", std::to_string(J));
        if (horizon >= 0) config.set("horizon", std::to_string(horizon));
        if (!adversary.empty()) config.set("adversary", adversary);
        if (seed >= 0) config.set("seed", std::to_string(seed));
        if (!channel.empty()) config.set("channel", channel);
        if (!out_dir.empty()) config.set("out", out_dir);

        if (bound_table) {
            if (config.values.count("n") == 0)
                throw ConfigError("--bound-table needs --n, --rho, --lambda, --b");
            AdversaryType type;
            type.rho = parse_rational(config.values.at("rho").at(0));
            type.lambda = parse_rational(config.values.at("lambda").at(0));
            type.b = std::stoll(config.values.at("b").at(0));
            std::optional<int> j;
            if (config.values.count("J")) j = std::stoi(config.values.at("J").at(0));
            std::cout << bound_table_csv(std::stoi(config.values.at("n").at(0)), type, j);
            return kExitOk;
        }

        std::vector<RunSpec> specs = expand_grid(config);
        std::string summary = summary_csv_header();
        std::string reports;
        bool sound = true;
        std::string first_trace, first_metrics;
        for (std::size_t i = 0; i < specs.size(); ++i) {
            RunResult result = execute_run(specs[i]);
            summary += summary_csv_row(result);
            reports += run_report(result);
            reports += '\n';
            if (result.comparison.applicable && !result.comparison.sound) sound = false;
            if (i == 0) {
                first_trace = canonical_trace(result.trace);
                first_metrics = metrics_csv(result.latency);
            }
        }

        std::string out_value;
        if (auto it = config.values.find("out"); it != config.values.end())
            out_value = it->second.at(0);
        if (!out_value.empty()) {
            std::filesystem::path dir(out_value);
            std::filesystem::create_directories(dir);
            write_file(dir / "summary.csv", summary);
            write_file(dir / "report.txt", reports);
            if (specs.size() == 1) {
                write_file(dir / "trace.csv", first_trace);
                write_file(dir / "metrics.csv", first_metrics);
            }
        }
        if (!quiet) std::cout << reports << summary;
        return sound ? kExitOk : kExitSoundnessFailure;
    } catch (const BudgetViolation& e) {
        std::cerr << "budget violation: " << e.what() << "\n";
        return kExitBudgetViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
