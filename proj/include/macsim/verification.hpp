#pragma once

#include "macsim/experiment.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace macsim {

struct VerifyOptions {
    int random_adversaries = 50;   // seeded random adversaries per grid point
    int equivalence_scripts = 100; // seeds for the jrrw(0)=rrw trace equality
    bool include_trends = true;    // tightness trend measurements
    bool determinism = true;       // rerun every grid point and byte-compare
    std::vector<int> grid_n = {2, 4, 8, 16};
    std::vector<long long> grid_b = {1, 2, 5};
    std::ostream* progress = nullptr;
};

struct CriterionResult {
    std::string name;
    bool pass = true;
    std::string details;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;
    long long grid_runs = 0;

    bool all_pass() const;
    std::string summary() const;  // one line per criterion
};

VerifyReport run_verification(const VerifyOptions& options = {});

// Exposed for focused tests.
bool stream_budget_equivalence(const Rational& rate, long long b, int horizon,
                               std::string* failure);

}  // namespace macsim
