#pragma once

#include "macsim/adversary.hpp"
#include "macsim/algorithm_id.hpp"
#include "macsim/rational.hpp"

#include <optional>
#include <string>

namespace macsim {

enum class BoundStatus { Finite, Unbounded, NotApplicable };

struct BoundResult {
    std::string algorithm;
    std::string kind;  // "latency" | "queue"
    BoundStatus status = BoundStatus::Finite;
    Rational value{0};
    std::optional<Rational> alt_value;  // J-free companion for the jrrw family
    std::string provenance;             // formula with pinned constants
    std::string reason;                 // when not finite
};

// Worst-case packet latency bound with exact constants. Returns
// Unbounded when rho + lambda >= 1, NotApplicable when the algorithm's
// channel or parameter preconditions fail (reason says why). Throws
// std::invalid_argument when J is missing for the jrrw family.
BoundResult latency_bound(AlgorithmId id, int n, const AdversaryType& type, std::optional<int> J);

// Bound on the total number of queued packets under mbtf:
// 2 rho n (n+b) / ((1-lambda)(1-rho-lambda)) + K'bn with K' = 6.
BoundResult queue_bound_mbtf(int n, const AdversaryType& type);

struct ComparisonRow {
    bool applicable = false;
    Rational ratio{0};  // observed / bound
    bool sound = false;  // ratio <= 1
};

// Throws std::domain_error on a zero bound value.
ComparisonRow compare(long long observed, const BoundResult& bound);

long long lg2_ceil(int n);  // ceil(log2 n); lg 1 = 0

// Consolidated bound table: one row per algorithm, jamming-channel rows
// with the given type, clear-channel rows at lambda = 0.
std::string bound_table_csv(int n, const AdversaryType& type, std::optional<int> J);

}  // namespace macsim
