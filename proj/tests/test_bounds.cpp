#include "macsim/bounds.hpp"

#include <doctest.h>

#include <algorithm>

using namespace macsim;

namespace {

AdversaryType type_of(const char* rho, const char* lambda, long long b) {
    return AdversaryType{parse_rational(rho), parse_rational(lambda), b};
}

}  // namespace

TEST_CASE("lg is the ceiling log") {
    CHECK(lg2_ceil(1) == 0);
    CHECK(lg2_ceil(2) == 1);
    CHECK(lg2_ceil(3) == 2);
    CHECK(lg2_ceil(4) == 2);
    CHECK(lg2_ceil(5) == 3);
    CHECK(lg2_ceil(16) == 4);
    CHECK(lg2_ceil(17) == 5);
}

TEST_CASE("pinned bound values") {
    // ofc-rrw, n=8, b=2, rho=lambda=1/4: 4*(8+2)/(1/2) = 80
    BoundResult r = latency_bound(AlgorithmId::OfcRrw, 8, type_of("1/4", "1/4", 2), std::nullopt);
    CHECK(r.status == BoundStatus::Finite);
    CHECK(r.value == Rational(80));

    // of-srr, n=16, b=3, rho=1/16 <= 1/(2 lg 16): 4*min(3*4, 16+3) = 48
    r = latency_bound(AlgorithmId::OfSrr, 16, type_of("1/16", "0", 3), std::nullopt);
    CHECK(r.value == Rational(48));

    // srr small vs large rate branch
    r = latency_bound(AlgorithmId::Srr, 16, type_of("1/8", "0", 2), std::nullopt);
    CHECK(r.value == Rational(6 * 2 * 4));
    r = latency_bound(AlgorithmId::Srr, 16, type_of("1/2", "0", 2), std::nullopt);
    CHECK(r.value == Rational(4 * 18 * 4));  // 4(n+b)/(1-rho)^2

    // of-jrrw J-form: 2(n(J+1)+2b)/(1-rho-lambda)
    r = latency_bound(AlgorithmId::OfJrrw, 4, type_of("1/4", "1/4", 2), 2);
    CHECK(r.value == Rational(2 * (4 * 3 + 4), 1) / Rational(1, 2));
    REQUIRE(r.alt_value.has_value());
    // J-free: 4(bn+(n+b)(1-lambda))/((1-lambda)(1-rho-lambda))
    CHECK(*r.alt_value == Rational(4) * (Rational(8) + Rational(6) * Rational(3, 4)) /
                              (Rational(3, 4) * Rational(1, 2)));

    // jrrw is the of-jrrw bound divided by the stability gap
    BoundResult rj = latency_bound(AlgorithmId::Jrrw, 4, type_of("1/4", "1/4", 2), 2);
    CHECK(rj.value == r.value / Rational(1, 2));

    // mbtf: 3n(n+b)/((1-lambda)(1-rho-lambda)) + 6bn/(1-lambda)
    r = latency_bound(AlgorithmId::Mbtf, 8, type_of("1/2", "1/4", 1), std::nullopt);
    CHECK(r.value == Rational(3 * 8 * 9) / (Rational(3, 4) * Rational(1, 4)) +
                         Rational(6 * 8) / Rational(3, 4));
}

TEST_CASE("unbounded and inapplicable cases") {
    BoundResult r = latency_bound(AlgorithmId::Crrw, 4, type_of("1/2", "1/2", 1), std::nullopt);
    CHECK(r.status == BoundStatus::Unbounded);

    r = latency_bound(AlgorithmId::Srr, 4, type_of("1/4", "1/4", 1), std::nullopt);
    CHECK(r.status == BoundStatus::NotApplicable);  // jamming on a clear-channel algorithm

    r = latency_bound(AlgorithmId::Jrrw, 4, type_of("1/4", "1/2", 4), 2);
    CHECK(r.status == BoundStatus::NotApplicable);  // burstiness 8 exceeds J

    CHECK_THROWS_AS(latency_bound(AlgorithmId::Jrrw, 4, type_of("1/4", "0", 1), std::nullopt),
                    std::invalid_argument);
}

TEST_CASE("mbtf queue bound: rho zero leaves only the additive term") {
    BoundResult r = queue_bound_mbtf(8, type_of("0", "1/4", 2));
    CHECK(r.status == BoundStatus::Finite);
    CHECK(r.value == Rational(6 * 2 * 8));
}

TEST_CASE("mbtf queue bound is monotone in the rates") {
    auto value = [&](const char* rho, const char* lambda) {
        return queue_bound_mbtf(8, type_of(rho, lambda, 2)).value;
    };
    CHECK(value("1/4", "0") < value("1/2", "0"));
    CHECK(value("1/4", "0") < value("1/4", "1/4"));
    CHECK(value("1/2", "1/4") < value("1/2", "3/8"));
}

TEST_CASE("comparison rows") {
    BoundResult bound = latency_bound(AlgorithmId::OfcRrw, 8, type_of("1/4", "1/4", 2),
                                      std::nullopt);  // 80
    ComparisonRow row = compare(60, bound);
    CHECK(row.applicable);
    CHECK(row.sound);
    CHECK(row.ratio == Rational(3, 4));
    row = compare(81, bound);
    CHECK_FALSE(row.sound);
    row = compare(0, bound);
    CHECK(row.ratio == Rational(0));

    BoundResult zero = bound;
    zero.value = Rational(0);
    CHECK_THROWS_AS(compare(1, zero), std::domain_error);

    BoundResult unbounded = latency_bound(AlgorithmId::OfcRrw, 8, type_of("1/2", "1/2", 2),
                                          std::nullopt);
    CHECK_FALSE(compare(100, unbounded).applicable);
}

TEST_CASE("bound table lists every algorithm once per channel") {
    std::string csv = bound_table_csv(8, type_of("1/4", "1/4", 2), 2);
    CHECK(csv.find("jamming,of-jrrw") != std::string::npos);
    CHECK(csv.find("jamming,mbtf") != std::string::npos);
    CHECK(csv.find("clear,srr") != std::string::npos);
    CHECK(csv.find("clear,mbtf") != std::string::npos);
    // One header plus ten rows.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}
