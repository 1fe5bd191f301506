#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace macsim {

// Exact rational arithmetic for adversary budgets and bound formulas.
// Budget legality at the boundary (e.g. whether rho*t + b is integral)
// must be decided exactly; floating point never enters these code paths.
using Rational = boost::rational<long long>;

inline long long floor_rat(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

inline long long ceil_rat(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

// Parses "p/q" or a plain integer "p". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

// Renders "p/q", or just "p" when q == 1.
std::string format_rational(const Rational& r);

// Fixed-point decimal rendering (for report columns); exact integer
// arithmetic, round half away from zero, deterministic across platforms.
std::string format_decimal(const Rational& r, int digits = 6);

}  // namespace macsim
