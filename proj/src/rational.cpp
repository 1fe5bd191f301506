#include "macsim/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace macsim {

namespace {

long long parse_ll(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty number in rational");
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number in rational: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument("bad number in rational: '" + s + "'");
    return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_ll(text));
    long long num = parse_ll(text.substr(0, slash));
    long long den = parse_ll(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("rational denominator must be positive: '" + text + "'");
    return Rational(num, den);
}

std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_decimal(const Rational& r, int digits) {
    long long num = r.numerator();
    long long den = r.denominator();
    bool neg = num < 0;
    unsigned long long n = neg ? static_cast<unsigned long long>(-(num + 1)) + 1ULL
                               : static_cast<unsigned long long>(num);
    unsigned long long d = static_cast<unsigned long long>(den);
    unsigned long long whole = n / d;
    unsigned long long rem = n % d;
    std::string frac;
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        frac.push_back(static_cast<char>('0' + rem / d));
        rem %= d;
    }
    if (2 * rem >= d) {  // round half away from zero
        int i = static_cast<int>(frac.size()) - 1;
        for (; i >= 0; --i) {
            if (frac[i] != '9') {
                ++frac[i];
                break;
            }
            frac[i] = '0';
        }
        if (i < 0) ++whole;
    }
    std::string out = (neg ? "-" : "") + std::to_string(whole);
    if (digits > 0) out += "." + frac;
    return out;
}

}  // namespace macsim
