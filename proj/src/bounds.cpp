#include "macsim/bounds.hpp"

#include <stdexcept>

namespace macsim {

long long lg2_ceil(int n) {
    long long lg = 0;
    while ((1LL << lg) < n) ++lg;
    return lg;
}

namespace {

constexpr long long kMbtfAdditiveConstant = 6;  // derived lower-order term coefficient

BoundResult base(AlgorithmId id, const char* kind) {
    BoundResult r;
    r.algorithm = to_string(id);
    r.kind = kind;
    return r;
}

BoundResult unbounded(BoundResult r, std::string reason) {
    r.status = BoundStatus::Unbounded;
    r.reason = std::move(reason);
    return r;
}

BoundResult not_applicable(BoundResult r, std::string reason) {
    r.status = BoundStatus::NotApplicable;
    r.reason = std::move(reason);
    return r;
}

}  // namespace

BoundResult latency_bound(AlgorithmId id, int n, const AdversaryType& type, std::optional<int> J) {
    type.validate();
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (is_jrrw_family(id) && !J) throw std::invalid_argument("jrrw family bound requires J");

    BoundResult r = base(id, "latency");
    const Rational one{1};
    const Rational rho = type.rho;
    const Rational lambda = type.lambda;
    const Rational b{type.b};
    const Rational nn{n};

    if (forbids_jamming(id) && lambda != Rational(0))
        return not_applicable(std::move(r), "algorithm runs on channels without jamming");
    if (rho + lambda >= one)
        return unbounded(std::move(r), "rho + lambda >= 1: packet latency is unbounded");

    const Rational gap = one - rho - lambda;  // > 0 here
    const Rational clear = one - lambda;
    const long long lg = lg2_ceil(n);

    switch (id) {
        case AlgorithmId::OfJrrw:
        case AlgorithmId::Jrrw: {
            if (Rational(type.jamming_burstiness()) > Rational(*J))
                return not_applicable(std::move(r),
                                      "jamming burstiness floor(b/(1-lambda)) exceeds J");
            Rational a{static_cast<long long>(n) * (*J + 1)};
            Rational of_bound = Rational(2) * (a + Rational(2) * b) / gap;
            std::optional<Rational> of_alt;
            if (Rational(*J) * clear <= b)  // J-free form needs J <= b/(1-lambda)
                of_alt = Rational(4) * (b * nn + (nn + b) * clear) / (clear * gap);
            if (id == AlgorithmId::OfJrrw) {
                r.value = of_bound;
                r.alt_value = of_alt;
                r.provenance = "2(n(J+1)+2b)/(1-rho-lambda); older-first phase recurrence, doubled"
                               "; alt 4(bn+(n+b)(1-lambda))/((1-lambda)(1-rho-lambda)) when J<=b/(1-lambda)";
            } else {
                r.value = of_bound / gap;
                if (of_alt) r.alt_value = *of_alt / gap;
                r.provenance = "2(n(J+1)+2b)/(1-rho-lambda)^2; older-first bound times 1/(1-rho-lambda)";
            }
            return r;
        }
        case AlgorithmId::OfcRrw:
            r.value = Rational(4) * (nn + b) / gap;
            r.provenance = "4(n+b)/(1-rho-lambda); adaptive older-first phase recurrence, doubled";
            return r;
        case AlgorithmId::Crrw:
            r.value = Rational(4) * (nn + b) / (gap * gap);
            r.provenance = "4(n+b)/(1-rho-lambda)^2; adaptive regular variant";
            return r;
        case AlgorithmId::Mbtf:
            r.value = Rational(3) * nn * (nn + b) / (clear * gap) +
                      Rational(kMbtfAdditiveConstant) * b * nn / clear;
            r.provenance = "3n(n+b)/((1-lambda)(1-rho-lambda)) + K*bn/(1-lambda), K=6 derived";
            return r;
        case AlgorithmId::OfRrw:
            r.value = Rational(4) * (nn + b) / gap;
            r.provenance = "4(n+b)/(1-rho); older-first control bound at lambda=0";
            return r;
        case AlgorithmId::Rrw:
            r.value = Rational(4) * (nn + b) / (gap * gap);
            r.provenance = "4(n+b)/(1-rho)^2; regular control bound at lambda=0";
            return r;
        case AlgorithmId::OfSrr: {
            bool small_rate = lg > 0 && rho * Rational(2 * lg) <= one;
            if (small_rate) {
                Rational first = b * Rational(lg);
                Rational second = nn + b;
                r.value = Rational(4) * std::min(first, second);
                r.provenance = "4 min(b lg n, n+b); small-rate search bound";
            } else {
                r.value = (Rational(4) * nn + Rational(2) * b) / (one - rho);
                r.provenance = "(4n+2b)/(1-rho); large-rate search bound";
            }
            return r;
        }
        case AlgorithmId::Srr: {
            bool small_rate = lg > 0 && rho * Rational(2 * lg) <= one;
            if (small_rate) {
                r.value = Rational(6) * b * Rational(lg);
                r.provenance = "6b lg n; small-rate search bound";
            } else {
                r.value = Rational(4) * (nn + b) / ((one - rho) * (one - rho));
                r.provenance = "4(n+b)/(1-rho)^2; large-rate search bound";
            }
            return r;
        }
    }
    throw std::invalid_argument("unknown algorithm");
}

BoundResult queue_bound_mbtf(int n, const AdversaryType& type) {
    type.validate();
    BoundResult r = base(AlgorithmId::Mbtf, "queue");
    const Rational one{1};
    if (type.rho + type.lambda >= one)
        return unbounded(std::move(r), "rho + lambda >= 1");
    const Rational gap = one - type.rho - type.lambda;
    const Rational clear = one - type.lambda;
    const Rational nn{n};
    const Rational b{type.b};
    r.value = Rational(2) * type.rho * nn * (nn + b) / (clear * gap) +
              Rational(kMbtfAdditiveConstant) * b * nn;
    r.provenance = "2 rho n(n+b)/((1-lambda)(1-rho-lambda)) + K'bn, K'=6 derived";
    return r;
}

ComparisonRow compare(long long observed, const BoundResult& bound) {
    ComparisonRow row;
    if (bound.status != BoundStatus::Finite) return row;  // ratio omitted
    if (bound.value == Rational(0)) throw std::domain_error("bound value is zero");
    row.applicable = true;
    row.ratio = Rational(observed) / bound.value;
    row.sound = row.ratio <= Rational(1);
    return row;
}

std::string bound_table_csv(int n, const AdversaryType& type, std::optional<int> J) {
    std::string out = "table,algorithm,rho,lambda,b,J,latency_bound,alt_bound,formula\n";
    auto row = [&](const char* table, AlgorithmId id, const AdversaryType& t,
                   std::optional<int> j) {
        BoundResult r = latency_bound(id, n, t, j);
        out += table;
        out += ',';
        out += r.algorithm;
        out += ',';
        out += format_rational(t.rho);
        out += ',';
        out += format_rational(t.lambda);
        out += ',';
        out += std::to_string(t.b);
        out += ',';
        out += j ? std::to_string(*j) : std::string("-");
        out += ',';
        switch (r.status) {
            case BoundStatus::Finite: out += format_rational(r.value); break;
            case BoundStatus::Unbounded: out += "unbounded"; break;
            case BoundStatus::NotApplicable: out += "n/a"; break;
        }
        out += ',';
        out += r.alt_value ? format_rational(*r.alt_value) : std::string("-");
        out += ',';
        out += '"' + (r.status == BoundStatus::Finite ? r.provenance : r.reason) + '"';
        out += '\n';
    };
    AdversaryType clear = type;
    clear.lambda = Rational(0);
    row("jamming", AlgorithmId::OfJrrw, type, J);
    row("jamming", AlgorithmId::Jrrw, type, J);
    row("jamming", AlgorithmId::OfcRrw, type, std::nullopt);
    row("jamming", AlgorithmId::Crrw, type, std::nullopt);
    row("jamming", AlgorithmId::Mbtf, type, std::nullopt);
    row("clear", AlgorithmId::OfRrw, clear, std::nullopt);
    row("clear", AlgorithmId::Rrw, clear, std::nullopt);
    row("clear", AlgorithmId::OfSrr, clear, std::nullopt);
    row("clear", AlgorithmId::Srr, clear, std::nullopt);
    row("clear", AlgorithmId::Mbtf, clear, std::nullopt);
    return out;
}

}  // namespace macsim
