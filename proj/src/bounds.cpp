#include "moduli/bounds.hpp"

#include <stdexcept>

namespace moduli {

Real min_abs_lower(i64 abs_delta, mpfr_prec_t prec) {
    Real cap = Real::from(4.4e-5, prec);
    Real d = Real::from(static_cast<long>(abs_delta), prec);
    Real alt = Real::from(3500L, prec) / (d * d * d);
    return min(cap, alt);
}

std::pair<Real, Real> fourier_window(i64 abs_delta, i64 a, mpfr_prec_t prec) {
    if (a < 1) throw std::invalid_argument("a must be positive");
    Real e = exp(Real::pi(prec) * sqrt(Real::from(static_cast<long>(abs_delta), prec)) /
                 static_cast<long>(a));
    return {e - 2079L, e + 2079L};
}

Real dominant_lower(i64 abs_delta, mpfr_prec_t prec) {
    if (abs_delta < 23)
        throw std::invalid_argument("dominant lower bound requires |delta| >= 23");
    return Real::from(0.9994, prec) *
           exp(Real::pi(prec) * sqrt(Real::from(static_cast<long>(abs_delta), prec)));
}

namespace {

// log UpperBound(d) - log LowerBound(d); positive means still compatible
Real log_gap(const BoundCaseSpec& s, i64 d, mpfr_prec_t prec) {
    Real pi = Real::pi(prec);
    Real sd = sqrt(Real::from(static_cast<long>(d), prec));
    Real upper = Real::from(0L, prec);
    const double rs[3] = {s.r1, s.r2, s.r3};
    const int ms[3] = {s.m1, s.m2, s.m3};
    for (int i = 0; i < 3; ++i)
        upper = upper + log(exp(Real::from(rs[i], prec) * pi * sd / static_cast<long>(ms[i])) + 2079L);
    auto min_term = [&](double scale) {
        Real x = Real::from(scale, prec) * Real::from(static_cast<long>(d), prec);
        return min(Real::from(4.4e-5, prec), Real::from(3500L, prec) / (x * x * x));
    };
    Real lower = log(Real::from(0.9994, prec)) + Real::from(s.r, prec) * pi * sd +
                 log(min_term(s.s2)) + log(min_term(s.s3));
    return upper - lower;
}

}  // namespace

std::optional<i64> case_cutoff(const BoundCaseSpec& spec, mpfr_prec_t prec) {
    if (log_gap(spec, 1, prec) < 0) return 0;
    // bracket the first incompatible d
    i64 hi = 2;
    const i64 limit = i64(1) << 40;
    while (log_gap(spec, hi, prec) >= 0) {
        hi *= 2;
        if (hi > limit) return std::nullopt;
    }
    i64 lo = hi / 2;  // compatible
    while (hi - lo > 1) {
        i64 mid = lo + (hi - lo) / 2;
        if (log_gap(spec, mid, prec) >= 0)
            lo = mid;
        else
            hi = mid;
    }
    // the gap is eventually strictly decreasing; confirm locally
    for (i64 d = lo + 1; d <= lo + 16; ++d)
        if (log_gap(spec, d, prec) >= 0)
            throw std::logic_error("cutoff search: gap not monotone near boundary");
    return lo;
}

std::vector<BoundCaseSpec> threshold_cases() {
    std::vector<BoundCaseSpec> v;
    auto row = [&](std::string label, double r, double s2, double s3, double r1, double r2,
                   double r3, int m1, int m2, int m3, int k) {
        v.push_back({std::move(label), r, s2, s3, r1, r2, r3, m1, m2, m3, k});
    };
    // 1(a): delta1 = delta2 = delta3
    row("1a", 1, 1, 1, 1, 1, 1, 3, 3, 4, 12);
    row("1a", 1, 1, 1, 1, 1, 1, 3, 4, 4, 14);
    row("1a", 1, 1, 1, 1, 1, 1, 4, 4, 4, 16);
    row("1a", 1, 1, 1, 1, 1, 1, 4, 4, 5, 18);
    row("1a", 1, 1, 1, 1, 1, 1, 4, 5, 5, 20);
    // 1(b)(ii)(A): delta1 = 4 delta, delta2 = delta3 = delta
    row("1biiA", 2, 1, 1, 2, 1, 1, 3, 2, 2, 4);
    row("1biiA", 2, 1, 1, 2, 1, 1, 3, 3, 2, 6);
    row("1biiA", 2, 1, 1, 2, 1, 1, 3, 3, 3, 8);
    // 1(b)(ii)(B): delta1 = delta3 = 4 delta, delta2 = delta
    row("1biiB", 2, 1, 4, 2, 1, 2, 3, 2, 3, 4);
    row("1biiB", 2, 1, 4, 2, 1, 2, 3, 3, 3, 6);
    row("1biiB", 2, 1, 4, 2, 1, 2, 4, 3, 3, 8);
    row("1biiB", 2, 1, 4, 2, 1, 2, 4, 3, 4, 10);
    // 2(b)(i), delta1 = delta2 = 9 delta3 / 4
    row("2bi-9/4", 1.5, 2.25, 1, 1.5, 1.5, 1, 3, 3, 3, 10);
    row("2bi-9/4", 1.5, 2.25, 1, 1.5, 1.5, 1, 4, 4, 2, 12);
    row("2bi-9/4", 1.5, 2.25, 1, 1.5, 1.5, 1, 4, 4, 3, 14);
    row("2bi-9/4", 1.5, 2.25, 1, 1.5, 1.5, 1, 4, 4, 4, 16);
    // 2(b)(i), delta1 = delta2 = 4 delta3
    row("2bi-4", 2, 4, 1, 2, 2, 1, 3, 3, 3, 10);
    row("2bi-4", 2, 4, 1, 2, 2, 1, 3, 3, 4, 12);
    row("2bi-4", 2, 4, 1, 2, 2, 1, 3, 3, 5, 14);
    row("2bi-4", 2, 4, 1, 2, 2, 1, 3, 4, 4, 16);
    // 2(b)(i), delta1 = delta2 = 9 delta3
    row("2bi-9", 3, 9, 1, 3, 3, 1, 3, 3, 2, 8);
    row("2bi-9", 3, 9, 1, 3, 3, 1, 3, 4, 2, 10);
    // 2(b)(i), delta1 = delta2 = 16 delta3
    row("2bi-16", 4, 16, 1, 4, 4, 1, 3, 3, 2, 8);
    row("2bi-16", 4, 16, 1, 4, 4, 1, 3, 3, 3, 10);
    // 2(b)(ii)(C): h1 >= 128
    row("2bii-C", 1, 1, 1, 1, 1, 1, 4, 4, 5, 128);
    return v;
}

std::vector<ThresholdRow> compute_thresholds(mpfr_prec_t prec) {
    std::vector<ThresholdRow> rows;
    for (const auto& spec : threshold_cases()) {
        auto c = case_cutoff(spec, prec);
        if (!c) throw std::logic_error("unbounded threshold case " + spec.label);
        rows.push_back({spec, *c});
    }
    return rows;
}

}  // namespace moduli
