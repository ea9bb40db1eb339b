#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moduli/ball.hpp"
#include "moduli/quadforms.hpp"

namespace moduli {

/// Lower bound min(4.4e-5, 3500/|delta|^3) for a nonzero singular modulus.
Real min_abs_lower(i64 abs_delta, mpfr_prec_t prec = 256);

/// [e^(pi sqrt|delta|/a) - 2079, e^(pi sqrt|delta|/a) + 2079]
std::pair<Real, Real> fourier_window(i64 abs_delta, i64 a, mpfr_prec_t prec = 256);

/// 0.9994 e^(pi sqrt|delta|); only asserted for |delta| >= 23.
Real dominant_lower(i64 abs_delta, mpfr_prec_t prec = 256);

/// One incompatibility computation: the largest |delta| at which
///   prod_i (e^(r_i pi sqrt d / m_i) + 2079)
/// still meets or exceeds
///   0.9994 e^(r pi sqrt d) * min(4.4e-5, 3500 (s2 d)^-3) * min(4.4e-5, 3500 (s3 d)^-3).
struct BoundCaseSpec {
    std::string label;          // case tree position
    double r = 1;               // dominant exponent scale
    double s2 = 1, s3 = 1;      // |delta_i| = s_i * d in the min-terms
    double r1 = 1, r2 = 1, r3 = 1;  // upper-bound exponent scales
    int m1 = 2, m2 = 2, m3 = 2;     // leading-coefficient divisors
    int k = 0;                  // minimum class number activating this row
};

/// Largest integer d with UpperBound(d) >= LowerBound(d); nullopt when the
/// bounds never become incompatible.
std::optional<i64> case_cutoff(const BoundCaseSpec& spec, mpfr_prec_t prec = 256);

struct ThresholdRow {
    BoundCaseSpec spec;
    i64 cutoff = 0;
};

/// The 25 case rows of the elimination tree, in tree order.
std::vector<BoundCaseSpec> threshold_cases();
std::vector<ThresholdRow> compute_thresholds(mpfr_prec_t prec = 256);

/// h <= 13 forces |delta| <= 20563; tighter than the 30339 analytic cutoff.
inline constexpr i64 kMaxAbsDeltaClassNumber13 = 20563;

}  // namespace moduli
