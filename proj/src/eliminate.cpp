#include "moduli/eliminate.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace moduli {

std::string to_string(Status s) {
    switch (s) {
        case Status::Eliminated: return "Eliminated";
        case Status::RationalProductFound: return "RationalProductFound";
        case Status::Undecided: return "Undecided";
    }
    return "?";
}

namespace {

constexpr double kPiOverLn2 = 4.532360141827194;

// log2 of the predicted product magnitude plus headroom, used to pick the
// first precision rung worth trying for this pair
long predicted_bits(i64 d1, i64 d2, i64 a2, i64 d3, i64 a3) {
    double bits = kPiOverLn2 * (std::sqrt(double(-d1)) + std::sqrt(double(-d2)) / double(a2) +
                                std::sqrt(double(-d3)) / double(a3));
    return static_cast<long>(bits) + 192;
}

}  // namespace

const std::vector<SingularModulus>& Eliminator::values(i64 delta, long prec) {
    const auto key = std::make_pair(delta, prec);
    {
        std::lock_guard lk(mu_);
        auto it = vals_.find(key);
        if (it != vals_.end()) return *it->second;
    }
    auto computed = std::make_unique<std::vector<SingularModulus>>(singular_moduli(delta, prec));
    std::lock_guard lk(mu_);
    auto [it, inserted] = vals_.emplace(key, nullptr);
    if (inserted) it->second = std::move(computed);
    return *it->second;
}

mpz_class Eliminator::range_bound(const CandidateTriple& c) {
    const mpfr_prec_t p = 256;
    Real r = Real::from(1L, p);
    for (i64 d : {c.d1, c.d2, c.d3})
        r = r * (exp(Real::pi(p) * sqrt(Real::from(static_cast<long>(-d), p))) + 2079L);
    // absorb the rounding of this closed-form evaluation
    Real fudge = Real::from(1L, p) + Real::pow2(-64, p);
    return (r * fudge).ceil_to_integer();
}

bool Eliminator::exact_rational_root_check(const CandidateTriple& c, const mpz_class& n) {
    auto asc = [](const ClassPolynomial& h) {
        return ZPoly(h.coeffs.rbegin(), h.coeffs.rend());
    };
    const ClassPolynomial& H1 = hcp_.get(c.d1);
    const ClassPolynomial& H2 = hcp_.get(c.d2);
    const ClassPolynomial& H3 = hcp_.get(c.d3);
    if (H1.degree() * H2.degree() * H3.degree() > 20000)
        throw precision_error("exact tier: product degree too large");
    ZPoly Q = product_polynomial(asc(H2), asc(H3));
    const long m = zp_degree(Q);
    if (Q[0] == 0) return n == 0;  // a zero root product; cannot occur for candidates
    // R(n) = Res_x(H1(x), x^m Q(n/x)); zero iff n is a triple root product
    ZPoly S(m + 1);
    mpz_class np = 1;
    for (long k = 0; k <= m; ++k) {
        S[m - k] = Q[k] * np;
        np *= n;
    }
    return resultant(asc(H1), S) == 0;
}

Verdict Eliminator::eliminate_triple(const CandidateTriple& c, const Schedule& s) {
    Verdict v;
    v.min_int_distance = std::numeric_limits<double>::infinity();
    try {
        const mpz_class B = range_bound(c);
        const Form dom = forms_with_leading(c.d1, 1).at(0);
        const auto forms2 = reduced_forms(c.d2);
        const auto forms3 = reduced_forms(c.d3);
        for (size_t j = 0; j < forms2.size(); ++j) {
            if (c.d2 == c.d1 && forms2[j] == dom) continue;
            // the product is symmetric in x2, x3 when the discriminants agree
            const size_t k0 = (c.d2 == c.d3) ? j + 1 : 0;
            for (size_t k = k0; k < forms3.size(); ++k) {
                if (c.d3 == c.d1 && forms3[k] == dom) continue;
                ++v.pairs_checked;
                const long want = predicted_bits(c.d1, c.d2, forms2[j].a, c.d3, forms3[k].a);
                bool resolved = false;
                for (size_t ri = 0; ri < s.rungs.size(); ++ri) {
                    const long p = s.rungs[ri];
                    const bool last = ri + 1 == s.rungs.size();
                    if (p < want && !last) continue;
                    v.max_precision_bits = std::max(v.max_precision_bits, p);

                    const auto& m1 = values(c.d1, p);
                    const ComplexBall* x1 = nullptr;
                    for (const auto& sm : m1)
                        if (sm.is_dominant) x1 = &sm.value;
                    const ComplexBall& x2 = values(c.d2, p)[j].value;
                    const ComplexBall& x3 = values(c.d3, p)[k].value;
                    const ComplexBall prod = (*x1) * x2 * x3;
                    v.min_int_distance =
                        std::min(v.min_int_distance, prod.center_distance_to_integers());

                    mpz_class lo, hi;
                    bool any = prod.possible_integers(lo, hi);
                    if (any) {
                        if (lo < -B) lo = -B;
                        if (hi > B) hi = B;
                        if (lo > hi) any = false;
                    }
                    if (!any) {
                        resolved = true;
                        break;
                    }
                    if (!last) continue;

                    if (hi - lo > 1000) return v;  // Undecided: ball far too wide at cap
                    bool refuted = true;
                    for (mpz_class n = lo; n <= hi; ++n) {
                        ++v.exact_tier_invocations;
                        if (exact_rational_root_check(c, n)) {
                            v.status = Status::RationalProductFound;
                            v.witness = Witness{forms2[j], forms3[k], n};
                            return v;
                        }
                    }
                    resolved = refuted;
                }
                if (!resolved) return v;  // Undecided
            }
        }
        v.status = Status::Eliminated;
    } catch (const precision_error&) {
        v.status = Status::Undecided;
    }
    return v;
}

std::vector<Verdict> eliminate_all(Eliminator& el, const std::vector<CandidateTriple>& cs,
                                   const Schedule& s, int jobs) {
    std::vector<Verdict> out(cs.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= cs.size()) return;
            out[i] = el.eliminate_triple(cs[i], s);
        }
    };
    if (jobs <= 1) {
        work();
        return out;
    }
    std::vector<std::thread> ts;
    for (int t = 0; t < jobs; ++t) ts.emplace_back(work);
    for (auto& t : ts) t.join();
    return out;
}

}  // namespace moduli
