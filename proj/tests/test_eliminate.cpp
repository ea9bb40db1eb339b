#include <doctest.h>

#include <set>

#include "moduli/eliminate.hpp"

using namespace moduli;

namespace {

CandidateTriple triple(i64 d1, i64 d2, i64 d3, const ClassNumberScan& scan) {
    return {d1, d2, d3, "control", scan.class_number(d1), scan.class_number(d2),
            scan.class_number(d3)};
}

const ClassNumberScan& scan() {
    static ClassNumberScan s = scan_class_numbers(1000);
    return s;
}

}  // namespace

TEST_CASE("positive controls: conjugate degree-3 orbits are detected") {
    Eliminator el;
    Schedule sched;
    for (i64 d : {-23, -31, -59}) {
        auto c = triple(d, d, d, scan());
        auto v = el.eliminate_triple(c, sched);
        REQUIRE(v.status == Status::RationalProductFound);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->alpha == -el.cache().get(d).constant_term());
        CHECK(v.exact_tier_invocations >= 1);
    }
}

TEST_CASE("range bound dominates the control products") {
    Eliminator el;
    auto c = triple(-23, -23, -23, scan());
    mpz_class B = el.range_bound(c);
    mpz_class alpha = -el.cache().get(-23).constant_term();
    CHECK(B > abs(alpha));
    // monotone in each |delta|
    CHECK(el.range_bound(triple(-31, -23, -23, scan())) > B);
    CHECK(el.range_bound(triple(-23, -23, -31, scan())) > B);
}

TEST_CASE("exact tier agrees with brute force near-integer products") {
    Eliminator el;
    auto c = triple(-23, -23, -23, scan());
    // all 27 products of conjugate triples, computed numerically
    auto vals = singular_moduli(-23, 512);
    std::set<mpz_class> integer_products;
    for (const auto& x : vals)
        for (const auto& y : vals)
            for (const auto& z : vals) {
                auto p = x.value * y.value * z.value;
                mpz_class lo, hi;
                if (!p.possible_integers(lo, hi)) continue;
                REQUIRE(lo == hi);  // at 512 bits every hit is pinned
                integer_products.insert(lo);
            }
    mpz_class alpha = -el.cache().get(-23).constant_term();
    CHECK(integer_products.count(alpha));
    for (mpz_class n = alpha - 3; n <= alpha + 3; ++n)
        CHECK(el.exact_rational_root_check(c, n) == (integer_products.count(n) > 0));
    CHECK(!el.exact_rational_root_check(c, 0));
    CHECK(!el.exact_rational_root_check(c, 1));
}

TEST_CASE("a genuine candidate is eliminated without the exact tier") {
    Eliminator el;
    Schedule sched;
    auto c = CandidateTriple{-60, -15, -15, "1biiA", 2, 2, 2};
    auto v = el.eliminate_triple(c, sched);
    CHECK(v.status == Status::Eliminated);
    CHECK(v.exact_tier_invocations == 0);
    CHECK(v.pairs_checked == 1);  // x2 != x3 from the two forms of -15
    CHECK(v.min_int_distance > 0);

    auto c2 = CandidateTriple{-60, -15, -60, "1biiB", 2, 2, 2};
    auto v2 = el.eliminate_triple(c2, sched);
    CHECK(v2.status == Status::Eliminated);
    // x3 ranges over the non-dominant form of -60 only
    CHECK(v2.pairs_checked == 2);
}

TEST_CASE("determinism") {
    Eliminator el;
    Schedule sched;
    auto c = CandidateTriple{-60, -15, -15, "1biiA", 2, 2, 2};
    auto v1 = el.eliminate_triple(c, sched);
    auto v2 = el.eliminate_triple(c, sched);
    CHECK(v1.pairs_checked == v2.pairs_checked);
    CHECK(v1.max_precision_bits == v2.max_precision_bits);
    CHECK(v1.min_int_distance == v2.min_int_distance);
}

TEST_CASE("parallel pool matches serial") {
    Eliminator el;
    Schedule sched;
    std::vector<CandidateTriple> cs = {
        {-60, -15, -15, "1biiA", 2, 2, 2},
        {-60, -15, -60, "1biiB", 2, 2, 2},
        {-39, -39, -39, "1a", 4, 4, 4},
    };
    auto serial = eliminate_all(el, cs, sched, 1);
    auto parallel = eliminate_all(el, cs, sched, 3);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < cs.size(); ++i) {
        CHECK(serial[i].status == Status::Eliminated);
        CHECK(serial[i].status == parallel[i].status);
        CHECK(serial[i].pairs_checked == parallel[i].pairs_checked);
    }
}
