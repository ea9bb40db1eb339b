#include <doctest.h>

#include <map>
#include <set>

#include "moduli/casegen.hpp"

using namespace moduli;

namespace {

const ClassNumberScan& big_scan() {
    static ClassNumberScan scan = scan_class_numbers(300000);
    return scan;
}

const CasegenInputs& inputs() {
    static CasegenInputs in = [] {
        const auto& scan = big_scan();
        CasegenInputs i;
        i.scan = &scan;
        i.t21 = build_table_2_1(scan);
        i.t41 = build_table_4_1(i.t21);
        i.h_maxima = build_h_maxima(scan, 32);
        return i;
    }();
    return in;
}

const CasegenReport& report() {
    static CasegenReport rep = generate_candidates(inputs());
    return rep;
}

}  // namespace

TEST_CASE("discs_with_class_number completeness guard") {
    const auto& in = inputs();
    CHECK(discs_with_class_number(*in.scan, in.h_maxima, 1, 163).size() == 13);
    CHECK(discs_with_class_number(*in.scan, in.h_maxima, 2, 500).size() == 29);
    CHECK(discs_with_class_number(*in.scan, in.h_maxima, 3, 1000).size() == 25);
    CHECK_THROWS_AS(discs_with_class_number(*in.scan, in.h_maxima, 2, 100), data_error);
}

TEST_CASE("case 2(b)(ii)(C) is empty") {
    CHECK(verify_case_emptiness_2biiC(big_scan()));
}

TEST_CASE("per-case candidate counts are pinned") {
    const auto& rep = report();
    std::map<std::string, i64> per(rep.per_case.begin(), rep.per_case.end());
    CHECK(per.at("1a") == 1231);
    CHECK(per.at("1bi") == 217);
    CHECK(per.at("1biiA") == 14);
    CHECK(per.at("1biiB") == 24);
    CHECK(per.at("2bi-9/4") == 52);
    CHECK(per.at("2bi-4") == 269);
    CHECK(per.at("2bi-9") == 50);
    CHECK(per.at("2bi-16") == 21);
    CHECK(per.at("2bii-A") == 307);
    CHECK(per.at("2bii-B") == 209);
    CHECK(per.at("2bii-C") == 0);
    // every 2bii-A triple is also produced by the 2bii-B enumeration
    CHECK(rep.duplicates_removed == 307);
    CHECK(rep.candidates.size() == 2394);
}

TEST_CASE("no duplicates and deterministic order") {
    const auto& rep = report();
    std::set<std::tuple<i64, i64, i64>> seen;
    for (const auto& c : rep.candidates) CHECK(seen.insert({c.d1, c.d2, c.d3}).second);
    auto rep2 = generate_candidates(inputs());
    CHECK(rep2.candidates == rep.candidates);
}

TEST_CASE("every candidate passes its independent case predicate") {
    const auto& rep = report();
    for (const auto& c : rep.candidates) {
        CAPTURE(c.d1);
        CAPTURE(c.d2);
        CAPTURE(c.d3);
        CAPTURE(c.case_label);
        CHECK(check_candidate(c, inputs()));
    }
}

TEST_CASE("no trivial families leak in") {
    for (const auto& c : report().candidates) {
        CHECK(c.h3 >= 2);
        CHECK(c.h1 >= c.h2);
        CHECK(c.h2 >= c.h3);
        if (c.d1 == c.d2 && c.d2 == c.d3) CHECK(c.h1 >= 4);
    }
}

TEST_CASE("known members and non-members") {
    std::set<std::tuple<i64, i64, i64>> seen;
    for (const auto& c : report().candidates) seen.insert({c.d1, c.d2, c.d3});
    // smallest 1a candidate: any h=4 discriminant, e.g. delta = -39
    CHECK(seen.count({-39, -39, -39}));
    // 1biiA with h=2: delta2 = -15 == 1 mod 8, delta1 = -60
    CHECK(seen.count({-60, -15, -15}));
    CHECK(seen.count({-60, -15, -60}));
    // 1bi with h=2 in the Q(sqrt 5) field group, three distinct fundamentals
    CHECK(seen.count({-235, -20, -15}));
    // conjugate degree-3 orbits are trivial, never candidates
    CHECK(!seen.count({-23, -23, -23}));
    // all-rational triples (h = 1 rows of the field table) are trivial
    CHECK(!seen.count({-163, -67, -43}));
}

TEST_CASE("candidate JSON round trip") {
    const auto& rep = report();
    auto path = std::string("/tmp/moduli-test-candidates.json");
    save_candidates(rep.candidates, path);
    auto loaded = load_candidates(path);
    CHECK(loaded == rep.candidates);
}
