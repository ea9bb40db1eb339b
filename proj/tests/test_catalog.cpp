#include <doctest.h>

#include <algorithm>

#include "moduli/catalog.hpp"

using namespace moduli;

namespace {

Catalog& shared_catalog() {
    static HcpCache cache;
    static ClassNumberScan scan = scan_class_numbers(10000);
    static Catalog cat = product_catalog(cache, scan);
    return cat;
}

}  // namespace

TEST_CASE("the thirteen rational singular moduli") {
    HcpCache cache;
    auto js = rational_singular_moduli(cache);
    REQUIRE(js.size() == 13);
    CHECK(std::count(js.begin(), js.end(), 0) == 1);
    CHECK(std::count(js.begin(), js.end(), 1728) == 1);
    CHECK(std::count(js.begin(), js.end(), mpz_class("-262537412640768000")) == 1);  // delta -163
    CHECK(js.front() == mpz_class("-262537412640768000"));
}

TEST_CASE("trivial family counts") {
    const auto& cat = shared_catalog();
    i64 f1 = 0, f2 = 0, f3 = 0;
    for (const auto& t : cat.triples) {
        if (t.family == 1) ++f1;
        if (t.family == 2) ++f2;
        if (t.family == 3) ++f3;
        CHECK(t.product != 0);
    }
    CHECK(f1 == 364);
    CHECK(f2 == 348);
    CHECK(f3 == 25);
}

TEST_CASE("catalog size and overlaps") {
    const auto& cat = shared_catalog();
    CHECK(cat.entries.size() == 708);
    CHECK(cat.family1_pairs == 13);
    CHECK(cat.cross_12 == 16);
    CHECK(364 + 348 + 25 - cat.family1_pairs - cat.cross_12 == 708);
    for (size_t i = 1; i < cat.entries.size(); ++i)
        CHECK(cat.entries[i - 1].product < cat.entries[i].product);
}

TEST_CASE("family products match their class polynomial constants") {
    HcpCache cache;
    // family 3 example: delta -23, product -H(0)
    const auto& cat = shared_catalog();
    mpz_class expected = -cache.get(-23).constant_term();
    bool found = false;
    for (const auto& t : cat.triples)
        if (t.family == 3 && t.description == "orbit(-23)") {
            found = true;
            CHECK(t.product == expected);
        }
    CHECK(found);
    // family 2 example: 1728 * H_{-15}(0)
    mpz_class expected2 = 1728 * cache.get(-15).constant_term();
    found = false;
    for (const auto& t : cat.triples)
        if (t.family == 2 && t.description == "1728,pair(-15)") {
            found = true;
            CHECK(t.product == expected2);
        }
    CHECK(found);
}

TEST_CASE("numeric cross-check of conjugate-pair products") {
    HcpCache cache;
    for (i64 d : {-15, -20, -24}) {
        auto vals = singular_moduli(d, 256);
        REQUIRE(vals.size() == 2);
        auto p = vals[0].value * vals[1].value;
        mpz_class lo, hi;
        REQUIRE(p.possible_integers(lo, hi));
        CHECK(lo == hi);
        CHECK(lo == cache.get(d).constant_term());
    }
}
