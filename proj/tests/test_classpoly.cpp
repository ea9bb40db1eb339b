#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "moduli/bounds.hpp"
#include "moduli/classpoly.hpp"

using namespace moduli;

TEST_CASE("j at the corner points") {
    // j(i) = 1728 via the form (1,0,1), delta = -4
    auto j1728 = eval_j({1, 0, 1}, -4, 192);
    mpz_class lo, hi;
    REQUIRE(j1728.possible_integers(lo, hi));
    CHECK(lo == 1728);
    CHECK(hi == 1728);
    // j(zeta_3) = 0 via (1,1,1), delta = -3
    auto j0 = eval_j({1, 1, 1}, -3, 192);
    REQUIRE(j0.possible_integers(lo, hi));
    CHECK(lo == 0);
    CHECK(hi == 0);
}

TEST_CASE("q-expansion of j") {
    auto s = j_q_expansion(4);
    REQUIRE(s.coeffs.size() >= 4);
    CHECK(s.coeffs[0] == 1);         // q^-1
    CHECK(s.coeffs[1] == 744);       // q^0
    CHECK(s.coeffs[2] == 196884);    // q^1
    CHECK(s.coeffs[3] == 21493760);  // q^2
}

TEST_CASE("dominant value sits in its Fourier window") {
    for (i64 d : {-23, -31, -100, -231}) {
        auto dom = dominant_value(d, 256);
        auto [lo, hi] = fourier_window(-d, 1, 256);
        CHECK(dom.value.mag_lower() >= lo - Real::from(1L, 256));
        CHECK(dom.value.mag_upper().to_double() <= hi.to_double() * 1.0000001);
        if (-d >= 23) CHECK(dom.value.mag_lower() >= dominant_lower(-d, 256));
    }
}

TEST_CASE("class polynomials match the precomputed oracle") {
    std::ifstream in(std::string(MODULI_TEST_DATA_DIR) + "/hcp_oracle.tsv");
    REQUIRE(in.good());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        i64 delta, h;
        ls >> delta >> h;
        std::vector<mpz_class> coeffs;
        std::string tok;
        while (ls >> tok) coeffs.emplace_back(tok);
        auto poly = compute_class_polynomial(delta);
        CHECK(poly.degree() == h);
        CHECK(poly.coeffs == coeffs);
        ++rows;
    }
    CHECK(rows == 13 + 29 + 25);
}

TEST_CASE("precision-doubling containment of singular moduli") {
    for (i64 d : {-15, -23, -56, -71}) {
        auto lo = singular_moduli(d, 128);
        auto hi = singular_moduli(d, 256);
        REQUIRE(lo.size() == hi.size());
        for (size_t i = 0; i < lo.size(); ++i) {
            CHECK(lo[i].form == hi[i].form);
            CHECK(!lo[i].value.disjoint_from(hi[i].value));
        }
    }
}

TEST_CASE("disk cache round trip") {
    auto dir = std::filesystem::temp_directory_path() / "moduli-test-cache";
    std::filesystem::remove_all(dir);
    {
        HcpCache cache(dir.string());
        CHECK(cache.get(-23).constant_term() == mpz_class("12771880859375"));
    }
    CHECK(std::filesystem::exists(dir / "23.txt"));
    {
        HcpCache cache(dir.string());  // now reads from disk
        CHECK(cache.get(-23).coeffs[1] == 3491750);
    }
    std::filesystem::remove_all(dir);
}
