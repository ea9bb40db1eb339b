#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "moduli/tables.hpp"

using namespace moduli;

namespace {

const ClassNumberScan& shared_scan() {
    static ClassNumberScan scan = scan_class_numbers(20000);
    return scan;
}

}  // namespace

TEST_CASE("genus fingerprints by hand") {
    CHECK(genus_field_fingerprint(-15) == std::set<i64>{5});
    CHECK(genus_field_fingerprint(-36) == std::set<i64>{3});
    CHECK(genus_field_fingerprint(-48) == std::set<i64>{3});
    CHECK(genus_field_fingerprint(-84) == std::set<i64>{3, 7, 21});
    CHECK(genus_field_fingerprint(-3).empty());
    CHECK(genus_field_fingerprint(-4).empty());
}

TEST_CASE("field labels") {
    CHECK(field_label({}) == "Q");
    CHECK(field_label({5}) == "Q(s5)");
    CHECK(field_label({3, 7, 21}) == "Q(s3,s7,s21)");
}

TEST_CASE("fingerprint size is h-1 for two-elementary discriminants") {
    const auto& scan = shared_scan();
    for (i64 n = 3; n <= 8000; ++n) {
        if (scan.h[n] == 0 || !scan.two_elementary(-n)) continue;
        CHECK(static_cast<i64>(genus_field_fingerprint(-n).size()) == scan.class_number(-n) - 1);
    }
}

TEST_CASE("table 2.1 construction") {
    const auto& scan = shared_scan();
    auto t21 = build_table_2_1(scan);
    validate_table_2_1(t21, scan);
    std::set<i64> discs;
    for (const auto& r : t21.rows) discs.insert(r.delta);
    // all thirteen class-number-one discriminants are trivially there
    for (i64 d : {-3L, -4L, -163L}) CHECK(discs.count(d));
    CHECK(discs.count(-15));
    CHECK(discs.count(-84));
    CHECK(!discs.count(-23));
    CHECK(!discs.count(-31));
    // the known largest two-elementary discriminant
    CHECK(discs.count(-7392));
    i64 max_abs = 0;
    for (const auto& r : t21.rows) max_abs = std::max(max_abs, -r.delta);
    CHECK(max_abs == 7392);
}

TEST_CASE("table 4.1 grouping") {
    const auto& scan = shared_scan();
    auto t21 = build_table_2_1(scan);
    auto t41 = build_table_4_1(t21);
    validate_table_4_1(t41, t21);
    // Q(sqrt 5): both -15 (fund -15) and -20 (fund -20) give h=2 and field Q(s5)
    bool has15 = false, has20 = false;
    for (const auto& r : t41.rows) {
        if (r.delta == -15) has15 = true;
        if (r.delta == -20) has20 = true;
    }
    CHECK(has15);
    CHECK(has20);
}

TEST_CASE("fnv1a64 fixed points") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("table save/load with checksum") {
    const auto& scan = shared_scan();
    auto t21 = build_table_2_1(scan);
    auto dir = std::filesystem::temp_directory_path() / "moduli-test-tables";
    std::filesystem::create_directories(dir);
    auto path = (dir / "t21.tsv").string();
    save_table(t21, path);
    auto loaded = load_table(path, "table-2.1");
    CHECK(loaded.rows.size() == t21.rows.size());
    CHECK(loaded.checksum == t21.checksum);
    CHECK_THROWS_AS(load_table(path, "table-4.1"), data_error);

    // corrupt one digit and expect a checksum failure
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    auto pos = content.find("-15");
    REQUIRE(pos != std::string::npos);
    content[pos + 1] = '9';
    std::ofstream out(path);
    out << content;
    out.close();
    CHECK_THROWS_AS(load_table(path, "table-2.1"), data_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("h-maxima save/load") {
    const auto& scan = shared_scan();
    auto rows = build_h_maxima(scan, 8);
    auto dir = std::filesystem::temp_directory_path() / "moduli-test-hmax";
    std::filesystem::create_directories(dir);
    auto path = (dir / "h.tsv").string();
    save_h_maxima(rows, scan.cap, path);
    i64 cap = 0;
    auto loaded = load_h_maxima(path, &cap);
    CHECK(cap == scan.cap);
    REQUIRE(loaded.size() == rows.size());
    CHECK(loaded[0].h == 1);
    CHECK(loaded[0].max_abs_delta == 163);
    std::filesystem::remove_all(dir);
}
