#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "moduli/quadforms.hpp"

namespace moduli {

/// Squarefree kernels > 1 of the positive halves of all splittings
/// delta = d * d' with both factors congruent to 0 or 1 mod 4. For a
/// two-elementary class group these are exactly the real quadratic
/// subfields of Q(x), x a singular modulus of discriminant delta, so the
/// set (with the class number) identifies the field Q(x).
std::set<i64> genus_field_fingerprint(i64 delta);

/// Printable label for the field, e.g. "Q" or "Q(s5)" or "Q(s3,s7,s21)".
std::string field_label(const std::set<i64>& fingerprint);

struct TableRow {
    i64 delta = 0;
    i64 h = 0;
    std::string field;  // field_label of the fingerprint
};

struct ExternalTable {
    std::string source_id;  // "table-2.1" or "table-4.1"
    std::vector<TableRow> rows;
    std::uint64_t checksum = 0;
};

/// Raised on a checksum or format failure when loading a bundled table.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(const std::string& bytes);

/// Discriminants whose form class group is 2-elementary (every class
/// ambiguous), i.e. those with Galois Q(x); rows carry the field label.
ExternalTable build_table_2_1(const ClassNumberScan& scan, i64 search_cap = 10000);

/// Rows of table 2.1 grouped by the generated field, restricted to fields
/// realized by at least two distinct fundamental discriminants (the fields
/// shared across distinct imaginary quadratic base fields).
ExternalTable build_table_4_1(const ExternalTable& t21);

struct HMaximaRow {
    i64 h = 0;
    i64 max_abs_delta = 0;
};

std::vector<HMaximaRow> build_h_maxima(const ClassNumberScan& scan, i64 max_h = 40);

void save_table(const ExternalTable& t, const std::string& path);
ExternalTable load_table(const std::string& path, const std::string& expected_source);
void save_h_maxima(const std::vector<HMaximaRow>& rows, i64 scan_cap, const std::string& path);
std::vector<HMaximaRow> load_h_maxima(const std::string& path, i64* scan_cap = nullptr);

/// Re-derives every row's class number, 2-elementarity and field label;
/// throws data_error on any mismatch.
void validate_table_2_1(const ExternalTable& t, const ClassNumberScan& scan);
void validate_table_4_1(const ExternalTable& t41, const ExternalTable& t21);

}  // namespace moduli
