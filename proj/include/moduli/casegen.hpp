#pragma once

#include <string>
#include <utility>
#include <vector>

#include "moduli/quadforms.hpp"
#include "moduli/tables.hpp"

namespace moduli {

struct CandidateTriple {
    i64 d1 = 0, d2 = 0, d3 = 0;
    std::string case_label;
    i64 h1 = 0, h2 = 0, h3 = 0;
    auto operator<=>(const CandidateTriple&) const = default;
};

inline const std::vector<std::string> kCaseOrder = {
    "1a",     "1bi",    "1biiA", "1biiB",  "2bi-9/4", "2bi-4",
    "2bi-9",  "2bi-16", "2bii-A", "2bii-B", "2bii-C"};

struct CasegenInputs {
    const ClassNumberScan* scan = nullptr;
    ExternalTable t21;
    ExternalTable t41;
    std::vector<HMaximaRow> h_maxima;
};

/// Loads and validates data/table-2_1.tsv, data/table-4_1.tsv,
/// data/h-maxima.tsv; throws data_error on any checksum or content failure.
CasegenInputs load_casegen_inputs(const std::string& data_dir, const ClassNumberScan& scan);

/// All discriminants with the given class number; refuses (data_error) when
/// the committed per-h maximum exceeds cap or h exceeds the table.
std::vector<i64> discs_with_class_number(const ClassNumberScan& scan,
                                         const std::vector<HMaximaRow>& h_maxima, i64 h,
                                         i64 cap);

struct CasegenReport {
    std::vector<CandidateTriple> candidates;
    std::vector<std::pair<std::string, i64>> per_case;
    i64 duplicates_removed = 0;
};

CasegenReport generate_candidates(const CasegenInputs& in);

/// True iff no discriminant with |delta| <= 488 has class number >= 128.
bool verify_case_emptiness_2biiC(const ClassNumberScan& scan);

/// Independent re-check of one candidate against its case's constraint set.
bool check_candidate(const CandidateTriple& c, const CasegenInputs& in);

void save_candidates(const std::vector<CandidateTriple>& cs, const std::string& path);
std::vector<CandidateTriple> load_candidates(const std::string& path);

}  // namespace moduli
