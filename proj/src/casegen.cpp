#include "moduli/casegen.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace moduli {

namespace {

struct Band {
    i64 h_lo;
    i64 h_hi;  // -1 for unbounded
    i64 cap;   // -1 for unbounded (then h_hi must be finite)
};

// class-number bands with |delta| cutoffs, one vector per case leaf
const std::vector<Band> kBands1a = {{4, 11, -1},   {12, 13, -1},  {14, 15, 4124},
                                    {16, 17, 1045}, {18, 19, 488}, {20, -1, 334}};
const std::vector<Band> kBands1biiA = {{2, 3, -1}, {4, 5, 367}, {6, 7, 163}, {8, -1, 93}};
const std::vector<Band> kBands1biiB = {
    {2, 3, -1}, {4, 5, 5781}, {6, 7, 650}, {8, 9, 192}, {10, -1, 92}};
const std::vector<Band> kBands2bi94 = {
    {2, 9, -1}, {10, 11, 5076}, {12, 13, 1430}, {14, 15, 255}, {16, -1, 164}};
const std::vector<Band> kBands2bi4 = {
    {2, 9, -1}, {10, 11, 650}, {12, 13, 317}, {14, 15, 236}, {16, -1, 129}};
const std::vector<Band> kBands2bi9 = {{2, 7, -1}, {8, 9, 255}, {10, -1, 85}};
const std::vector<Band> kBands2bi16 = {{2, 7, -1}, {8, 9, 79}, {10, -1, 52}};

i64 h_maximum(const std::vector<HMaximaRow>& table, i64 h) {
    for (const auto& r : table)
        if (r.h == h) return r.max_abs_delta;
    throw data_error("h-maxima table has no entry for class number " + std::to_string(h));
}

bool in_bands(const std::vector<Band>& bands, i64 h, i64 abs_delta) {
    for (const auto& b : bands)
        if (h >= b.h_lo && (b.h_hi < 0 || h <= b.h_hi) && (b.cap < 0 || abs_delta <= b.cap))
            return true;
    return false;
}

/// All delta in the union of the bands, optionally restricted by an extra
/// residue condition on delta mod 8.
std::vector<i64> band_discs(const CasegenInputs& in, const std::vector<Band>& bands) {
    std::set<i64> abs;
    for (const auto& b : bands) {
        if (b.h_hi >= 0) {
            for (i64 h = b.h_lo; h <= b.h_hi; ++h) {
                i64 recorded = h_maximum(in.h_maxima, h);
                if (recorded > in.scan->cap)
                    throw data_error("scan too small for class number " + std::to_string(h));
                i64 cap = b.cap >= 0 ? std::min(recorded, b.cap) : recorded;
                for (i64 d : in.scan->with_class_number(h, cap)) abs.insert(-d);
            }
        } else {
            for (i64 n = 3; n <= b.cap; ++n)
                if (in.scan->h[n] >= b.h_lo && is_valid_discriminant(-n)) abs.insert(n);
        }
    }
    std::vector<i64> out;
    for (i64 n : abs) out.push_back(-n);
    return out;
}

bool same_key(const TableRow& r, i64 h, const std::string& field) {
    return r.h == h && r.field == field;
}

const TableRow* table_row(const ExternalTable& t, i64 delta) {
    for (const auto& r : t.rows)
        if (r.delta == delta) return &r;
    return nullptr;
}

}  // namespace

CasegenInputs load_casegen_inputs(const std::string& data_dir, const ClassNumberScan& scan) {
    CasegenInputs in;
    in.scan = &scan;
    in.t21 = load_table(data_dir + "/table-2_1.tsv", "table-2.1");
    in.t41 = load_table(data_dir + "/table-4_1.tsv", "table-4.1");
    validate_table_2_1(in.t21, scan);
    validate_table_4_1(in.t41, in.t21);
    i64 committed_cap = 0;
    in.h_maxima = load_h_maxima(data_dir + "/h-maxima.tsv", &committed_cap);
    if (committed_cap > scan.cap)
        throw data_error("h-maxima table was generated with a larger scan than available");
    for (const auto& r : in.h_maxima)
        if (scan.max_abs_with_class_number(r.h) != r.max_abs_delta)
            throw data_error("h-maxima mismatch at class number " + std::to_string(r.h));
    return in;
}

std::vector<i64> discs_with_class_number(const ClassNumberScan& scan,
                                         const std::vector<HMaximaRow>& h_maxima, i64 h,
                                         i64 cap) {
    i64 recorded = h_maximum(h_maxima, h);
    if (cap < recorded)
        throw data_error("cap " + std::to_string(cap) + " misses discriminants of class number " +
                         std::to_string(h) + " (recorded maximum " + std::to_string(recorded) +
                         ")");
    if (recorded > scan.cap)
        throw data_error("scan too small for class number " + std::to_string(h));
    return scan.with_class_number(h, std::min(cap, scan.cap));
}

bool verify_case_emptiness_2biiC(const ClassNumberScan& scan) {
    for (i64 n = 3; n <= 488; ++n)
        if (scan.h[n] >= 128) return false;
    return true;
}

namespace {

void gen_1a(const CasegenInputs& in, std::vector<CandidateTriple>& out) {
    for (i64 d : band_discs(in, kBands1a)) {
        i64 h = in.scan->class_number(d);
        out.push_back({d, d, d, "1a", h, h, h});
    }
}

void gen_1bi(const CasegenInputs& in, std::vector<CandidateTriple>& out) {
    std::map<std::pair<i64, std::string>, std::vector<i64>> groups;
    for (const auto& r : in.t41.rows) groups[{r.h, r.field}].push_back(r.delta);
    for (auto& [key, ds] : groups) {
        // the h = 1 rows would give all-rational (trivial) triples
        if (key.first < 2) continue;
        // sort by |delta| descending so multiset picks come out canonical
        std::sort(ds.begin(), ds.end());
        const size_t g = ds.size();
        for (size_t i = 0; i < g; ++i)
            for (size_t j = i; j < g; ++j)
                for (size_t k = j; k < g; ++k) {
                    i64 f1 = fundamental_decomposition(ds[i]).fundamental;
                    i64 f2 = fundamental_decomposition(ds[j]).fundamental;
                    i64 f3 = fundamental_decomposition(ds[k]).fundamental;
                    if (f1 == f2 && f2 == f3) continue;
                    out.push_back(
                        {ds[i], ds[j], ds[k], "1bi", key.first, key.first, key.first});
                }
    }
}

void gen_1bii(const CasegenInputs& in, std::vector<CandidateTriple>& out) {
    auto emit = [&](const std::vector<Band>& bands, bool third_is_big,
                    const std::string& label) {
        for (i64 d : band_discs(in, bands)) {
            if (((d % 8) + 8) % 8 != 1) continue;  // delta == 1 mod 8
            i64 d1 = 4 * d;
            if (-d1 > in.scan->cap) throw data_error("scan too small for 4*delta");
            i64 h = in.scan->class_number(d);
            if (in.scan->class_number(d1) != h)
                throw std::logic_error("h(4 delta) != h(delta) for delta == 1 mod 8");
            out.push_back({d1, d, third_is_big ? d1 : d, label, h, h, h});
        }
    };
    emit(kBands1biiA, false, "1biiA");
    emit(kBands1biiB, true, "1biiB");
}

void gen_2bi(const CasegenInputs& in, std::vector<CandidateTriple>& out) {
    struct Ratio {
        i64 num, den;
        const std::vector<Band>* bands;
        const char* label;
    };
    const Ratio ratios[] = {{9, 4, &kBands2bi94, "2bi-9/4"},
                            {4, 1, &kBands2bi4, "2bi-4"},
                            {9, 1, &kBands2bi9, "2bi-9"},
                            {16, 1, &kBands2bi16, "2bi-16"}};
    for (const auto& r : ratios) {
        for (i64 d3 : band_discs(in, *r.bands)) {
            if ((-d3) % r.den) continue;
            i64 d1 = d3 / r.den * r.num;
            if (!is_valid_discriminant(d1) || -d1 > in.scan->cap) continue;
            i64 h3 = in.scan->class_number(d3);
            if (in.scan->class_number(d1) != 2 * h3) continue;
            out.push_back({d1, d1, d3, r.label, 2 * h3, 2 * h3, h3});
        }
    }
}

bool fingerprint_subset(i64 d3, i64 d1) {
    auto fp3 = genus_field_fingerprint(d3), fp1 = genus_field_fingerprint(d1);
    return std::includes(fp1.begin(), fp1.end(), fp3.begin(), fp3.end());
}

void gen_2bii(const CasegenInputs& in, std::vector<CandidateTriple>& out) {
    // A: delta1 two-elementary; then Q(x3) sits inside the Galois field Q(x1),
    // so delta3 is two-elementary as well and containment is decided by the
    // genus fingerprints.
    for (const auto& r1 : in.t21.rows) {
        if (r1.h % 2 || r1.h < 4) continue;
        for (const auto& r3 : in.t21.rows) {
            if (r3.h != r1.h / 2 || r3.h < 2) continue;
            if (fundamental_decomposition(r1.delta).fundamental ==
                fundamental_decomposition(r3.delta).fundamental)
                continue;
            if (!fingerprint_subset(r3.delta, r1.delta)) continue;
            out.push_back({r1.delta, r1.delta, r3.delta, "2bii-A", r1.h, r1.h, r3.h});
        }
    }
    // B: delta3 two-elementary, delta1 arbitrary with h1 = 2 h3; the real
    // quadratic subfields of Q(x1) are exactly the genus fingerprint of
    // delta1, so Q(x3) subset Q(x1) is again fingerprint containment.
    for (const auto& r3 : in.t21.rows) {
        if (r3.h < 2) continue;
        i64 h1 = 2 * r3.h;
        i64 f3 = fundamental_decomposition(r3.delta).fundamental;
        i64 cap = h_maximum(in.h_maxima, h1);
        for (i64 d1 : discs_with_class_number(*in.scan, in.h_maxima, h1, cap)) {
            if (fundamental_decomposition(d1).fundamental == f3) continue;
            if (!fingerprint_subset(r3.delta, d1)) continue;
            out.push_back({d1, d1, r3.delta, "2bii-B", h1, h1, r3.h});
        }
    }
}

}  // namespace

CasegenReport generate_candidates(const CasegenInputs& in) {
    std::vector<CandidateTriple> raw;
    gen_1a(in, raw);
    gen_1bi(in, raw);
    gen_1bii(in, raw);
    gen_2bi(in, raw);
    gen_2bii(in, raw);

    auto case_rank = [](const std::string& label) {
        for (size_t i = 0; i < kCaseOrder.size(); ++i)
            if (kCaseOrder[i] == label) return i;
        throw std::logic_error("unknown case label " + label);
    };
    std::stable_sort(raw.begin(), raw.end(), [&](const CandidateTriple& x,
                                                 const CandidateTriple& y) {
        auto kx = std::make_tuple(case_rank(x.case_label), -x.d1, -x.d2, -x.d3);
        auto ky = std::make_tuple(case_rank(y.case_label), -y.d1, -y.d2, -y.d3);
        return kx < ky;
    });

    CasegenReport rep;
    std::set<std::tuple<i64, i64, i64>> seen;
    std::map<std::string, i64> counts;
    for (const auto& c : raw) {
        if (!seen.insert({c.d1, c.d2, c.d3}).second) {
            ++rep.duplicates_removed;
            continue;
        }
        counts[c.case_label]++;
        rep.candidates.push_back(c);
    }
    for (const auto& label : kCaseOrder)
        rep.per_case.emplace_back(label, counts.count(label) ? counts[label] : 0);
    return rep;
}

bool check_candidate(const CandidateTriple& c, const CasegenInputs& in) {
    const auto& scan = *in.scan;
    for (i64 d : {c.d1, c.d2, c.d3})
        if (!is_valid_discriminant(d) || -d > scan.cap) return false;
    if (scan.class_number(c.d1) != c.h1 || scan.class_number(c.d2) != c.h2 ||
        scan.class_number(c.d3) != c.h3)
        return false;
    if (!(c.h1 >= c.h2 && c.h2 >= c.h3 && c.h3 >= 2)) return false;

    auto fund = [](i64 d) { return fundamental_decomposition(d).fundamental; };
    const std::string& L = c.case_label;
    if (L == "1a")
        return c.d1 == c.d2 && c.d2 == c.d3 && c.h1 == c.h2 && c.h2 == c.h3 && c.h1 >= 4 &&
               in_bands(kBands1a, c.h1, -c.d1);
    if (L == "1bi") {
        if (!(c.h1 == c.h2 && c.h2 == c.h3 && c.h3 >= 2)) return false;
        const TableRow* r1 = table_row(in.t41, c.d1);
        const TableRow* r2 = table_row(in.t41, c.d2);
        const TableRow* r3 = table_row(in.t41, c.d3);
        if (!r1 || !r2 || !r3) return false;
        if (!same_key(*r2, r1->h, r1->field) || !same_key(*r3, r1->h, r1->field)) return false;
        return !(fund(c.d1) == fund(c.d2) && fund(c.d2) == fund(c.d3));
    }
    if (L == "1biiA" || L == "1biiB") {
        if (!(c.h1 == c.h2 && c.h2 == c.h3)) return false;
        if (c.d1 != 4 * c.d2 || ((c.d2 % 8) + 8) % 8 != 1) return false;
        if (L == "1biiA" && c.d3 != c.d2) return false;
        if (L == "1biiB" && c.d3 != c.d1) return false;
        return in_bands(L == "1biiA" ? kBands1biiA : kBands1biiB, c.h1, -c.d2);
    }
    if (L.rfind("2bi-", 0) == 0 && L != "2bi") {
        if (!(c.d1 == c.d2 && c.h1 == c.h2 && c.h1 == 2 * c.h3)) return false;
        if (fund(c.d1) != fund(c.d3)) return false;
        if (L == "2bi-9/4")
            return 4 * c.d1 == 9 * c.d3 && in_bands(kBands2bi94, c.h3, -c.d3);
        if (L == "2bi-4") return c.d1 == 4 * c.d3 && in_bands(kBands2bi4, c.h3, -c.d3);
        if (L == "2bi-9") return c.d1 == 9 * c.d3 && in_bands(kBands2bi9, c.h3, -c.d3);
        if (L == "2bi-16") return c.d1 == 16 * c.d3 && in_bands(kBands2bi16, c.h3, -c.d3);
        return false;
    }
    if (L == "2bii-A" || L == "2bii-B") {
        if (!(c.d1 == c.d2 && c.h1 == c.h2 && c.h1 == 2 * c.h3)) return false;
        if (fund(c.d1) == fund(c.d3)) return false;
        if (!table_row(in.t21, c.d3)) return false;
        if (L == "2bii-A" && !table_row(in.t21, c.d1)) return false;
        return fingerprint_subset(c.d3, c.d1);
    }
    return false;
}

void save_candidates(const std::vector<CandidateTriple>& cs, const std::string& path) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["candidates"] = nlohmann::json::array();
    for (const auto& c : cs)
        j["candidates"].push_back({{"d1", c.d1},
                                   {"d2", c.d2},
                                   {"d3", c.d3},
                                   {"case", c.case_label},
                                   {"h1", c.h1},
                                   {"h2", c.h2},
                                   {"h3", c.h3}});
    std::ofstream out(path);
    out << j.dump(1) << "\n";
}

std::vector<CandidateTriple> load_candidates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("missing candidates file: " + path);
    nlohmann::json j;
    in >> j;
    std::vector<CandidateTriple> cs;
    for (const auto& e : j.at("candidates"))
        cs.push_back({e.at("d1").get<i64>(), e.at("d2").get<i64>(), e.at("d3").get<i64>(),
                      e.at("case").get<std::string>(), e.at("h1").get<i64>(),
                      e.at("h2").get<i64>(), e.at("h3").get<i64>()});
    return cs;
}

}  // namespace moduli
