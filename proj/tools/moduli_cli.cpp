#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moduli/bounds.hpp"
#include "moduli/casegen.hpp"
#include "moduli/catalog.hpp"
#include "moduli/classpoly.hpp"
#include "moduli/eliminate.hpp"
#include "moduli/quadforms.hpp"
#include "moduli/tables.hpp"

using json = nlohmann::json;
using namespace moduli;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? v : fallback;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json verdict_json(const CandidateTriple& c, const Verdict& v) {
    json j{{"d1", c.d1},
           {"d2", c.d2},
           {"d3", c.d3},
           {"case", c.case_label},
           {"status", to_string(v.status)},
           {"pairs_checked", v.pairs_checked},
           {"max_precision_bits", v.max_precision_bits},
           {"exact_tier_invocations", v.exact_tier_invocations}};
    j["min_int_distance"] = std::isfinite(v.min_int_distance) ? v.min_int_distance : -1.0;
    if (v.witness) {
        const auto& w = *v.witness;
        j["witness"] = {{"f2", {w.f2.a, w.f2.b, w.f2.c}},
                        {"f3", {w.f3.a, w.f3.b, w.f3.c}},
                        {"alpha", w.alpha.get_str()}};
    }
    return j;
}

struct EliminationSummary {
    json verdicts = json::array();
    std::map<std::string, double> case_seconds;
    i64 eliminated = 0, undecided = 0, found = 0;
};

EliminationSummary run_elimination(Eliminator& el, const std::vector<CandidateTriple>& cs,
                                   const Schedule& sched, int jobs) {
    EliminationSummary sum;
    // batch by case so per-case timing stays meaningful under parallelism
    std::map<std::string, std::vector<CandidateTriple>> by_case;
    for (const auto& c : cs) by_case[c.case_label].push_back(c);
    for (const auto& label : kCaseOrder) {
        auto it = by_case.find(label);
        if (it == by_case.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        auto vs = eliminate_all(el, it->second, sched, jobs);
        sum.case_seconds[label] = seconds_since(t0);
        for (size_t i = 0; i < vs.size(); ++i) {
            sum.verdicts.push_back(verdict_json(it->second[i], vs[i]));
            switch (vs[i].status) {
                case Status::Eliminated: ++sum.eliminated; break;
                case Status::Undecided: ++sum.undecided; break;
                case Status::RationalProductFound: ++sum.found; break;
            }
        }
    }
    return sum;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification pipeline for rational products of three singular moduli"};
    app.require_subcommand(1);

    std::string data_dir = env_or("MODULI_DATA_DIR", "data");
    std::string cache_dir = env_or("MODULI_CACHE_DIR", "cache/hcp");
    app.add_option("--data-dir", data_dir, "directory with the bundled tables");
    app.add_option("--cache-dir", cache_dir, "class polynomial cache directory");

    i64 delta = 0;
    auto* forms_cmd = app.add_subcommand("forms", "reduced forms of a discriminant");
    forms_cmd->add_option("-d,--delta", delta, "discriminant (negative)")->required();

    auto* classnum_cmd = app.add_subcommand("classnum", "class number queries");
    i64 cn_delta = 0, cn_list_h = 0, cn_cap = 10000;
    classnum_cmd->add_option("-d,--delta", cn_delta, "discriminant");
    classnum_cmd->add_option("--list-h", cn_list_h, "list all discriminants with this class number");
    classnum_cmd->add_option("--cap", cn_cap, "scan cap for --list-h");

    auto* hcp_cmd = app.add_subcommand("hcp", "Hilbert class polynomial");
    i64 hcp_delta = 0;
    hcp_cmd->add_option("-d,--delta", hcp_delta, "discriminant")->required();

    auto* thr_cmd = app.add_subcommand("thresholds", "class-number/discriminant cutoff table");

    auto* casegen_cmd = app.add_subcommand("casegen", "generate candidate discriminant triples");
    std::string cg_out = "candidates.json";
    i64 scan_cap = 300000;
    casegen_cmd->add_option("--out", cg_out, "output JSON path");
    casegen_cmd->add_option("--scan-cap", scan_cap, "bulk class-number scan cap");

    auto* elim_cmd = app.add_subcommand("eliminate", "eliminate candidate triples");
    std::string el_in = "candidates.json", el_out = "verdicts.json";
    i64 max_h3 = 0;
    int jobs = 1;
    elim_cmd->add_option("--candidates", el_in, "candidates JSON path");
    elim_cmd->add_option("--out", el_out, "verdicts JSON path");
    elim_cmd->add_option("--max-h3", max_h3, "only candidates with h3 <= N");
    elim_cmd->add_option("--jobs", jobs, "worker threads");

    auto* cat_cmd = app.add_subcommand("catalog", "catalog of trivial-triple products");
    std::string cat_out = "products.tsv";
    cat_cmd->add_option("--out", cat_out, "output TSV path");

    auto* run_cmd = app.add_subcommand("run", "full pipeline: thresholds, casegen, eliminate, catalog");
    std::string run_out = "report.json";
    i64 run_max_h3 = 0;
    int run_jobs = 1;
    run_cmd->add_option("--out", run_out, "report JSON path");
    run_cmd->add_option("--max-h3", run_max_h3, "restrict elimination to h3 <= N");
    run_cmd->add_option("--jobs", run_jobs, "worker threads");

    auto* gen_cmd = app.add_subcommand("gen-data", "regenerate the bundled data tables");
    i64 gen_cap = 300000, gen_max_h = 32;
    gen_cmd->add_option("--scan-cap", gen_cap, "bulk class-number scan cap");
    gen_cmd->add_option("--max-h", gen_max_h, "largest class number in h-maxima table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*forms_cmd) {
            for (const auto& f : reduced_forms(delta))
                std::cout << f.a << "\t" << f.b << "\t" << f.c << "\n";
            return 0;
        }
        if (*classnum_cmd) {
            if (cn_delta != 0) {
                std::cout << class_number(cn_delta) << "\n";
            } else if (cn_list_h > 0) {
                auto scan = scan_class_numbers(cn_cap);
                for (i64 d : scan.with_class_number(cn_list_h)) std::cout << d << "\n";
            } else {
                std::cerr << "classnum: need -d or --list-h\n";
                return 1;
            }
            return 0;
        }
        if (*hcp_cmd) {
            HcpCache cache(cache_dir);
            for (const auto& c : cache.get(hcp_delta).coeffs) std::cout << c << "\n";
            return 0;
        }
        if (*thr_cmd) {
            std::cout << "case\tm1\tm2\tm3\tk\tcutoff\n";
            for (const auto& row : compute_thresholds())
                std::cout << row.spec.label << "\t" << row.spec.m1 << "\t" << row.spec.m2
                          << "\t" << row.spec.m3 << "\t" << row.spec.k << "\t" << row.cutoff
                          << "\n";
            std::cout << "# h <= 13 forces |delta| <= " << kMaxAbsDeltaClassNumber13
                      << " (tighter than the analytic 30339; enumeration uses it)\n";
            return 0;
        }
        if (*casegen_cmd) {
            auto scan = scan_class_numbers(scan_cap);
            auto inputs = load_casegen_inputs(data_dir, scan);
            if (!verify_case_emptiness_2biiC(scan)) throw data_error("case 2(b)(ii)(C) not empty");
            auto rep = generate_candidates(inputs);
            save_candidates(rep.candidates, cg_out);
            std::cout << "case\tcount\n";
            for (const auto& [label, count] : rep.per_case)
                std::cout << label << "\t" << count << "\n";
            std::cout << "total\t" << rep.candidates.size()
                      << "\t(reference count 2888, difference "
                      << static_cast<i64>(rep.candidates.size()) - 2888
                      << "; the reference counts case representatives, not deduplicated "
                         "unordered triples)\n";
            return 0;
        }
        if (*elim_cmd) {
            auto cs = load_candidates(el_in);
            if (max_h3 > 0) {
                std::erase_if(cs, [&](const CandidateTriple& c) { return c.h3 > max_h3; });
            }
            Eliminator el(cache_dir);
            Schedule sched;
            auto t0 = std::chrono::steady_clock::now();
            auto sum = run_elimination(el, cs, sched, jobs);
            json j{{"schema_version", 1},
                   {"proof",
                    {{"verdicts", sum.verdicts},
                     {"eliminated", sum.eliminated},
                     {"undecided", sum.undecided},
                     {"rational_product_found", sum.found}}},
                   {"telemetry",
                    {{"jobs", jobs}, {"seconds", seconds_since(t0)},
                     {"case_seconds", sum.case_seconds}}}};
            write_json(el_out, j);
            std::cout << "eliminated " << sum.eliminated << ", undecided " << sum.undecided
                      << ", rational products " << sum.found << "\n";
            return (sum.undecided || sum.found) ? 2 : 0;
        }
        if (*cat_cmd) {
            HcpCache cache(cache_dir);
            auto scan = scan_class_numbers(10000);
            auto cat = product_catalog(cache, scan);
            save_catalog(cat, cat_out);
            std::cout << "triples " << cat.triples.size() << ", distinct products "
                      << cat.entries.size() << ", family-1 pairs " << cat.family1_pairs
                      << ", family-1/2 overlaps " << cat.cross_12 << "\n";
            return 0;
        }
        if (*run_cmd) {
            auto t0 = std::chrono::steady_clock::now();
            json report{{"schema_version", 1}};
            json proof, telemetry;

            json thr = json::array();
            for (const auto& row : compute_thresholds())
                thr.push_back({{"case", row.spec.label},
                               {"m", {row.spec.m1, row.spec.m2, row.spec.m3}},
                               {"k", row.spec.k},
                               {"cutoff", row.cutoff}});
            proof["thresholds"] = thr;

            auto scan = scan_class_numbers(scan_cap);
            auto inputs = load_casegen_inputs(data_dir, scan);
            if (!verify_case_emptiness_2biiC(scan)) throw data_error("case 2(b)(ii)(C) not empty");
            auto rep = generate_candidates(inputs);
            json per_case;
            for (const auto& [label, count] : rep.per_case) per_case[label] = count;
            proof["candidates"] = {{"per_case", per_case},
                                   {"total", rep.candidates.size()},
                                   {"reference_total", 2888},
                                   {"duplicates_removed", rep.duplicates_removed},
                                   {"difference_vs_reference",
                                    static_cast<i64>(rep.candidates.size()) - 2888}};

            auto cs = rep.candidates;
            if (run_max_h3 > 0)
                std::erase_if(cs, [&](const CandidateTriple& c) { return c.h3 > run_max_h3; });
            proof["elimination_subset_h3_cap"] = run_max_h3;
            proof["candidates_eliminating"] = cs.size();

            Eliminator el(cache_dir);
            Schedule sched;
            auto t1 = std::chrono::steady_clock::now();
            auto sum = run_elimination(el, cs, sched, run_jobs);
            proof["verdicts"] = sum.verdicts;
            proof["eliminated"] = sum.eliminated;
            proof["undecided"] = sum.undecided;
            proof["rational_product_found"] = sum.found;

            HcpCache cat_cache(cache_dir);
            auto cat = product_catalog(cat_cache, scan);
            proof["catalog"] = {{"distinct_products", cat.entries.size()},
                                {"trivial_triples", cat.triples.size()},
                                {"family1_pairs", cat.family1_pairs},
                                {"family12_overlaps", cat.cross_12}};

            telemetry["jobs"] = run_jobs;
            telemetry["elimination_seconds"] = seconds_since(t1);
            telemetry["case_seconds"] = sum.case_seconds;
            telemetry["total_seconds"] = seconds_since(t0);
            report["proof"] = proof;
            report["telemetry"] = telemetry;
            write_json(run_out, report);

            bool ok = sum.undecided == 0 && sum.found == 0;
            std::cout << (ok ? "all candidates eliminated" : "PROOF RUN FAILED") << " ("
                      << sum.eliminated << "/" << cs.size() << " eliminated)\n";
            return ok ? 0 : 2;
        }
        if (*gen_cmd) {
            auto scan = scan_class_numbers(gen_cap);
            auto t21 = build_table_2_1(scan);
            auto t41 = build_table_4_1(t21);
            validate_table_2_1(t21, scan);
            validate_table_4_1(t41, t21);
            save_table(t21, data_dir + "/table-2_1.tsv");
            save_table(t41, data_dir + "/table-4_1.tsv");
            save_h_maxima(build_h_maxima(scan, gen_max_h), gen_cap, data_dir + "/h-maxima.tsv");
            std::cout << "wrote " << t21.rows.size() << " rows (table 2.1), " << t41.rows.size()
                      << " rows (table 4.1), h-maxima up to h=" << gen_max_h << "\n";
            return 0;
        }
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
