#include "moduli/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace moduli {

std::vector<mpz_class> rational_singular_moduli(HcpCache& cache) {
    std::vector<mpz_class> js;
    for (i64 n = 3; n <= 10000; ++n) {
        if (!is_valid_discriminant(-n) || class_number(-n) != 1) continue;
        js.push_back(-cache.get(-n).constant_term());  // j = -H(0) for degree 1
    }
    if (js.size() != 13) throw std::logic_error("expected 13 rational singular moduli");
    std::sort(js.begin(), js.end());
    return js;
}

std::vector<TrivialTriple> trivial_triples(HcpCache& cache, const ClassNumberScan& scan) {
    std::vector<TrivialTriple> out;
    std::vector<mpz_class> nonzero;
    for (const auto& j : rational_singular_moduli(cache))
        if (j != 0) nonzero.push_back(j);
    if (nonzero.size() != 12) throw std::logic_error("expected 12 nonzero rational j-values");

    // family 1: multisets of three nonzero rational j-values
    for (size_t i = 0; i < nonzero.size(); ++i)
        for (size_t j = i; j < nonzero.size(); ++j)
            for (size_t k = j; k < nonzero.size(); ++k) {
                std::ostringstream d;
                d << nonzero[i] << "," << nonzero[j] << "," << nonzero[k];
                out.push_back({1, d.str(), nonzero[i] * nonzero[j] * nonzero[k]});
            }

    // family 2: rational value times a conjugate degree-2 pair;
    // the pair's product is the constant term of its class polynomial
    std::vector<i64> h2, h3;
    for (i64 n = 3; n <= scan.cap; ++n) {
        if (scan.h[n] == 2) h2.push_back(-n);
        if (scan.h[n] == 3) h3.push_back(-n);
    }
    if (h2.size() != 29 || h3.size() != 25)
        throw std::logic_error("expected 29 degree-2 and 25 degree-3 discriminants");
    for (const auto& r : nonzero)
        for (i64 d : h2) {
            std::ostringstream desc;
            desc << r << ",pair(" << d << ")";
            out.push_back({2, desc.str(), r * cache.get(d).constant_term()});
        }

    // family 3: a full conjugate degree-3 orbit, product -H(0)
    for (i64 d : h3) {
        std::ostringstream desc;
        desc << "orbit(" << d << ")";
        out.push_back({3, desc.str(), -cache.get(d).constant_term()});
    }
    for (const auto& t : out)
        if (t.product == 0) throw std::logic_error("trivial triple with zero product");
    return out;
}

Catalog product_catalog(HcpCache& cache, const ClassNumberScan& scan) {
    Catalog cat;
    cat.triples = trivial_triples(cache, scan);
    std::map<mpz_class, std::vector<const TrivialTriple*>> by_product;
    for (const auto& t : cat.triples) by_product[t.product].push_back(&t);
    for (auto& [prod, producers] : by_product) {
        i64 f1 = 0, f2 = 0;
        for (const auto* t : producers) {
            if (t->family == 1) ++f1;
            if (t->family == 2) ++f2;
        }
        if (f1 == 2) ++cat.family1_pairs;
        if (f1 >= 1 && f2 >= 1) ++cat.cross_12;
        cat.entries.push_back({prod, producers});
    }
    return cat;
}

void save_catalog(const Catalog& cat, const std::string& path) {
    std::ofstream out(path);
    out << "# product\tn_producers\tfamilies\tproducers\n";
    for (const auto& e : cat.entries) {
        std::string fams, descs;
        for (const auto* t : e.producers) {
            if (!fams.empty()) fams += ",";
            fams += std::to_string(t->family);
            if (!descs.empty()) descs += ";";
            descs += t->description;
        }
        out << e.product << "\t" << e.producers.size() << "\t" << fams << "\t" << descs
            << "\n";
    }
}

}  // namespace moduli
