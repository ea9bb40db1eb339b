#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "moduli/classpoly.hpp"
#include "moduli/quadforms.hpp"

namespace moduli {

/// The thirteen integer j-values of class-number-one discriminants,
/// sorted ascending; includes 0 and 1728.
std::vector<mpz_class> rational_singular_moduli(HcpCache& cache);

struct TrivialTriple {
    int family = 0;            // 1, 2, or 3
    std::string description;   // producing values / discriminants
    mpz_class product;
};

/// Family 1: three nonzero rational j-values (364 multisets).
/// Family 2: a nonzero rational j-value and a conjugate h=2 pair (348).
/// Family 3: a full conjugate h=3 orbit (25).
std::vector<TrivialTriple> trivial_triples(HcpCache& cache, const ClassNumberScan& scan);

struct CatalogEntry {
    mpz_class product;
    std::vector<const TrivialTriple*> producers;
};

struct Catalog {
    std::vector<TrivialTriple> triples;
    std::vector<CatalogEntry> entries;  // sorted by product ascending
    i64 family1_pairs = 0;              // products with two family-1 producers
    i64 cross_12 = 0;                   // products shared between families 1 and 2
};

Catalog product_catalog(HcpCache& cache, const ClassNumberScan& scan);

void save_catalog(const Catalog& cat, const std::string& path);

}  // namespace moduli
