#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "moduli/casegen.hpp"
#include "moduli/classpoly.hpp"
#include "moduli/intpoly.hpp"
#include "moduli/quadforms.hpp"

namespace moduli {

struct Schedule {
    std::vector<long> rungs = {192, 384, 768, 1536, 3072, 6144};
};

enum class Status { Eliminated, RationalProductFound, Undecided };

std::string to_string(Status s);

struct Witness {
    Form f2, f3;       // with x1 fixed at the dominant form of d1
    mpz_class alpha;   // exactly confirmed integer product
};

struct Verdict {
    Status status = Status::Undecided;
    std::optional<Witness> witness;
    i64 pairs_checked = 0;
    long max_precision_bits = 0;
    double min_int_distance = 0;  // diagnostic, over all screened products
    i64 exact_tier_invocations = 0;
};

class Eliminator {
  public:
    explicit Eliminator(std::string cache_dir = "") : hcp_(std::move(cache_dir)) {}

    Verdict eliminate_triple(const CandidateTriple& c, const Schedule& s);

    /// Integer B with |x1 x2 x3| <= B for any choice of singular moduli of
    /// the candidate's discriminants.
    mpz_class range_bound(const CandidateTriple& c);

    /// True iff n is a product of three roots of H_{d1}, H_{d2}, H_{d3}
    /// (decided exactly via resultants, no floating point).
    bool exact_rational_root_check(const CandidateTriple& c, const mpz_class& n);

    HcpCache& cache() { return hcp_; }

  private:
    const std::vector<SingularModulus>& values(i64 delta, long prec);

    HcpCache hcp_;
    std::mutex mu_;
    std::map<std::pair<i64, long>, std::unique_ptr<std::vector<SingularModulus>>> vals_;
};

/// Work pool over independent candidates; results in input order.
std::vector<Verdict> eliminate_all(Eliminator& el, const std::vector<CandidateTriple>& cs,
                                   const Schedule& s, int jobs);

}  // namespace moduli
