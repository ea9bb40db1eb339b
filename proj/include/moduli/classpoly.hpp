#pragma once

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "moduli/ball.hpp"
#include "moduli/quadforms.hpp"

namespace moduli {

struct SingularModulus {
    i64 delta = 0;
    Form form;
    ComplexBall value;
    bool is_dominant = false;  // form.a == 1
};

/// Certified evaluation of j((b + sqrt(delta))/2a).
/// The returned radius satisfies rad <= 2^(-precision_bits/2) * max(1, |center|);
/// otherwise precision_error is thrown.
ComplexBall eval_j(const Form& form, i64 delta, long precision_bits);

/// Evaluate j from the nome directly (also used for series tail constants).
ComplexBall eval_j_from_nome(const ComplexBall& q);

/// One value per reduced form, in reduced_forms() order.
std::vector<SingularModulus> singular_moduli(i64 delta, long precision_bits);

SingularModulus dominant_value(i64 delta, long precision_bits);

/// Exact integer q-expansion j = q^-1 + 744 + 196884 q + ..., derived from
/// the E4^3 / discriminant-function route. coeffs[k] is the coefficient of
/// q^(k-1), for k = 0 .. N+1.
struct JSeries {
    int truncation_order = 0;  // N
    std::vector<mpz_class> coeffs;
    /// Rigorous bound for |sum_{n>N} c_n q^n| given an upper bound on |q|
    /// (requires |q| < 1/16).
    Mag tail_bound(const Mag& q_abs_upper) const;
};
JSeries j_q_expansion(int order);

struct ClassPolynomial {
    i64 delta = 0;
    std::vector<mpz_class> coeffs;  // degree-descending, coeffs[0] == 1
    double rounding_certificate = 0.0;  // max coefficient ball radius, < 1/2

    i64 degree() const { return static_cast<i64>(coeffs.size()) - 1; }
    const mpz_class& constant_term() const { return coeffs.back(); }
};

/// Expand prod (x - x_i) over the singular moduli of delta at escalating
/// precision until every coefficient ball rounds uniquely to an integer.
ClassPolynomial compute_class_polynomial(i64 delta, long start_bits = 0);

/// Single-writer-per-key, many-reader store of class polynomials with an
/// optional on-disk layer at <dir>/<abs(delta)>.txt (one decimal coefficient
/// per line, degree-descending).
class HcpCache {
  public:
    explicit HcpCache(std::string dir = "") : dir_(std::move(dir)) {}
    const ClassPolynomial& get(i64 delta);

  private:
    std::string file_path(i64 delta) const;
    std::string dir_;
    std::mutex mu_;
    std::map<i64, ClassPolynomial> mem_;
};

}  // namespace moduli
