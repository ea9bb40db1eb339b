#pragma once

#include <gmpxx.h>

#include <vector>

namespace moduli {

/// Exact integer polynomial, coefficients ascending: p[i] is the x^i term.
using ZPoly = std::vector<mpz_class>;

ZPoly zp_trim(ZPoly p);
long zp_degree(const ZPoly& p);  // -1 for the zero polynomial
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
mpz_class zp_eval(const ZPoly& p, const mpz_class& x);

/// Resultant of two nonzero integer polynomials (Sylvester determinant via
/// fraction-free Bareiss elimination).
mpz_class resultant(const ZPoly& a, const ZPoly& b);

/// For monic P, Q, the monic integer polynomial of degree deg P * deg Q whose
/// roots (with multiplicity) are all products of a root of P and a root of Q.
ZPoly product_polynomial(const ZPoly& P, const ZPoly& Q);

}  // namespace moduli
