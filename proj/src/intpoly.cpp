#include "moduli/intpoly.hpp"

#include <stdexcept>

namespace moduli {

ZPoly zp_trim(ZPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

long zp_degree(const ZPoly& p) {
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

mpz_class zp_eval(const ZPoly& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

namespace {

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> M) {
    const size_t n = M.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            size_t s = k + 1;
            while (s < n && M[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(M[k], M[s]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[n - 1][n - 1] : -M[n - 1][n - 1];
}

}  // namespace

mpz_class resultant(const ZPoly& a_in, const ZPoly& b_in) {
    ZPoly a = zp_trim(a_in), b = zp_trim(b_in);
    const long n = zp_degree(a), m = zp_degree(b);
    if (n < 0 || m < 0) throw std::invalid_argument("resultant of zero polynomial");
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), a[0].get_mpz_t(), m);
        return r;
    }
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b[0].get_mpz_t(), n);
        return r;
    }
    std::vector<std::vector<mpz_class>> M(n + m, std::vector<mpz_class>(n + m, 0));
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) M[i][i + j] = a[n - j];
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) M[m + i][i + j] = b[m - j];
    return bareiss_det(std::move(M));
}

ZPoly product_polynomial(const ZPoly& P_in, const ZPoly& Q_in) {
    ZPoly P = zp_trim(P_in), Q = zp_trim(Q_in);
    const long dp = zp_degree(P), dq = zp_degree(Q);
    if (dp < 1 || dq < 1) throw std::invalid_argument("inputs must have degree >= 1");
    if (P[dp] != 1 || Q[dq] != 1) throw std::invalid_argument("inputs must be monic");

    // peel off zero roots: any product with a zero root is zero
    long s = 0, u = 0;
    while (P[s] == 0) ++s;
    while (Q[u] == 0) ++u;
    const long zero_roots = s * dq + u * dp - s * u;
    ZPoly P0(P.begin() + s, P.end()), Q0(Q.begin() + u, Q.end());
    const long n = dp - s, m = dq - u;

    ZPoly result;
    if (n == 0 || m == 0) {
        result = ZPoly{1};
    } else {
        // R(t) = Res_x(P0(x), x^m Q0(t/x)) = prod (t - beta*gamma);
        // recover R by exact interpolation at D+1 integer points.
        const long D = n * m;
        std::vector<mpz_class> ts(D + 1), rs(D + 1);
        for (long j = 0; j <= D; ++j) {
            mpz_class t = j;
            ZPoly S(m + 1);
            mpz_class tp = 1;
            for (long k = 0; k <= m; ++k) {  // coeff of x^(m-k) is q_k t^k
                S[m - k] = Q0[k] * tp;
                tp *= t;
            }
            ts[j] = t;
            rs[j] = resultant(P0, S);
        }
        // Newton divided differences over Q (result is an integer polynomial)
        std::vector<mpq_class> dd(D + 1);
        for (long j = 0; j <= D; ++j) dd[j] = mpq_class(rs[j]);
        for (long level = 1; level <= D; ++level)
            for (long j = D; j >= level; --j)
                dd[j] = (dd[j] - dd[j - 1]) / mpq_class(ts[j] - ts[j - level]);
        std::vector<mpq_class> poly{dd[D]};
        for (long j = D - 1; j >= 0; --j) {
            // poly = poly*(t - ts[j]) + dd[j]
            std::vector<mpq_class> next(poly.size() + 1, mpq_class(0));
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= poly[i] * mpq_class(ts[j]);
            }
            next[0] += dd[j];
            poly = std::move(next);
        }
        result.resize(poly.size());
        for (size_t i = 0; i < poly.size(); ++i) {
            poly[i].canonicalize();
            if (poly[i].get_den() != 1)
                throw std::logic_error("product polynomial interpolation not integral");
            result[i] = poly[i].get_num();
        }
        result = zp_trim(std::move(result));
        if (zp_degree(result) != D || result.back() != 1)
            throw std::logic_error("product polynomial is not monic of expected degree");
    }
    ZPoly shifted(zero_roots, 0);
    shifted.insert(shifted.end(), result.begin(), result.end());
    return shifted;
}

}  // namespace moduli
