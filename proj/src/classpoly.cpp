#include "moduli/classpoly.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace moduli {

namespace {

// sigma_3(n) for n = 1..N
std::vector<unsigned long> sigma3_sieve(long N) {
    std::vector<unsigned long> s(N + 1, 0);
    for (long d = 1; d <= N; ++d) {
        const unsigned long d3 = static_cast<unsigned long>(d) * d * d;
        for (long n = d; n <= N; n += d) s[n] += d3;
    }
    return s;
}

/// Certified nome q = e^{pi i b / a} e^{-pi sqrt(|delta|)/a} at working
/// precision pw. All center operations are correctly rounded; the composite
/// relative error is below 2^(-pw+17) (the exponent pi*sqrt|delta|/a is at
/// most ~2100 for the discriminants in range), so a radius of |q|*2^(-pw+20)
/// encloses the exact nome.
ComplexBall nome(i64 delta, const Form& f, mpfr_prec_t pw) {
    Real s = sqrt(Real::from(static_cast<long>(-delta), pw));
    Real pi = Real::pi(pw);
    Real u = pi * s / static_cast<long>(f.a);
    Real m = exp(-u);
    Real theta = pi * static_cast<long>(f.b) / static_cast<long>(f.a);
    Real re = m * cos(theta);
    Real im = m * sin(theta);
    Mag rad = Mag::upper_abs(m) * Mag::pow2(-pw + 20);
    return {re, im, rad};
}

long series_length(const Mag& q_upper, mpfr_prec_t pw) {
    // smallest N with |q|^(N+1) < 2^-(pw+30)
    Real l2(64);
    mpfr_log2(l2.raw(), q_upper.raw(), MPFR_RNDU);  // log2|q| < 0, rounded toward 0
    double bits_per_term = -l2.to_double();
    if (bits_per_term <= 0.5) throw precision_error("nome too close to 1");
    long N = static_cast<long>((pw + 30) / bits_per_term) + 2;
    if (N > 200000) throw precision_error("series cap exceeded");
    return N;
}

}  // namespace

ComplexBall eval_j_from_nome(const ComplexBall& q) {
    const mpfr_prec_t pw = q.prec();
    const Mag qu = q.mag_upper();
    if (!(qu < Real::from(0.05, 64))) throw precision_error("|q| too large for the series route");
    const long N = series_length(qu, pw);
    const auto sig3 = sigma3_sieve(N);

    ComplexBall e4 = ComplexBall::exact(1, pw);
    ComplexBall prod = ComplexBall::exact(1, pw);  // prod (1 - q^n)
    const ComplexBall one = ComplexBall::exact(1, pw);
    ComplexBall qn = ComplexBall::exact(1, pw);
    for (long n = 1; n <= N; ++n) {
        qn = qn * q;
        e4 = e4 + qn.mul_int(static_cast<long>(240 * sig3[n]));
        prod = prod * (one - qn);
    }
    // E4 tail: 240 sum_{n>N} sigma3(n)|q|^n <= 291(N+1)^3 |q|^(N+1)/(1-8|q|)
    {
        Mag qN1 = pow_upper(qu, static_cast<unsigned long>(N + 1));
        Mag cube = Mag(static_cast<double>(N + 1));
        cube = cube * cube * cube;
        Real denom = Real::from(1L, 64) - Real::from(8.0, 64) * Real::from(qu.to_double(), 64);
        e4.inflate(div_upper(Mag(291.0) * cube * qN1, denom));
    }
    // product tail: |log prod_{n>N}(1-q^n)| <= |q|^(N+1)/(1-|q|)^2
    {
        Mag qN1 = pow_upper(qu, static_cast<unsigned long>(N + 1));
        Real omq = Real::from(1L, 64) - Real::from(qu.to_double(), 64);
        Mag s = div_upper(qN1, omq * omq);
        prod = prod * ComplexBall::one_with_radius(expm1_upper(s), pw);
    }
    ComplexBall den = q * prod.pow(24);
    return e4.pow(3) / den;
}

ComplexBall eval_j(const Form& form, i64 delta, long precision_bits) {
    if (precision_bits < 64) throw std::invalid_argument("precision_bits must be >= 64");
    const mpfr_prec_t pw = precision_bits + 40;
    ComplexBall j = eval_j_from_nome(nome(delta, form, pw));
    // contract: rad <= 2^(-p/2) * max(1, |center|)
    Real bound = Real::pow2(-precision_bits / 2, 64);
    Real mag(64);
    mpfr_hypot(mag.raw(), j.re().raw(), j.im().raw(), MPFR_RNDD);
    if (mag > Real::from(1L, 64)) bound = bound * mag;
    if (!(j.rad() < bound)) throw precision_error("requested j radius unattainable");
    return j;
}

std::vector<SingularModulus> singular_moduli(i64 delta, long precision_bits) {
    std::vector<SingularModulus> out;
    for (const Form& f : reduced_forms(delta))
        out.push_back({delta, f, eval_j(f, delta, precision_bits), f.a == 1});
    return out;
}

SingularModulus dominant_value(i64 delta, long precision_bits) {
    auto forms = forms_with_leading(delta, 1);
    return {delta, forms.front(), eval_j(forms.front(), delta, precision_bits), true};
}

JSeries j_q_expansion(int order) {
    const int N = order;
    // delta function: q prod (1-q^n)^24 = sum_{n>=1} tau(n) q^n
    std::vector<mpz_class> unit{1};  // prod (1-q^n)^24 / leading, truncated at q^N
    auto mul_trunc = [&](std::vector<mpz_class>& a, long n, int e) {
        // a *= (1 - q^n)^e, truncated at degree N
        for (int rep = 0; rep < e; ++rep) {
            std::vector<mpz_class> b(std::min<size_t>(a.size() + n, N + 1), 0);
            for (size_t i = 0; i < a.size(); ++i) {
                b[i] += a[i];
                if (i + n < b.size()) b[i + n] -= a[i];
            }
            a = std::move(b);
        }
    };
    for (long n = 1; n <= N; ++n) mul_trunc(unit, n, 24);
    unit.resize(N + 1, 0);

    // E4 = 1 + 240 sum sigma3(n) q^n
    auto sig3 = sigma3_sieve(N);
    std::vector<mpz_class> e4(N + 1, 0);
    e4[0] = 1;
    for (long n = 1; n <= N; ++n) e4[n] = 240 * mpz_class(sig3[n]);
    std::vector<mpz_class> num(N + 1, 0);  // E4^3 truncated
    {
        std::vector<mpz_class> t(N + 1, 0);
        for (int i = 0; i <= N; ++i)
            for (int k = 0; i + k <= N; ++k) t[i + k] += e4[i] * e4[k];
        for (int i = 0; i <= N; ++i)
            for (int k = 0; i + k <= N; ++k) num[i + k] += t[i] * e4[k];
    }
    // j*q = E4^3 / unit: exact series division (unit has leading 1)
    std::vector<mpz_class> jq(N + 2, 0);
    for (int n = 0; n <= N; ++n) {
        mpz_class c = num[n];
        for (int k = 1; k <= n; ++k) c -= unit[k] * jq[n - k];
        jq[n] = c;
    }
    JSeries s;
    s.truncation_order = N;
    s.coeffs = std::move(jq);
    s.coeffs.resize(N + 2);
    return s;
}

Mag JSeries::tail_bound(const Mag& q_abs_upper) const {
    // All c_n are positive, so c_n <= F(x) x^-n for F(x) = sum c_n x^n,
    // evaluated rigorously at x = 1/16 via the certified j route.
    static const double kF16 = [] {
        ComplexBall x(Real::from(1.0 / 16, 128), Real(128), Mag{});
        return eval_j_from_nome(x).mag_upper().to_double() * (1 + 1e-9);
    }();
    Mag r = q_abs_upper * Mag(16.0);
    if (!(r < Real::from(1L, 64))) throw precision_error("tail bound needs |q| < 1/16");
    Real denom = Real::from(1L, 64) - Real::from(r.to_double(), 64);
    return div_upper(Mag(kF16) * pow_upper(r, truncation_order + 1), denom);
}

ClassPolynomial compute_class_polynomial(i64 delta, long start_bits) {
    const auto forms = reduced_forms(delta);
    const i64 h = static_cast<i64>(forms.size());
    long p = start_bits;
    if (p <= 0) {
        double sd = std::sqrt(static_cast<double>(-delta));
        p = std::max<long>(128, static_cast<long>(3 * 3.14159265358979 * sd / 0.69314718) + 64);
    }
    long bad_index = -1;
    for (; p <= (1L << 20); p *= 2) {
        std::vector<SingularModulus> xs;
        try {
            xs = singular_moduli(delta, p);
        } catch (const precision_error&) {
            continue;
        }
        // expand prod (x - x_i), coefficients ascending
        std::vector<ComplexBall> poly{ComplexBall::exact(1, p + 40)};
        for (const auto& x : xs) {
            std::vector<ComplexBall> next(poly.size() + 1, ComplexBall(p + 40));
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] = next[i + 1] + poly[i];
                next[i] = next[i] - poly[i] * x.value;
            }
            poly = std::move(next);
        }
        ClassPolynomial out;
        out.delta = delta;
        out.coeffs.resize(h + 1);
        double cert = 0.0;
        bool ok = true;
        const Real half = Real::from(0.5, 64);
        for (i64 i = 0; i <= h && ok; ++i) {
            const ComplexBall& c = poly[h - i];  // coefficient of x^(h-i), descending
            if (!(c.rad() < half) || mpfr_cmpabs(c.im().raw(), c.rad().raw()) > 0) {
                ok = false;
                bad_index = i;
                break;
            }
            Real n(c.prec());
            mpfr_round(n.raw(), c.re().raw());
            Real err = abs(c.re() - n);
            if (!(Mag::upper_abs(err) + Mag{} < half)) { ok = false; bad_index = i; break; }
            out.coeffs[i] = n.round_to_integer();
            cert = std::max(cert, c.rad().to_double());
        }
        if (!ok) continue;
        if (out.coeffs[0] != 1) continue;  // precision artifact; escalate
        out.rounding_certificate = cert;
        return out;
    }
    throw precision_error("class polynomial certification failed at coefficient index " +
                          std::to_string(bad_index) + " for delta " + std::to_string(delta));
}

std::string HcpCache::file_path(i64 delta) const {
    return dir_ + "/" + std::to_string(-delta) + ".txt";
}

const ClassPolynomial& HcpCache::get(i64 delta) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mem_.find(delta);
    if (it != mem_.end()) return it->second;

    if (!dir_.empty()) {
        std::ifstream in(file_path(delta));
        if (in) {
            ClassPolynomial p;
            p.delta = delta;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                p.coeffs.emplace_back(line);
            }
            if (!p.coeffs.empty() && p.coeffs[0] == 1 &&
                p.degree() == class_number(delta)) {
                return mem_.emplace(delta, std::move(p)).first->second;
            }
        }
    }
    ClassPolynomial p = compute_class_polynomial(delta);
    if (!dir_.empty()) {
        std::filesystem::create_directories(dir_);
        const std::string tmp = file_path(delta) + ".tmp";
        {
            std::ofstream out(tmp);
            for (const auto& c : p.coeffs) out << c.get_str() << "\n";
        }
        std::filesystem::rename(tmp, file_path(delta));
    }
    return mem_.emplace(delta, std::move(p)).first->second;
}

}  // namespace moduli
