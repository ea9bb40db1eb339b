#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace moduli {

/// Raised when a certified computation cannot reach the requested accuracy.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision real number (thin RAII wrapper over mpfr_t).
/// Arithmetic rounds to nearest at the precision of the destination,
/// which is the larger operand precision unless stated otherwise.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    static Real from(long x, mpfr_prec_t prec) { Real r(prec); mpfr_set_si(r.v_, x, MPFR_RNDN); return r; }
    static Real from(double x, mpfr_prec_t prec) { Real r(prec); mpfr_set_d(r.v_, x, MPFR_RNDN); return r; }
    static Real pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static Real pow2(long e, mpfr_prec_t prec = 64) { Real r(prec); mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN); return r; }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent() const { return mpfr_zero_p(v_) ? mpfr_get_emin() : mpfr_get_exp(v_); }
    std::string str(size_t digits = 20) const;

    mpz_class round_to_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }
    mpz_class floor_to_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }
    mpz_class ceil_to_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDU);
        return z;
    }

    friend Real operator-(const Real& a) { Real r(a.prec()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }
#define MODULI_REAL_BINOP(op, fn)                                           \
    friend Real operator op(const Real& a, const Real& b) {                 \
        Real r(std::max(a.prec(), b.prec()));                               \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                    \
        return r;                                                           \
    }                                                                       \
    friend Real operator op(const Real& a, long b) {                        \
        Real r(a.prec());                                                   \
        fn##_si(r.v_, a.v_, b, MPFR_RNDN);                                  \
        return r;                                                           \
    }
    MODULI_REAL_BINOP(+, mpfr_add)
    MODULI_REAL_BINOP(-, mpfr_sub)
    MODULI_REAL_BINOP(*, mpfr_mul)
    MODULI_REAL_BINOP(/, mpfr_div)
#undef MODULI_REAL_BINOP

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }

    friend Real sqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real log(const Real& a) { Real r(a.prec()); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real sin(const Real& a) { Real r(a.prec()); mpfr_sin(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real cos(const Real& a) { Real r(a.prec()); mpfr_cos(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real abs(const Real& a) { Real r(a.prec()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
    friend Real min(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec())); mpfr_min(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }

  private:
    mpfr_t v_;
};

/// Nonnegative magnitude bound: a low-precision value rounded upward in
/// every operation, so it always dominates the true quantity it tracks.
class Mag {
  public:
    Mag() { mpfr_init2(m_, kPrec); mpfr_set_zero(m_, 1); }
    explicit Mag(double x) { mpfr_init2(m_, kPrec); mpfr_set_d(m_, x < 0 ? -x : x, MPFR_RNDU); }
    Mag(const Mag& o) { mpfr_init2(m_, kPrec); mpfr_set(m_, o.m_, MPFR_RNDU); }
    Mag(Mag&& o) noexcept { mpfr_init2(m_, kPrec); mpfr_swap(m_, o.m_); }
    Mag& operator=(const Mag& o) { mpfr_set(m_, o.m_, MPFR_RNDU); return *this; }
    Mag& operator=(Mag&& o) noexcept { mpfr_swap(m_, o.m_); return *this; }
    ~Mag() { mpfr_clear(m_); }

    /// Upper bound of |x|.
    static Mag upper_abs(const Real& x) { Mag m; mpfr_abs(m.m_, x.raw(), MPFR_RNDU); return m; }
    static Mag pow2(long e) { Mag m; mpfr_set_ui_2exp(m.m_, 1, e, MPFR_RNDU); return m; }

    bool is_zero() const { return mpfr_zero_p(m_); }
    double to_double() const { return mpfr_get_d(m_, MPFR_RNDU); }
    mpfr_srcptr raw() const { return m_; }

    friend Mag operator+(const Mag& a, const Mag& b) { Mag r; mpfr_add(r.m_, a.m_, b.m_, MPFR_RNDU); return r; }
    friend Mag operator*(const Mag& a, const Mag& b) { Mag r; mpfr_mul(r.m_, a.m_, b.m_, MPFR_RNDU); return r; }
    friend Mag operator*(const Mag& a, unsigned long b) { Mag r; mpfr_mul_ui(r.m_, a.m_, b, MPFR_RNDU); return r; }
    /// Upper bound of a/b assuming b underestimates its denominator.
    friend Mag div_upper(const Mag& a, const Real& b_lower) {
        Mag r; mpfr_div(r.m_, a.m_, b_lower.raw(), MPFR_RNDU); return r;
    }
    friend Mag expm1_upper(const Mag& a) { Mag r; mpfr_expm1(r.m_, a.m_, MPFR_RNDU); return r; }
    friend Mag pow_upper(const Mag& a, unsigned long n) { Mag r; mpfr_pow_ui(r.m_, a.m_, n, MPFR_RNDU); return r; }
    friend bool operator<(const Mag& a, const Mag& b) { return mpfr_cmp(a.m_, b.m_) < 0; }
    friend bool operator<(const Mag& a, const Real& b) { return mpfr_cmp(a.m_, b.raw()) < 0; }

    static constexpr mpfr_prec_t kPrec = 32;

  private:
    mpfr_t m_;
};

/// Complex ball: the represented exact value lies within distance `rad`
/// (in the complex plane) of center re + i*im.
class ComplexBall {
  public:
    ComplexBall() = default;
    explicit ComplexBall(mpfr_prec_t prec) : re_(prec), im_(prec), prec_(prec) {}
    ComplexBall(Real re, Real im, Mag rad)
        : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)), prec_(re_.prec()) {}

    static ComplexBall exact(long x, mpfr_prec_t prec) {
        return {Real::from(x, prec), Real(prec), Mag{}};
    }
    static ComplexBall one_with_radius(const Mag& rad, mpfr_prec_t prec) {
        return {Real::from(1L, prec), Real(prec), rad};
    }

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Mag& rad() const { return rad_; }
    mpfr_prec_t prec() const { return prec_; }

    void inflate(const Mag& extra) { rad_ = rad_ + extra; }

    /// Upper bound of |center| + rad >= |value|.
    Mag mag_upper() const;
    /// Lower bound of |value| (clamped at 0).
    Real mag_lower() const;

    ComplexBall operator+(const ComplexBall& o) const;
    ComplexBall operator-(const ComplexBall& o) const;
    ComplexBall operator*(const ComplexBall& o) const;
    ComplexBall operator/(const ComplexBall& o) const;  // throws precision_error if o may contain 0
    ComplexBall operator-() const;
    ComplexBall conj() const;
    ComplexBall pow(unsigned long n) const;
    ComplexBall mul_int(long k) const;

    /// True iff the ball certifiably excludes every real integer.
    bool excludes_all_integers() const;
    /// Integer range [lo, hi] whose members might lie in the ball
    /// (empty when excludes_all_integers()).
    bool possible_integers(mpz_class& lo, mpz_class& hi) const;
    /// True iff the ball certifiably contains no point of the ball `o`.
    bool disjoint_from(const ComplexBall& o) const;

    /// Distance from the center to the nearest integer point on the real
    /// axis (diagnostic, not certified).
    double center_distance_to_integers() const;

  private:
    Mag center_rounding_slack(int ulps) const;

    Real re_, im_;
    Mag rad_;
    mpfr_prec_t prec_ = 128;
};

}  // namespace moduli
