#include "moduli/ball.hpp"

#include <algorithm>
#include <cmath>

namespace moduli {

std::string Real::str(size_t digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Mag ComplexBall::center_rounding_slack(int ulps) const {
    if (re_.is_zero() && im_.is_zero()) return Mag{};
    long e = std::max(re_.exponent(), im_.exponent());
    return Mag::pow2(e - prec_ + ulps);
}

Mag ComplexBall::mag_upper() const {
    return Mag::upper_abs(re_) + Mag::upper_abs(im_) + rad_;
}

Real ComplexBall::mag_lower() const {
    Real lo(64);
    mpfr_hypot(lo.raw(), re_.raw(), im_.raw(), MPFR_RNDD);
    mpfr_sub(lo.raw(), lo.raw(), rad_.raw(), MPFR_RNDD);
    // one ulp of slack for the rounding of the centers themselves
    Real slack(64);
    mpfr_set(slack.raw(), center_rounding_slack(2).raw(), MPFR_RNDU);
    mpfr_sub(lo.raw(), lo.raw(), slack.raw(), MPFR_RNDD);
    if (lo.sign() < 0) mpfr_set_zero(lo.raw(), 1);
    return lo;
}

ComplexBall ComplexBall::operator+(const ComplexBall& o) const {
    ComplexBall r(std::max(prec_, o.prec_));
    int t = mpfr_add(r.re_.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    t |= mpfr_add(r.im_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    r.rad_ = rad_ + o.rad_;
    if (t) r.rad_ = r.rad_ + r.center_rounding_slack(2);
    return r;
}

ComplexBall ComplexBall::operator-(const ComplexBall& o) const {
    ComplexBall r(std::max(prec_, o.prec_));
    int t = mpfr_sub(r.re_.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    t |= mpfr_sub(r.im_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    r.rad_ = rad_ + o.rad_;
    if (t) r.rad_ = r.rad_ + r.center_rounding_slack(2);
    return r;
}

ComplexBall ComplexBall::operator*(const ComplexBall& o) const {
    ComplexBall r(std::max(prec_, o.prec_));
    // fused forms: a single rounding per component
    int t = mpfr_fmms(r.re_.raw(), re_.raw(), o.re_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    t |= mpfr_fmma(r.im_.raw(), re_.raw(), o.im_.raw(), im_.raw(), o.re_.raw(), MPFR_RNDN);
    Mag m1 = Mag::upper_abs(re_) + Mag::upper_abs(im_);
    Mag m2 = Mag::upper_abs(o.re_) + Mag::upper_abs(o.im_);
    r.rad_ = m1 * o.rad_ + m2 * rad_ + rad_ * o.rad_;
    if (t) r.rad_ = r.rad_ + r.center_rounding_slack(3);
    return r;
}

ComplexBall ComplexBall::operator/(const ComplexBall& o) const {
    // lower bound for |center of o|
    Real wlo(64);
    mpfr_hypot(wlo.raw(), o.re_.raw(), o.im_.raw(), MPFR_RNDD);
    mpfr_sub(wlo.raw(), wlo.raw(), o.rad_.raw(), MPFR_RNDD);
    if (wlo.sign() <= 0)
        throw precision_error("division by a ball that may contain zero");

    const mpfr_prec_t p = std::max(prec_, o.prec_);
    ComplexBall r(p);
    Real den(p);
    mpfr_fmma(den.raw(), o.re_.raw(), o.re_.raw(), o.im_.raw(), o.im_.raw(), MPFR_RNDN);
    Real t(p);
    mpfr_fmma(t.raw(), re_.raw(), o.re_.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_div(r.re_.raw(), t.raw(), den.raw(), MPFR_RNDN);
    mpfr_fmms(t.raw(), im_.raw(), o.re_.raw(), re_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_div(r.im_.raw(), t.raw(), den.raw(), MPFR_RNDN);

    // |z/w - z1/w1| <= (r1 + r2 |z1/w1|) / (|w1| - r2)
    Mag mq = Mag::upper_abs(r.re_) + Mag::upper_abs(r.im_) + r.center_rounding_slack(4);
    Mag err = div_upper(rad_ + o.rad_ * mq, wlo);
    r.rad_ = err + r.center_rounding_slack(5);
    return r;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall r(*this);
    mpfr_neg(r.re_.raw(), r.re_.raw(), MPFR_RNDN);
    mpfr_neg(r.im_.raw(), r.im_.raw(), MPFR_RNDN);
    return r;
}

ComplexBall ComplexBall::conj() const {
    ComplexBall r(*this);
    mpfr_neg(r.im_.raw(), r.im_.raw(), MPFR_RNDN);
    return r;
}

ComplexBall ComplexBall::pow(unsigned long n) const {
    ComplexBall acc = ComplexBall::exact(1, prec_);
    ComplexBall base = *this;
    while (n) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return acc;
}

ComplexBall ComplexBall::mul_int(long k) const {
    ComplexBall r(prec_);
    int t = mpfr_mul_si(r.re_.raw(), re_.raw(), k, MPFR_RNDN);
    t |= mpfr_mul_si(r.im_.raw(), im_.raw(), k, MPFR_RNDN);
    r.rad_ = rad_ * Mag(static_cast<double>(std::llabs(k)));
    if (t) r.rad_ = r.rad_ + r.center_rounding_slack(2);
    return r;
}

bool ComplexBall::excludes_all_integers() const {
    mpz_class lo, hi;
    return !possible_integers(lo, hi);
}

bool ComplexBall::possible_integers(mpz_class& lo, mpz_class& hi) const {
    // off the real axis entirely?
    if (mpfr_cmpabs(im_.raw(), rad_.raw()) > 0) return false;
    Real a(prec_ + 32), b(prec_ + 32);
    mpfr_sub(a.raw(), re_.raw(), rad_.raw(), MPFR_RNDD);
    mpfr_add(b.raw(), re_.raw(), rad_.raw(), MPFR_RNDU);
    lo = a.ceil_to_integer();
    hi = b.floor_to_integer();
    return lo <= hi;
}

bool ComplexBall::disjoint_from(const ComplexBall& o) const {
    const mpfr_prec_t p = std::max(prec_, o.prec_);
    Real dre(p), dim(p), dist(64);
    mpfr_sub(dre.raw(), re_.raw(), o.re_.raw(), MPFR_RNDN);
    mpfr_sub(dim.raw(), im_.raw(), o.im_.raw(), MPFR_RNDN);
    mpfr_hypot(dist.raw(), dre.raw(), dim.raw(), MPFR_RNDD);
    Real slack(64);
    long e = std::max(std::max(re_.exponent(), im_.exponent()),
                      std::max(o.re_.exponent(), o.im_.exponent()));
    mpfr_set_ui_2exp(slack.raw(), 1, e - p + 3, MPFR_RNDU);
    mpfr_sub(dist.raw(), dist.raw(), slack.raw(), MPFR_RNDD);
    mpfr_sub(dist.raw(), dist.raw(), rad_.raw(), MPFR_RNDD);
    mpfr_sub(dist.raw(), dist.raw(), o.rad_.raw(), MPFR_RNDD);
    return dist.sign() > 0;
}

double ComplexBall::center_distance_to_integers() const {
    Real n(prec_);
    mpfr_round(n.raw(), re_.raw());
    Real d = re_ - n;
    double dre = std::fabs(d.to_double());
    double dim = std::fabs(im_.to_double());
    return std::hypot(dre, dim);
}

}  // namespace moduli
