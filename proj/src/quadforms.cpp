#include "moduli/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace moduli {

namespace {

i64 isqrt_floor(i64 n) {
    if (n < 0) return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void require_valid(i64 delta) {
    if (!is_valid_discriminant(delta))
        throw std::invalid_argument("not a discriminant: " + std::to_string(delta));
}

i64 mod4(i64 x) { return ((x % 4) + 4) % 4; }

}  // namespace

bool is_valid_discriminant(i64 delta) {
    return delta < 0 && (mod4(delta) == 0 || mod4(delta) == 1);
}

bool is_fundamental_discriminant(i64 delta) {
    if (!is_valid_discriminant(delta)) return false;
    auto [d, f] = fundamental_decomposition(delta);
    return f == 1;
}

Decomposition fundamental_decomposition(i64 delta) {
    require_valid(delta);
    // delta = s * m^2 with s squarefree (s < 0)
    i64 n = -delta;
    i64 m = 1, s = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        i64 e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (i64 i = 0; i < e / 2; ++i) m *= p;
        if (e % 2) s *= p;
    }
    s *= n;
    s = -s;
    if (mod4(s) == 1) return {s, m};
    // s == 2,3 mod 4: D = 4s, and delta == 0 mod 4 forces m even
    return {4 * s, m / 2};
}

std::vector<Form> reduced_forms(i64 delta) {
    require_valid(delta);
    std::vector<Form> out;
    const i64 amax = isqrt_floor(-delta / 3);
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            const i64 num = b * b - delta;
            if (num % (4 * a)) continue;
            const i64 c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 class_number(i64 delta) {
    return static_cast<i64>(reduced_forms(delta).size());
}

std::vector<Form> forms_with_leading(i64 delta, i64 a) {
    require_valid(delta);
    if (a < 1) throw std::invalid_argument("leading coefficient must be positive");
    std::vector<Form> out;
    for (const Form& f : reduced_forms(delta))
        if (f.a == a) out.push_back(f);
    return out;
}

bool is_ambiguous(const Form& f) {
    return f.b == 0 || f.b == f.a || f.a == f.c;
}

bool is_two_elementary(i64 delta) {
    auto forms = reduced_forms(delta);
    i64 amb = std::count_if(forms.begin(), forms.end(),
                            [](const Form& f) { return is_ambiguous(f); });
    return amb == static_cast<i64>(forms.size());
}

ClassNumberScan scan_class_numbers(i64 cap) {
    if (cap < 3) throw std::invalid_argument("scan cap too small");
    ClassNumberScan scan;
    scan.cap = cap;
    scan.h.assign(cap + 1, 0);
    scan.ambiguous.assign(cap + 1, 0);
    const i64 amax = isqrt_floor(cap / 3);
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            // b^2 - 4ac >= -cap and c >= a
            const i64 cmax = (b * b + cap) / (4 * a);
            for (i64 c = a; c <= cmax; ++c) {
                if (a == c && b < 0) continue;
                const i64 d = b * b - 4 * a * c;
                if (d >= 0) continue;
                if (std::gcd(std::gcd(a, b), c) != 1) continue;
                scan.h[-d]++;
                if (b == 0 || b == a || a == c) scan.ambiguous[-d]++;
            }
        }
    }
    return scan;
}

i64 ClassNumberScan::class_number(i64 delta) const {
    require_valid(delta);
    if (-delta > cap) throw std::out_of_range("discriminant beyond scan cap");
    return h[-delta];
}

bool ClassNumberScan::two_elementary(i64 delta) const {
    require_valid(delta);
    if (-delta > cap) throw std::out_of_range("discriminant beyond scan cap");
    return h[-delta] > 0 && h[-delta] == ambiguous[-delta];
}

std::vector<i64> ClassNumberScan::with_class_number(i64 h0, i64 limit) const {
    if (limit <= 0 || limit > cap) limit = cap;
    std::vector<i64> out;
    for (i64 n = 3; n <= limit; ++n)
        if (h[n] == static_cast<std::uint32_t>(h0)) out.push_back(-n);
    return out;
}

i64 ClassNumberScan::max_abs_with_class_number(i64 h0) const {
    for (i64 n = cap; n >= 3; --n)
        if (h[n] == static_cast<std::uint32_t>(h0)) return n;
    return 0;
}

}  // namespace moduli
