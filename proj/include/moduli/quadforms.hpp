#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace moduli {

using i64 = std::int64_t;

/// A reduced binary quadratic form (a, b, c) of negative discriminant
/// b^2 - 4ac, satisfying gcd(a,b,c) = 1 and either -a < b <= a < c or
/// 0 <= b <= a = c.
struct Form {
    i64 a = 0;
    i64 b = 0;
    i64 c = 0;
    auto operator<=>(const Form&) const = default;
};

// delta < 0 and delta == 0 or 1 (mod 4)
bool is_valid_discriminant(i64 delta);
// squarefree odd part == 1 mod 4, or 4m with m == 2,3 mod 4 squarefree
bool is_fundamental_discriminant(i64 delta);

struct Decomposition {
    i64 fundamental;  // D
    i64 conductor;    // f, with delta = f^2 * D
};
Decomposition fundamental_decomposition(i64 delta);

/// All reduced forms of discriminant delta, sorted ascending by (a, b).
/// Throws std::invalid_argument if delta is not a valid discriminant.
std::vector<Form> reduced_forms(i64 delta);

i64 class_number(i64 delta);

std::vector<Form> forms_with_leading(i64 delta, i64 a);

/// Ambiguous form: its class is its own inverse (b = 0, b = a, or a = c).
bool is_ambiguous(const Form& f);

/// True iff the form class group of delta is isomorphic to (Z/2)^n,
/// decided by counting ambiguous reduced forms.
bool is_two_elementary(i64 delta);

/// Class numbers and ambiguous-class counts for every discriminant with
/// |delta| <= cap, computed by one bulk enumeration of reduced forms.
struct ClassNumberScan {
    i64 cap = 0;
    std::vector<std::uint32_t> h;          // indexed by |delta|; 0 if invalid
    std::vector<std::uint32_t> ambiguous;  // ambiguous reduced forms per |delta|

    i64 class_number(i64 delta) const;
    bool two_elementary(i64 delta) const;
    /// All delta with class number h0 and |delta| <= limit (default: cap),
    /// sorted by |delta| ascending.
    std::vector<i64> with_class_number(i64 h0, i64 limit = 0) const;
    /// Largest |delta| with class number h0, or 0 if none observed.
    i64 max_abs_with_class_number(i64 h0) const;
};

ClassNumberScan scan_class_numbers(i64 cap);

}  // namespace moduli
