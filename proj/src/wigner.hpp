#pragma once

#include "half_int.hpp"

namespace fockpulse {

// Result of a symbol evaluation. is_exact_zero distinguishes selection-rule
// zeros (m-sum, triangle, Regge cancellations) from small nonzero values;
// the underlying arithmetic is exact-rational, so the flag is reliable.
struct SymbolValue {
    double value = 0.0;
    bool is_exact_zero = false;
};

// Largest supported angular momentum magnitude (j <= 20).
inline constexpr int kMaxTwiceJ = 40;

// Wigner 3-j symbol (j1 j2 j3; m1 m2 m3), evaluated by the Racah single-sum
// formula in exact big-integer rational arithmetic; the conversion to double
// happens once, at the final square root.
//
// Throws DomainError for malformed inputs: j < 0, |m| > j, j/m parity
// mismatch, or j > 20.
SymbolValue wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3,
                      HalfInt m1, HalfInt m2, HalfInt m3);

// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6}. Exact zero when any of the four
// triads (j1 j2 j3), (j1 j5 j6), (j4 j2 j6), (j4 j5 j3) violates the
// triangle rule. Throws DomainError for j < 0 or j > 20.
SymbolValue wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3,
                      HalfInt j4, HalfInt j5, HalfInt j6);

} // namespace fockpulse
