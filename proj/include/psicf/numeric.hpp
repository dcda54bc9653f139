#pragma once

// Arbitrary-precision integer/rational plumbing shared by the exact layers.
// Everything downstream works with these aliases only, so the backend could
// be swapped without touching the arithmetic above it.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "psicf/errors.hpp"

namespace psicf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

// True iff n is a perfect square; stores sqrt(n) in *root when asked.
bool is_perfect_square(const Int& n, Int* root = nullptr);

// floor(a / b) for b > 0 (division rounded toward -infinity).
Int floor_div(const Int& a, const Int& b);

Int floor_rat(const Rat& x);
// Nearest integer, ties away from zero (callers only use it where ties are
// impossible: irrational targets).
Int round_rat(const Rat& x);

Int pow_int(const Int& base, unsigned exp);
Rat pow10_neg(unsigned digits);  // 10^-digits as an exact rational

// n = square_part^2 * core with core squarefree.  Uses a prime sieve up to
// 1e5 plus a perfect-square check on the cofactor, which is exhaustive for
// n <= 1e10 (any missed square factor would need a prime > 1e5 squared).
struct SquareSplit {
    Int square_part;
    Int core;
};
SquareSplit extract_square_part(Int n);

// Continued fraction digits (t_1, ..., t_k) with [0; t_1, ..., t_k] == p/q,
// for 0 < p <= q, in the canonical form whose last digit is >= 2 unless the
// whole list is the single digit 1 (which encodes p == q).
std::vector<Int> unit_ratio_digits(Int p, Int q);

// Exact decimal rendering of a rational with `digits` fractional digits,
// round-half-even.  Never goes through floating point.
std::string decimal_string(const Rat& x, int digits);

// Short scientific-style rendering (3 significant digits) for interval
// widths; exact arithmetic underneath.
std::string width_string(const Rat& x);

// Parses "123", "-4/7", "0.25", "1e-3" style numbers into an exact rational.
Rat parse_rational(std::string_view text);

}  // namespace psicf
