#pragma once

// Exact arithmetic in real quadratic fields.  A QuadraticSurd stores
// (a + b*sqrt(d)) / c in the canonical form
//
//     c > 0,  gcd(a, b, c) = 1,  d squarefree,  b = 0  <=>  d = 0,
//
// so rationals are the b = 0, d = 0 case.  Ordering is decided exactly by
// sign analysis of A + B*sqrt(d1) + C*sqrt(d2): one squaring removes a
// radical when the two sides of an inequality have known signs, a second
// squaring removes the remaining sqrt(d1*d2).  No precision parameter is
// involved anywhere, so comparisons across different fields are still exact.

#include <compare>
#include <string>
#include <string_view>

#include "psicf/numeric.hpp"

namespace psicf {

// Sign of x + y*sqrt(d), d >= 0.  Accepts perfect-square d (folds the root).
int sign_linear_in_sqrt(const Int& x, const Int& y, const Int& d);

// Sign of a + b*sqrt(d1) + c*sqrt(d2) for squarefree-ish d1, d2 >= 0.
int sign_two_radicals(const Int& a, const Int& b, const Int& d1, const Int& c, const Int& d2);

class QuadraticSurd {
  public:
    QuadraticSurd() : a_(0), b_(0), c_(1), d_(0) {}
    QuadraticSurd(Int a, Int b, Int c, Int d);  // normalizes, throws on c=0 / d<0

    static QuadraticSurd from_rational(const Rat& r);
    static QuadraticSurd from_int(const Int& n) { return from_rational(Rat(n)); }
    static QuadraticSurd sqrt_of(const Int& d);  // sqrt(d), d >= 0

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    Rat rational_value() const;  // requires is_rational()
    int sign() const;

    // Arithmetic.  add/sub/mul/div require operands in the same field (equal
    // d, or either side rational); mixing distinct radicands throws
    // Errc::mixed_radicand.  recip of zero throws Errc::division_by_zero.
    QuadraticSurd add_int(const Int& n) const;
    QuadraticSurd add_rat(const Rat& r) const;
    QuadraticSurd mul_rat(const Rat& r) const;
    QuadraticSurd add(const QuadraticSurd& o) const;
    QuadraticSurd sub(const QuadraticSurd& o) const;
    QuadraticSurd mul(const QuadraticSurd& o) const;
    QuadraticSurd div(const QuadraticSurd& o) const { return mul(o.recip()); }
    QuadraticSurd recip() const;
    QuadraticSurd neg() const;
    QuadraticSurd abs() const;
    QuadraticSurd conjugate() const;  // a - b*sqrt(d), same c

    Int floor() const;  // exact floor, certified by surd-vs-integer checks

    // Exact ordering by value, any pair of surds.
    std::strong_ordering cmp(const QuadraticSurd& o) const;
    std::strong_ordering cmp_rat(const Rat& r) const;
    bool equals(const QuadraticSurd& o) const { return cmp(o) == std::strong_ordering::equal; }

    // Literal grammar "(a + b*sqrt(d))/c"; also accepts "7/3", "sqrt(2)",
    // "2*sqrt(3)", "(sqrt(5)+1)/2" and friends.
    static QuadraticSurd parse(std::string_view text);
    std::string to_string() const;

  private:
    void normalize();
    Int a_, b_, c_, d_;
};

inline bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) { return x.equals(y); }
inline std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.cmp(y);
}

// tau = (1 + sqrt(5))/2, the golden ratio; the unique fixed point of the
// all-ones continued fraction and the pivot of every threshold comparison.
QuadraticSurd golden_ratio();

// Exact ordering of x against sqrt(tau) and against K = sqrt(tau) - 1, via
// one more squaring: x >= sqrt(tau) <=> x >= 0 and x^2 >= tau.  Works for
// every quadratic surd x because sqrt(tau) has degree 4, so equality can
// only be reported if x literally equals the constant (impossible for a
// surd; the EQ branch exists for completeness).
std::strong_ordering cmp_sqrt_tau(const QuadraticSurd& x);
std::strong_ordering cmp_k_gap(const QuadraticSurd& x);

}  // namespace psicf
