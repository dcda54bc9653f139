#pragma once

// Certified rational enclosures.  Every displayed decimal in the project is
// derived from one of these intervals; the exact layer (surd.hpp) never
// needs them for correctness, only for rendering and for ordering against
// the degree-4 constants where a caller asked for the interval route.
//
// Enclosures are dyadic (endpoints k/2^m), monotone under refinement:
// enclose(x, w/2) is contained in enclose(x, w).

#include <functional>

#include "psicf/surd.hpp"

namespace psicf {

class RationalInterval {
  public:
    RationalInterval() : lo_(0), hi_(0) {}
    RationalInterval(Rat lo, Rat hi);

    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    Rat width() const { return hi_ - lo_; }
    Rat midpoint() const { return (lo_ + hi_) / 2; }
    bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    RationalInterval add(const RationalInterval& o) const;
    RationalInterval sub(const RationalInterval& o) const;
    RationalInterval mul(const RationalInterval& o) const;
    RationalInterval recip() const;  // requires 0 outside
    RationalInterval neg() const { return {-hi_, -lo_}; }
    RationalInterval abs() const;
    RationalInterval scale(const Rat& r) const;
    RationalInterval shift(const Rat& r) const { return {lo_ + r, hi_ + r}; }

  private:
    Rat lo_, hi_;
};

// Monotone dyadic bounds on sqrt: floor(2^m sqrt(r))/2^m and the matching
// upper bound; nested as m grows.
Rat sqrt_lower_dyadic(const Rat& r, unsigned bits);
Rat sqrt_upper_dyadic(const Rat& r, unsigned bits);

// Enclosure of a surd with width <= max(width, 0-width exact for rationals).
RationalInterval enclose(const QuadraticSurd& x, const Rat& width);

// sqrt of a nonnegative surd, enclosed to the requested width.
RationalInterval enclose_sqrt(const QuadraticSurd& x, const Rat& width);

// The distinguished constants of the gap theory:
//   tau          = (1+sqrt 5)/2
//   sqrt_tau     = tau^(1/2)            (degree 4; root of y^4 - y^2 - 1)
//   k_gap        = sqrt(tau) - 1 ~ 0.27202, the universal gap threshold
//   sqrt2_minus1 = sqrt(2) - 1, the small-digit threshold
enum class NamedConstant { tau, sqrt_tau, k_gap, sqrt2_minus1 };

RationalInterval enclose(NamedConstant k, const Rat& width);

// Exact ordering of a surd against a named constant.  tau and sqrt2_minus1
// are themselves surds (plain exact comparison; equality possible).  For the
// degree-4 constants: rational x is decided by the sign of the defining
// polynomial y^4 - y^2 - 1 (never zero at rationals, so never equal), and
// irrational x by adaptive interval refinement, which terminates because a
// quadratic surd can never equal a degree-4 number.  Refinement below width
// 1e-200 raises Errc::precision_exhausted (a bug signal, not a data path).
std::strong_ordering cmp_constant(const QuadraticSurd& x, NamedConstant k);

// Refines two enclosure generators until their intervals separate; `cap` is
// the smallest width tried before giving up with precision_exhausted.
std::strong_ordering interval_compare(const std::function<RationalInterval(const Rat&)>& lhs,
                                      const std::function<RationalInterval(const Rat&)>& rhs,
                                      const Rat& start_width, const Rat& cap);

std::string decimal_string(const RationalInterval& iv, int digits);  // midpoint rendering

}  // namespace psicf
