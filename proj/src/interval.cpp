#include "psicf/interval.hpp"

#include <algorithm>

#include "psicf/errors.hpp"

namespace psicf {

RationalInterval::RationalInterval(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) raise(Errc::internal_error, "interval endpoints out of order");
}

RationalInterval RationalInterval::add(const RationalInterval& o) const {
    return {lo_ + o.lo_, hi_ + o.hi_};
}

RationalInterval RationalInterval::sub(const RationalInterval& o) const {
    return {lo_ - o.hi_, hi_ - o.lo_};
}

RationalInterval RationalInterval::mul(const RationalInterval& o) const {
    const Rat a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
    return {std::min(std::min(a, b), std::min(c, d)), std::max(std::max(a, b), std::max(c, d))};
}

RationalInterval RationalInterval::recip() const {
    if (lo_ <= 0 && hi_ >= 0) raise(Errc::division_by_zero, "reciprocal of interval containing 0");
    return {Rat(1) / hi_, Rat(1) / lo_};
}

RationalInterval RationalInterval::abs() const {
    if (lo_ >= 0) return *this;
    if (hi_ <= 0) return neg();
    const Rat neg_lo = -lo_;
    return {Rat(0), std::max(neg_lo, hi_)};
}

RationalInterval RationalInterval::scale(const Rat& r) const {
    if (r >= 0) return {lo_ * r, hi_ * r};
    return {hi_ * r, lo_ * r};
}

Rat sqrt_lower_dyadic(const Rat& r, unsigned bits) {
    if (r < 0) raise(Errc::negative_radicand, "sqrt of negative rational");
    // floor(2^bits * sqrt(r)) = isqrt(floor(4^bits * r))
    const Int scale = Int(1) << (2 * bits);
    const Int s = isqrt(floor_rat(Rat(scale) * r));
    return Rat(s, Int(1) << bits);
}

Rat sqrt_upper_dyadic(const Rat& r, unsigned bits) {
    if (r < 0) raise(Errc::negative_radicand, "sqrt of negative rational");
    const Int scale = Int(1) << (2 * bits);
    const Int s = isqrt(floor_rat(Rat(scale) * r));
    const Rat lo = Rat(s, Int(1) << bits);
    if (lo * lo == r) return lo;  // exact dyadic square root
    return Rat(s + 1, Int(1) << bits);
}

namespace {

unsigned bits_for_width(const Rat& width) {
    // smallest m with 2^-m <= width (at least 1)
    if (width <= 0) raise(Errc::internal_error, "nonpositive enclosure width");
    unsigned m = 1;
    Rat w(1, 2);
    while (w > width) {
        w /= 2;
        ++m;
        if (m > 4096) raise(Errc::precision_exhausted, "enclosure width below dyadic limit");
    }
    return m;
}

RationalInterval sqrt_interval(const Rat& r, unsigned bits) {
    return {sqrt_lower_dyadic(r, bits), sqrt_upper_dyadic(r, bits)};
}

}  // namespace

RationalInterval enclose(const QuadraticSurd& x, const Rat& width) {
    if (x.is_rational()) {
        const Rat v = x.rational_value();
        return {v, v};
    }
    // x = (a + b sqrt(d)) / c with c > 0; width of b*sqrt(d) scales by |b|/c.
    unsigned bits = bits_for_width(width);
    for (;; bits += 16) {
        const RationalInterval root = sqrt_interval(Rat(x.d()), bits);
        const RationalInterval scaled =
            root.scale(Rat(x.b(), x.c())).shift(Rat(x.a(), x.c()));
        if (scaled.width() <= width) return scaled;
        if (bits > 1u << 20) raise(Errc::precision_exhausted, "surd enclosure did not converge");
    }
}

RationalInterval enclose_sqrt(const QuadraticSurd& x, const Rat& width) {
    if (x.sign() < 0) raise(Errc::negative_radicand, "sqrt of negative value");
    if (x.is_zero()) return {Rat(0), Rat(0)};
    if (x.is_rational()) {
        unsigned bits = bits_for_width(width);
        for (;; bits += 16) {
            const RationalInterval iv = sqrt_interval(x.rational_value(), bits);
            if (iv.width() <= width) return iv;
        }
    }
    // sqrt of an interval enclosure of x; sqrt is monotone so endpoint
    // square roots bound it.  Tighten the inner enclosure until the outer
    // width target is met.
    Rat inner = width * width;  // heuristic start; refined below
    unsigned bits = bits_for_width(width);
    for (;; bits += 16, inner /= 16) {
        const RationalInterval xs = enclose(x, inner);
        if (xs.lo() < 0) continue;  // positive value, shrink until lower bound clears 0
        const Rat lo = sqrt_lower_dyadic(xs.lo(), bits);
        const Rat hi = sqrt_upper_dyadic(xs.hi(), bits);
        if (hi - lo <= width) return {lo, hi};
        if (bits > 1u << 20) raise(Errc::precision_exhausted, "sqrt enclosure did not converge");
    }
}

RationalInterval enclose(NamedConstant k, const Rat& width) {
    switch (k) {
        case NamedConstant::tau:
            return enclose(golden_ratio(), width);
        case NamedConstant::sqrt2_minus1:
            return enclose(QuadraticSurd(-1, 1, 1, 2), width);
        case NamedConstant::sqrt_tau:
            return enclose_sqrt(golden_ratio(), width);
        case NamedConstant::k_gap: {
            const RationalInterval s = enclose_sqrt(golden_ratio(), width);
            return s.shift(Rat(-1));
        }
    }
    raise(Errc::internal_error, "unknown constant");
}

std::strong_ordering cmp_constant(const QuadraticSurd& x, NamedConstant k) {
    switch (k) {
        case NamedConstant::tau:
            return x.cmp(golden_ratio());
        case NamedConstant::sqrt2_minus1:
            return x.cmp(QuadraticSurd(-1, 1, 1, 2));
        case NamedConstant::sqrt_tau:
            return cmp_sqrt_tau(x);
        case NamedConstant::k_gap:
            return cmp_k_gap(x);
    }
    raise(Errc::internal_error, "unknown constant");
}

std::strong_ordering interval_compare(const std::function<RationalInterval(const Rat&)>& lhs,
                                      const std::function<RationalInterval(const Rat&)>& rhs,
                                      const Rat& start_width, const Rat& cap) {
    Rat w = start_width;
    for (;;) {
        const RationalInterval a = lhs(w);
        const RationalInterval b = rhs(w);
        if (a.hi() < b.lo()) return std::strong_ordering::less;
        if (b.hi() < a.lo()) return std::strong_ordering::greater;
        if (w < cap)
            raise(Errc::precision_exhausted,
                  "interval comparison did not separate above width cap");
        w /= 1024;
    }
}

std::string decimal_string(const RationalInterval& iv, int digits) {
    return decimal_string(iv.midpoint(), digits);
}

}  // namespace psicf
