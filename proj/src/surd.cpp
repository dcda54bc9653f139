#include "psicf/surd.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <utility>

namespace psicf {

namespace mp = boost::multiprecision;

namespace {

Int gcd3(const Int& a, const Int& b, const Int& c) { return mp::gcd(mp::gcd(a, b), c); }

int sign_int(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

std::strong_ordering order_from_sign(int s) {
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace

int sign_linear_in_sqrt(const Int& x, const Int& y, const Int& d) {
    if (d < 0) raise(Errc::negative_radicand, "negative radicand in sign evaluation");
    if (y == 0 || d == 0) return sign_int(x);
    Int r;
    if (is_perfect_square(d, &r)) return sign_int(x + y * r);
    if (x == 0) return sign_int(y);
    if (x > 0 && y > 0) return 1;
    if (x < 0 && y < 0) return -1;
    // Mixed signs: |x| vs |y|*sqrt(d) squares to x^2 vs y^2 d.  d is not a
    // perfect square, so the two sides can never be equal here.
    Int t = x * x - y * y * d;
    return x > 0 ? sign_int(t) : -sign_int(t);
}

int sign_two_radicals(const Int& a, const Int& b, const Int& d1, const Int& c, const Int& d2) {
    if (b == 0 || d1 == 0) return sign_linear_in_sqrt(a, c, d2);
    if (c == 0 || d2 == 0) return sign_linear_in_sqrt(a, b, d1);
    if (d1 == d2) return sign_linear_in_sqrt(a, b + c, d1);
    {
        Int r;
        if (is_perfect_square(d1, &r)) return sign_linear_in_sqrt(a + b * r, c, d2);
        if (is_perfect_square(d2, &r)) return sign_linear_in_sqrt(a + c * r, b, d1);
    }
    // First squaring: the sign of S = b*sqrt(d1) + c*sqrt(d2).
    int sign_s;
    if (b > 0 && c > 0) {
        sign_s = 1;
    } else if (b < 0 && c < 0) {
        sign_s = -1;
    } else {
        Int t = b * b * d1 - c * c * d2;
        sign_s = b > 0 ? sign_int(t) : -sign_int(t);
    }
    if (a == 0) return sign_s;
    if (sign_s == 0) return sign_int(a);
    if ((a > 0) == (sign_s > 0)) return sign_int(a);
    // Opposite signs: compare S^2 = b^2 d1 + c^2 d2 + 2bc*sqrt(d1 d2) with
    // a^2.  gcd pulls the square part out of d1*d2 without factoring.
    Int g = mp::gcd(d1, d2);
    Int core = (d1 / g) * (d2 / g);
    Int lin = b * b * d1 + c * c * d2 - a * a;
    int s2 = sign_linear_in_sqrt(lin, 2 * b * c * g, core);
    return s2 == 0 ? 0 : sign_s * s2;
}

QuadraticSurd::QuadraticSurd(Int a, Int b, Int c, Int d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    normalize();
}

void QuadraticSurd::normalize() {
    if (c_ == 0) raise(Errc::zero_denominator, "surd denominator is zero");
    if (d_ < 0) raise(Errc::negative_radicand, "surd radicand is negative");
    if (b_ == 0 || d_ == 0) {
        b_ = 0;
        d_ = 0;
    } else {
        SquareSplit s = extract_square_part(d_);
        if (s.square_part != 1) {
            b_ *= s.square_part;
            d_ = s.core;
        }
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
            d_ = 0;
        }
    }
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    Int g = gcd3(mp::abs(a_), mp::abs(b_), c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

QuadraticSurd QuadraticSurd::from_rational(const Rat& r) {
    return QuadraticSurd(num(r), 0, den(r), 0);
}

QuadraticSurd QuadraticSurd::sqrt_of(const Int& d) {
    if (d < 0) raise(Errc::negative_radicand, "sqrt of negative integer");
    return QuadraticSurd(0, 1, 1, d);
}

Rat QuadraticSurd::rational_value() const {
    if (!is_rational()) raise(Errc::domain_error, "surd is irrational");
    return Rat(a_, c_);
}

int QuadraticSurd::sign() const { return sign_linear_in_sqrt(a_, b_, d_); }

QuadraticSurd QuadraticSurd::add_rat(const Rat& r) const {
    const Int& p = num(r);
    const Int& q = den(r);
    return QuadraticSurd(a_ * q + p * c_, b_ * q, c_ * q, d_);
}

QuadraticSurd QuadraticSurd::add_int(const Int& n) const {
    return QuadraticSurd(a_ + n * c_, b_, c_, d_);
}

QuadraticSurd QuadraticSurd::mul_rat(const Rat& r) const {
    const Int& p = num(r);
    const Int& q = den(r);
    return QuadraticSurd(a_ * p, b_ * p, c_ * q, d_);
}

QuadraticSurd QuadraticSurd::add(const QuadraticSurd& o) const {
    if (o.is_rational()) return add_rat(o.rational_value());
    if (is_rational()) return o.add_rat(rational_value());
    if (d_ != o.d_) raise(Errc::mixed_radicand, "cannot add surds over distinct radicands");
    return QuadraticSurd(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d_);
}

QuadraticSurd QuadraticSurd::sub(const QuadraticSurd& o) const { return add(o.neg()); }

QuadraticSurd QuadraticSurd::mul(const QuadraticSurd& o) const {
    if (o.is_rational()) return mul_rat(o.rational_value());
    if (is_rational()) return o.mul_rat(rational_value());
    if (d_ != o.d_) raise(Errc::mixed_radicand, "cannot multiply surds over distinct radicands");
    return QuadraticSurd(a_ * o.a_ + b_ * o.b_ * d_, a_ * o.b_ + b_ * o.a_, c_ * o.c_, d_);
}

QuadraticSurd QuadraticSurd::recip() const {
    if (is_zero()) raise(Errc::division_by_zero, "reciprocal of zero");
    if (is_rational()) return QuadraticSurd(c_, 0, a_, 0);
    // 1/x = c (a - b sqrt d) / (a^2 - b^2 d); the norm is nonzero because x
    // is irrational.
    Int norm = a_ * a_ - b_ * b_ * d_;
    return QuadraticSurd(c_ * a_, -c_ * b_, norm, d_);
}

QuadraticSurd QuadraticSurd::neg() const {
    QuadraticSurd r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

QuadraticSurd QuadraticSurd::abs() const { return sign() < 0 ? neg() : *this; }

QuadraticSurd QuadraticSurd::conjugate() const {
    QuadraticSurd r = *this;
    r.b_ = -r.b_;
    return r;
}

Int QuadraticSurd::floor() const {
    if (is_rational()) return floor_div(a_, c_);
    // Bracket b*sqrt(d) between consecutive integers (strict: it is
    // irrational), take the candidate floor, then certify by exact
    // surd-vs-integer comparisons and nudge if the division boundary lied.
    Int s = isqrt(b_ * b_ * d_);
    Int braket = b_ > 0 ? s : -s - 1;  // floor(b*sqrt(d))
    Int m = floor_div(a_ + braket, c_);
    while (sign_linear_in_sqrt(a_ - (m + 1) * c_, b_, d_) >= 0) ++m;
    while (sign_linear_in_sqrt(a_ - m * c_, b_, d_) < 0) --m;
    return m;
}

std::strong_ordering QuadraticSurd::cmp(const QuadraticSurd& o) const {
    // this - other has numerator (a1 c2 - a2 c1) + b1 c2 sqrt(d1)
    // - b2 c1 sqrt(d2) over the positive denominator c1 c2.
    int s = sign_two_radicals(a_ * o.c_ - o.a_ * c_, b_ * o.c_, d_, -o.b_ * c_, o.d_);
    return order_from_sign(s);
}

std::strong_ordering QuadraticSurd::cmp_rat(const Rat& r) const {
    int s = sign_linear_in_sqrt(a_ * den(r) - num(r) * c_, b_ * den(r), d_);
    return order_from_sign(s);
}

QuadraticSurd golden_ratio() { return QuadraticSurd(1, 1, 2, 5); }

std::strong_ordering cmp_sqrt_tau(const QuadraticSurd& x) {
    if (x.sign() <= 0) return std::strong_ordering::less;
    return x.mul(x).cmp(golden_ratio());
}

std::strong_ordering cmp_k_gap(const QuadraticSurd& x) { return cmp_sqrt_tau(x.add_int(1)); }

// ---------------------------------------------------------------------------
// Literal grammar.

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool consume_word(std::string_view w) {
        skip_ws();
        if (s.substr(i, w.size()) == w) {
            i += w.size();
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) raise(Errc::parse_error, "expected integer in surd literal");
        return Int(std::string(s.substr(start, i - start)));
    }
};

struct Terms {
    Int rational = 0;  // sum of plain integer terms
    Int coeff = 0;     // coefficient of sqrt(radicand)
    Int radicand = 0;
};

// term := int | [int '*'] 'sqrt' '(' uint ')'
void parse_term(Cursor& cur, Terms& acc, int outer_sign) {
    Int factor = 1;
    bool have_factor = false;
    if (cur.peek() == '+' || cur.peek() == '-' || std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        factor = cur.integer();
        have_factor = true;
        if (!cur.consume('*')) {
            acc.rational += outer_sign * factor;
            return;
        }
    }
    if (!cur.consume_word("sqrt")) raise(Errc::parse_error, "expected sqrt(...) in surd literal");
    if (!cur.consume('(')) raise(Errc::parse_error, "expected '(' after sqrt");
    Int d = cur.integer();
    if (!cur.consume(')')) raise(Errc::parse_error, "expected ')' after radicand");
    if (d < 0) raise(Errc::negative_radicand, "negative radicand in surd literal");
    if (!have_factor) factor = 1;
    Int coeff = outer_sign * factor;
    if (acc.coeff == 0) {
        acc.coeff = coeff;
        acc.radicand = d;
    } else if (acc.radicand == d) {
        acc.coeff += coeff;
    } else {
        raise(Errc::parse_error, "surd literal may use only one radicand");
    }
}

void parse_sum(Cursor& cur, Terms& acc) {
    int sign = 1;
    if (cur.consume('-')) sign = -1;
    else cur.consume('+');
    parse_term(cur, acc, sign);
    while (true) {
        if (cur.consume('+')) sign = 1;
        else if (cur.consume('-')) sign = -1;
        else break;
        parse_term(cur, acc, sign);
    }
}

}  // namespace

QuadraticSurd QuadraticSurd::parse(std::string_view text) {
    Cursor cur{text};
    Terms acc;
    bool parenthesized = cur.consume('(');
    parse_sum(cur, acc);
    if (parenthesized && !cur.consume(')')) raise(Errc::parse_error, "unbalanced '(' in surd literal");
    Int c = 1;
    if (cur.consume('/')) c = cur.integer();
    if (!cur.eof()) raise(Errc::parse_error, "trailing characters in surd literal");
    if (acc.coeff == 0) acc.radicand = 0;
    return QuadraticSurd(acc.rational, acc.coeff, c, acc.radicand);
}

std::string QuadraticSurd::to_string() const {
    if (is_rational()) {
        std::string out = a_.str();
        if (c_ != 1) out += "/" + c_.str();
        return out;
    }
    const Int abs_b = b_ < 0 ? Int(-b_) : b_;
    std::string numerator = "(" + a_.str() + (b_ < 0 ? " - " : " + ") + abs_b.str() +
                            "*sqrt(" + d_.str() + "))";
    if (c_ == 1) return numerator;
    return numerator + "/" + c_.str();
}

}  // namespace psicf
