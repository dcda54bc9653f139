#include "psicf/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

namespace psicf {

namespace {

// Primes up to 1e5, built once; used for square-part extraction.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        const std::uint32_t limit = 100000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t p = 2; p <= limit; ++p) {
            if (composite[p]) continue;
            out.push_back(p);
            for (std::uint64_t q = std::uint64_t(p) * p; q <= limit; q += p) composite[q] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace

Int isqrt(const Int& n) {
    if (n < 0) raise(Errc::domain_error, "isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

Int floor_div(const Int& a, const Int& b) {
    if (b <= 0) raise(Errc::internal_error, "floor_div needs positive divisor");
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

Int floor_rat(const Rat& x) { return floor_div(num(x), den(x)); }

Int round_rat(const Rat& x) {
    // floor(x + 1/2), ties rounded up; callers guarantee no exact ties.
    Rat shifted = x + Rat(1, 2);
    return floor_rat(shifted);
}

Int pow_int(const Int& base, unsigned exp) {
    Int r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

Rat pow10_neg(unsigned digits) { return Rat(Int(1), pow_int(Int(10), digits)); }

SquareSplit extract_square_part(Int n) {
    if (n < 0) raise(Errc::negative_radicand, "square part of negative integer");
    SquareSplit out{1, n};
    if (n <= 3) return out;
    Int square = 1;
    for (std::uint32_t p : small_primes()) {
        Int pp = Int(p) * p;
        if (pp > out.core) break;
        while (out.core % pp == 0) {
            out.core /= pp;
            square *= p;
        }
    }
    Int r;
    if (is_perfect_square(out.core, &r)) {
        square *= r;
        out.core = 1;
    }
    out.square_part = square;
    return out;
}

std::vector<Int> unit_ratio_digits(Int p, Int q) {
    if (p <= 0 || q <= 0 || p > q) raise(Errc::domain_error, "unit_ratio_digits needs 0 < p <= q");
    // Euclid on q/p yields the digits after the leading 0.  The remainder
    // chain never ends on a quotient of 1 except in the p == q case, so the
    // result is already canonical.
    std::vector<Int> digits;
    Int a = q, b = p;
    while (b != 0) {
        digits.push_back(a / b);
        Int r = a % b;
        a = b;
        b = r;
    }
    return digits;
}

std::string decimal_string(const Rat& x, int digits) {
    if (digits < 0) raise(Errc::domain_error, "negative digit count");
    bool negative = x < 0;
    Rat mag = negative ? Rat(-x) : x;
    Int scale = pow_int(Int(10), unsigned(digits));
    Rat scaled = mag * scale;
    Int whole = floor_rat(scaled);
    Rat frac = scaled - whole;
    // round half to even
    if (frac > Rat(1, 2) || (frac == Rat(1, 2) && whole % 2 != 0)) ++whole;
    Int int_part = whole / scale;
    Int frac_part = whole % scale;
    std::string out = negative && whole != 0 ? "-" : "";
    out += int_part.str();
    if (digits > 0) {
        std::string f = frac_part.str();
        out += "." + std::string(size_t(digits) - f.size(), '0') + f;
    }
    return out;
}

std::string width_string(const Rat& x) {
    if (x < 0) raise(Errc::domain_error, "width must be nonnegative");
    if (x == 0) return "0";
    // Find e with 1 <= x * 10^e < 10, then print three significant digits.
    int e = 0;
    Rat v = x;
    while (v < 1) {
        v *= 10;
        ++e;
    }
    while (v >= 10) {
        v /= 10;
        --e;
    }
    Int m = round_rat(v * 100);  // 100..1000
    std::string digits = m.str();
    if (digits.size() == 4) {  // rounded up to 10.00
        digits = "100";
        --e;
    }
    std::string out = digits.substr(0, 1) + "." + digits.substr(1);
    if (e != 0) out += "e" + std::to_string(-e);
    return out;
}

Rat parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) raise(Errc::parse_error, "empty number");

    auto parse_int = [](std::string_view t) -> Int {
        if (t.empty()) raise(Errc::parse_error, "empty integer literal");
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) raise(Errc::parse_error, "sign without digits");
        for (size_t j = i; j < t.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(t[j])))
                raise(Errc::parse_error, "invalid integer literal: " + std::string(t));
        return Int(std::string(t));
    };

    // exponent suffix
    long exp10 = 0;
    size_t epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        std::string tail = s.substr(epos + 1);
        Int e = parse_int(tail);
        if (e > 4096 || e < -4096) raise(Errc::parse_error, "exponent out of range");
        exp10 = static_cast<long>(e);
        s = s.substr(0, epos);
    }

    Rat base;
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        Int p = parse_int(std::string_view(s).substr(0, slash));
        Int q = parse_int(std::string_view(s).substr(slash + 1));
        if (q == 0) raise(Errc::parse_error, "zero denominator in rational literal");
        base = Rat(p, q);
    } else {
        size_t dot = s.find('.');
        if (dot == std::string::npos) {
            base = Rat(parse_int(s));
        } else {
            std::string whole = s.substr(0, dot);
            std::string frac = s.substr(dot + 1);
            if (frac.empty() && (whole.empty() || whole == "+" || whole == "-"))
                raise(Errc::parse_error, "invalid decimal literal: " + std::string(text));
            bool neg = !whole.empty() && whole[0] == '-';
            if (whole.empty() || whole == "+" || whole == "-") whole += "0";
            Int w = parse_int(whole);
            Int f = frac.empty() ? Int(0) : parse_int(frac);
            if (f < 0) raise(Errc::parse_error, "invalid decimal literal: " + std::string(text));
            Rat fpart = frac.empty() ? Rat(0) : Rat(f, pow_int(Int(10), unsigned(frac.size())));
            Rat mag = Rat(boost::multiprecision::abs(w)) + fpart;
            base = neg || w < 0 ? Rat(-mag) : mag;
        }
    }
    if (exp10 > 0) base *= Rat(pow_int(Int(10), unsigned(exp10)));
    if (exp10 < 0) base /= Rat(pow_int(Int(10), unsigned(-exp10)));
    return base;
}

}  // namespace psicf
