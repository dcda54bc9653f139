#include "psicf/cf.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "psicf/errors.hpp"

namespace psicf {

namespace {

// Trailing-digit canonical form for finite CFs of values in (0, 1]:
// [..., a, 1] -> [..., a+1]; the single digit [1] (value 1) stays.
std::vector<Int> canonical_unit_digits(std::vector<Int> ds) {
    if (ds.size() > 1 && ds.back() == 1) {
        ds.pop_back();
        ds.back() += 1;
    }
    return ds;
}

}  // namespace

// ---------------------------------------------------------------- digits ---

PartialQuotients PartialQuotients::periodic(Int a0, std::vector<Int> preperiod,
                                            std::vector<Int> period) {
    if (period.empty()) raise(Errc::domain_error, "periodic form requires a nonempty period");
    PartialQuotients pq;
    pq.a0_ = std::move(a0);
    pq.preperiod_ = std::move(preperiod);
    pq.period_ = std::move(period);
    pq.canonicalize();
    return pq;
}

PartialQuotients PartialQuotients::prefix(Int a0, std::vector<Int> digits) {
    PartialQuotients pq;
    pq.a0_ = std::move(a0);
    pq.preperiod_ = std::move(digits);
    pq.canonicalize();
    return pq;
}

void PartialQuotients::canonicalize() {
    for (const Int& v : preperiod_)
        if (v < 1) raise(Errc::domain_error, "partial quotients after a0 must be >= 1");
    for (const Int& v : period_)
        if (v < 1) raise(Errc::domain_error, "period digits must be >= 1");
    if (period_.empty()) return;

    // Minimal period length via the classic border (failure) function.
    const std::size_t L = period_.size();
    std::vector<std::size_t> border(L, 0);
    for (std::size_t i = 1; i < L; ++i) {
        std::size_t j = border[i - 1];
        while (j > 0 && period_[i] != period_[j]) j = border[j - 1];
        if (period_[i] == period_[j]) ++j;
        border[i] = j;
    }
    const std::size_t p = L - border[L - 1];
    if (p < L && L % p == 0) period_.resize(p);

    // Earliest period offset: while the digit before the period equals its
    // last digit, the period can start one position earlier (rotated right).
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
        preperiod_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

Int PartialQuotients::digit(std::size_t n) const {
    if (n == 0) return a0_;
    const std::size_t idx = n - 1;
    if (idx < preperiod_.size()) return preperiod_[idx];
    if (period_.empty())
        raise(Errc::horizon_exceeded,
              "digit index " + std::to_string(n) + " beyond the known prefix");
    return period_[(idx - preperiod_.size()) % period_.size()];
}

bool PartialQuotients::has_digit(std::size_t n) const {
    return !period_.empty() || n == 0 || n - 1 < preperiod_.size();
}

std::size_t PartialQuotients::last_known_index() const {
    if (is_periodic()) raise(Errc::internal_error, "periodic expansion has no last index");
    return preperiod_.size();
}

std::string PartialQuotients::format() const {
    std::string out = "[" + a0_.str();
    if (preperiod_.empty() && period_.empty()) return out + "]";
    out += "; ";
    for (std::size_t i = 0; i < preperiod_.size(); ++i) {
        if (i) out += ", ";
        out += preperiod_[i].str();
    }
    if (!period_.empty()) {
        if (!preperiod_.empty()) out += ", ";
        out += "(";
        for (std::size_t i = 0; i < period_.size(); ++i) {
            if (i) out += ",";
            out += period_[i].str();
        }
        out += ")";
    }
    return out + "]";
}

namespace {

struct CfCursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) {
        raise(Errc::parse_error, why + " at offset " + std::to_string(pos) + " in CF literal");
    }
    Int integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits_start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits_start) fail("expected an integer");
        return Int(std::string(text.substr(start, pos - start)));
    }
};

}  // namespace

PartialQuotients PartialQuotients::parse(std::string_view text) {
    CfCursor cur{text};
    if (!cur.consume('[')) cur.fail("expected '['");
    Int a0 = cur.integer();
    std::vector<Int> pre, period;
    bool closed = false;
    if (cur.consume(']')) {
        closed = true;
    } else {
        if (!cur.consume(';')) cur.fail("expected ';' or ']'");
        bool want_item = !cur.consume(']');
        closed = !want_item;
        bool first = true;
        while (want_item) {
            if (!first && !cur.consume(',')) {
                if (cur.consume(']')) {
                    closed = true;
                    break;
                }
                cur.fail("expected ',' or ']'");
            }
            first = false;
            if (cur.consume('(')) {
                period.push_back(cur.integer());
                while (cur.consume(',')) period.push_back(cur.integer());
                if (!cur.consume(')')) cur.fail("expected ')'");
                if (!cur.consume(']')) cur.fail("expected ']' after period");
                closed = true;
                break;
            }
            pre.push_back(cur.integer());
        }
    }
    if (!closed) cur.fail("unterminated CF literal");
    cur.skip_ws();
    if (cur.pos != text.size()) cur.fail("trailing characters");
    return period.empty() ? prefix(std::move(a0), std::move(pre))
                          : periodic(std::move(a0), std::move(pre), std::move(period));
}

// --------------------------------------------------------------- horizon ---

ValidityHorizon horizon(const PartialQuotients& pq) {
    ValidityHorizon h;
    if (pq.is_periodic()) {
        h.unbounded = true;
        return h;
    }
    h.unbounded = false;
    h.max_index = pq.last_known_index();
    h.max_t = convergents_upto_index(pq, h.max_index).back().q;
    return h;
}

// ------------------------------------------------------------- expansion ---

PartialQuotients expand_surd(const QuadraticSurd& x) {
    if (x.is_rational())
        raise(Errc::rational_input, "continued-fraction expansion requires an irrational value");
    constexpr std::size_t kStateCap = 1'000'000;
    std::map<std::array<Int, 4>, std::size_t> seen;
    std::vector<Int> digits;
    QuadraticSurd state = x;
    for (std::size_t i = 0; i < kStateCap; ++i) {
        auto [it, fresh] = seen.emplace(std::array<Int, 4>{state.a(), state.b(), state.c(), state.d()}, i);
        if (!fresh) {
            const std::size_t first = it->second;  // digit cycle = digits[first .. i)
            Int a0 = digits[0];
            std::vector<Int> pre, period;
            if (first == 0) {
                // The whole expansion is periodic including a0; the period of
                // the digits from index 1 on is the cycle rotated left once.
                period.assign(digits.begin() + 1, digits.end());
                period.push_back(digits[0]);
            } else {
                pre.assign(digits.begin() + 1, digits.begin() + static_cast<std::ptrdiff_t>(first));
                period.assign(digits.begin() + static_cast<std::ptrdiff_t>(first),
                              digits.begin() + static_cast<std::ptrdiff_t>(i));
            }
            return PartialQuotients::periodic(std::move(a0), std::move(pre), std::move(period));
        }
        Int a = state.floor();
        digits.push_back(a);
        state = state.add_int(-a).recip();
    }
    raise(Errc::internal_error, "complete-quotient state did not recur within the cap");
}

QuadraticSurd cf_to_surd(const PartialQuotients& pq) {
    if (!pq.is_periodic())
        raise(Errc::precondition_violated, "reconstruction requires a periodic expansion");
    // Purely periodic tail y = [c1; c2, ..., cL, c1, ...] is the fixed point
    // of the Moebius map given by M = prod [[c_i, 1], [1, 0]]:
    //   M21 y^2 + (M22 - M11) y - M12 = 0, y the positive root.
    Int m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    for (const Int& c : pq.period()) {
        Int n11 = m11 * c + m12, n12 = m11;
        Int n21 = m21 * c + m22, n22 = m21;
        m11 = std::move(n11);
        m12 = std::move(n12);
        m21 = std::move(n21);
        m22 = std::move(n22);
    }
    const Int disc = (m11 - m22) * (m11 - m22) + 4 * m12 * m21;
    QuadraticSurd v(m11 - m22, 1, 2 * m21, disc);
    if (v.is_rational())
        raise(Errc::internal_error, "periodic expansion produced a rational fixed point");
    // Walk the preperiod backwards: v_i = a_i + 1/v_{i+1}.
    const auto& pre = pq.preperiod();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) v = v.recip().add_int(*it);
    return v.recip().add_int(pq.a0());
}

// ------------------------------------------------------------ convergents ---

std::vector<Convergent> convergents_upto_index(const PartialQuotients& pq, std::size_t n) {
    std::vector<Convergent> out;
    out.reserve(n + 1);
    Int p_prev = 1, q_prev = 0;  // index -1
    Int p = pq.a0(), q = 1;      // index 0
    out.push_back({0, p, q});
    for (std::size_t i = 1; i <= n; ++i) {
        const Int a = pq.digit(i);
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        out.push_back({i, p, q});
    }
    return out;
}

std::vector<Convergent> convergents_upto_value(const PartialQuotients& pq, const Int& T) {
    std::vector<Convergent> out;
    Int p_prev = 1, q_prev = 0;
    Int p = pq.a0(), q = 1;
    out.push_back({0, p, q});
    for (std::size_t i = 1; q <= T; ++i) {
        const Int a = pq.digit(i);
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        out.push_back({i, p, q});
    }
    return out;
}

QuadraticSurd approximation_error(const QuadraticSurd& alpha, const Convergent& cv) {
    return alpha.mul_rat(Rat(cv.q)).add_rat(Rat(-cv.p)).abs();
}

// ----------------------------------------------------------------- tails ---

QuadraticSurd tail(const PartialQuotients& pq, std::size_t n) {
    if (!pq.is_periodic())
        raise(Errc::horizon_exceeded, "tails of a finite prefix are not determined");
    const std::size_t m = pq.preperiod().size();
    if (n <= m) {
        QuadraticSurd t = cf_to_surd(pq);
        for (std::size_t i = 0; i < n; ++i) t = t.add_int(-pq.digit(i)).recip();
        return t;
    }
    // Inside the periodic part every tail is purely periodic: rotate the
    // period so it starts at digit n, independent of how large n is.
    const auto& per = pq.period();
    const std::size_t L = per.size();
    const std::size_t k = (n - m - 1) % L;
    std::vector<Int> rot(per.begin() + static_cast<std::ptrdiff_t>(k), per.end());
    rot.insert(rot.end(), per.begin(), per.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Int> cycle(rot.begin() + 1, rot.end());
    cycle.push_back(rot[0]);
    return cf_to_surd(PartialQuotients::periodic(rot[0], {}, std::move(cycle)));
}

LambdaValue::LambdaValue(QuadraticSurd tail_value) : tail_(std::move(tail_value)) {
    if (tail_.cmp_rat(Rat(1)) != std::strong_ordering::greater)
        raise(Errc::domain_error, "lambda needs a complete quotient > 1");
}

std::strong_ordering LambdaValue::vs_k_gap() const {
    // sqrt(alpha) - 1 vs sqrt(tau) - 1  <=>  alpha vs tau
    return tail_.cmp(golden_ratio());
}

std::strong_ordering LambdaValue::vs_sqrt2_minus1() const {
    // sqrt(alpha) - 1 vs sqrt(2) - 1  <=>  alpha vs 2
    return tail_.cmp_rat(Rat(2));
}

std::strong_ordering LambdaValue::vs(const LambdaValue& o) const { return tail_.cmp(o.tail_); }

RationalInterval LambdaValue::enclose(const Rat& width) const {
    return enclose_sqrt(tail_, width).shift(Rat(-1));
}

LambdaValue lambda(const PartialQuotients& pq, std::size_t n) {
    return LambdaValue(tail(pq, n + 1));
}

// ---------------------------------------------------------------- mirrors ---

MirrorReport mirror(const PartialQuotients& pq, std::size_t n) {
    if (n < 1) raise(Errc::precondition_violated, "mirror needs n >= 1");
    std::vector<Int> rev;
    rev.reserve(n);
    for (std::size_t i = n; i >= 1; --i) rev.push_back(pq.digit(i));
    const auto cv = convergents_upto_index(pq, n);
    MirrorReport rep;
    rep.n = n;
    rep.q_lo = cv[n - 1].q;
    rep.q_hi = cv[n].q;
    rep.reversed_digits = canonical_unit_digits(std::move(rev));
    rep.euclid_digits = unit_ratio_digits(rep.q_lo, rep.q_hi);
    rep.agrees = rep.reversed_digits == rep.euclid_digits;
    return rep;
}

MirrorReport second_mirror(const PartialQuotients& pq, std::size_t n) {
    if (n < 2) raise(Errc::precondition_violated, "second mirror needs n >= 2");
    if (pq.digit(n) != 1)
        raise(Errc::precondition_violated, "second mirror requires a_n = 1");
    std::vector<Int> rev;
    rev.reserve(n - 1);
    rev.push_back(pq.digit(n - 1) + 1);
    for (std::size_t i = n - 2; i >= 1; --i) rev.push_back(pq.digit(i));
    const auto cv = convergents_upto_index(pq, n);
    MirrorReport rep;
    rep.n = n;
    rep.q_lo = cv[n - 2].q;
    rep.q_hi = cv[n].q;
    rep.reversed_digits = canonical_unit_digits(std::move(rev));
    rep.euclid_digits = unit_ratio_digits(rep.q_lo, rep.q_hi);
    rep.agrees = rep.reversed_digits == rep.euclid_digits;
    return rep;
}

// ------------------------------------------------------------ equivalence ---

std::optional<ShiftEquivalence> integer_shift_equiv(const QuadraticSurd& alpha,
                                                    const QuadraticSurd& beta) {
    if (alpha.is_rational() || beta.is_rational())
        raise(Errc::precondition_violated, "equivalence gate needs two irrational numbers");
    if (alpha.d() != beta.d()) return std::nullopt;  // distinct fields, never equivalent
    const QuadraticSurd diff = beta.sub(alpha);
    if (diff.is_rational()) {
        const Rat r = diff.rational_value();
        if (den(r) == 1) return ShiftEquivalence{+1, num(r)};
    }
    const QuadraticSurd sum = beta.add(alpha);
    if (sum.is_rational()) {
        const Rat r = sum.rational_value();
        if (den(r) == 1) return ShiftEquivalence{-1, num(r)};
    }
    return std::nullopt;
}

}  // namespace psicf
