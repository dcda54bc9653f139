#pragma once

// Continued fractions of quadratic surds: expansion with period detection,
// exact reconstruction, convergents, complete quotients (tails), the lambda
// values sqrt(alpha_{n+1}) - 1, mirror identities for denominator ratios,
// and the integer-shift equivalence gate.
//
// Index conventions (fixed here because they matter):
//   digits          a_0; a_1, a_2, ...        (a_n >= 1 for n >= 1)
//   convergents     p_{-1}=1, q_{-1}=0, p_0=a_0, q_0=1,
//                   p_{n+1} = a_{n+1} p_n + p_{n-1}   (same for q)
//   tails           alpha_n = [a_n; a_{n+1}, ...],  alpha_n = a_n + 1/alpha_{n+1}
//   errors          xi_n = |q_n alpha - p_n|,  xi_{n-1}/xi_n = alpha_{n+1}
// With these seeds the golden ratio has q_n = 1, 1, 2, 3, 5, 8, ... so q_n
// is the (n+1)-st Fibonacci number.

#include <optional>
#include <vector>

#include "psicf/interval.hpp"
#include "psicf/surd.hpp"

namespace psicf {

// Literal grammar: `[a0; a1, a2, (c1,c2)]` — parenthesized tail repeats
// forever; no parentheses means a finite prefix whose continuation is
// unknown (carries a validity horizon instead of being rejected).
class PartialQuotients {
  public:
    static PartialQuotients periodic(Int a0, std::vector<Int> preperiod, std::vector<Int> period);
    static PartialQuotients prefix(Int a0, std::vector<Int> digits);
    static PartialQuotients parse(std::string_view text);

    const Int& a0() const { return a0_; }
    const std::vector<Int>& preperiod() const { return preperiod_; }
    const std::vector<Int>& period() const { return period_; }
    bool is_periodic() const { return !period_.empty(); }

    // a_n.  Periodic inputs answer for every n; finite prefixes throw
    // Errc::horizon_exceeded past their last digit.
    Int digit(std::size_t n) const;
    bool has_digit(std::size_t n) const;
    std::size_t last_known_index() const;  // prefix inputs: largest valid n

    std::string format() const;

    bool operator==(const PartialQuotients&) const = default;

  private:
    PartialQuotients() : a0_(0) {}
    void canonicalize();  // digit validation, minimal period, earliest offset

    Int a0_;
    std::vector<Int> preperiod_;
    std::vector<Int> period_;
};

struct Convergent {
    std::size_t n;
    Int p;
    Int q;
};

// What part of the number is certified.  Periodic expansions are certified
// everywhere; finite prefixes only up to their last digit, and psi queries
// only strictly below max_t = q_N (locating t needs the next denominator).
struct ValidityHorizon {
    bool unbounded = false;
    std::size_t max_index = 0;  // meaningful when !unbounded
    Int max_t = 0;              // meaningful when !unbounded
};
ValidityHorizon horizon(const PartialQuotients& pq);

// CF expansion by floor/reciprocal steps with state-recurrence period
// detection (the complete-quotient state must recur by Lagrange's theorem).
// Throws Errc::rational_input for rationals.
PartialQuotients expand_surd(const QuadraticSurd& x);

// Exact value of an eventually periodic CF.  Requires a nonempty period.
QuadraticSurd cf_to_surd(const PartialQuotients& pq);

// Convergents by the standard recurrence.  upto_value yields every n with
// q_n <= T plus one extra convergent (needed to place t in [q_n, q_{n+1})).
std::vector<Convergent> convergents_upto_index(const PartialQuotients& pq, std::size_t n);
std::vector<Convergent> convergents_upto_value(const PartialQuotients& pq, const Int& T);

// xi_n = |q_n alpha - p_n| for the exact number alpha behind the CF.
QuadraticSurd approximation_error(const QuadraticSurd& alpha, const Convergent& cv);

// Complete quotient alpha_n (periodic inputs only; a finite prefix does not
// determine its tails).
QuadraticSurd tail(const PartialQuotients& pq, std::size_t n);

// lambda_n = sqrt(alpha_{n+1}) - 1, kept as the exact tail so comparisons
// reduce to one squaring: lambda >= K <=> alpha_{n+1} >= tau, and
// lambda < sqrt(2) - 1 <=> alpha_{n+1} < 2.
class LambdaValue {
  public:
    explicit LambdaValue(QuadraticSurd tail_value);

    const QuadraticSurd& tail_value() const { return tail_; }  // alpha_{n+1}
    std::strong_ordering vs_k_gap() const;
    std::strong_ordering vs_sqrt2_minus1() const;
    std::strong_ordering vs(const LambdaValue& o) const;
    RationalInterval enclose(const Rat& width) const;  // of lambda itself

  private:
    QuadraticSurd tail_;
};
LambdaValue lambda(const PartialQuotients& pq, std::size_t n);

// Mirror identity q_{n-1}/q_n = [0; a_n, ..., a_1]: the report carries the
// digit list obtained by reversing the partial quotients and the one read
// off the rational by the Euclidean algorithm, both in canonical form (no
// trailing 1 unless the list is exactly [1]).  They must agree.
struct MirrorReport {
    std::size_t n = 0;
    Int q_lo;  // numerator of the ratio (q_{n-1}, or q_{n-2} for the second form)
    Int q_hi;  // q_n
    std::vector<Int> reversed_digits;
    std::vector<Int> euclid_digits;
    bool agrees = false;
};
MirrorReport mirror(const PartialQuotients& pq, std::size_t n);  // n >= 1

// Second mirror form, valid when a_n = 1 (n >= 2):
//   q_{n-2}/q_n = [0; a_{n-1}+1, a_{n-2}, ..., a_1].
// Throws Errc::precondition_violated when a_n != 1.
MirrorReport second_mirror(const PartialQuotients& pq, std::size_t n);

// The excluded-pair gate: beta = sign*alpha + n exactly, if such integers
// exist.  Pairs in distinct radicand fields are never equivalent.
struct ShiftEquivalence {
    int sign;  // +1 or -1
    Int n;
};
std::optional<ShiftEquivalence> integer_shift_equiv(const QuadraticSurd& alpha,
                                                    const QuadraticSurd& beta);

}  // namespace psicf
