#pragma once

// The irrationality-measure step function psi(t) = min_{1<=q<=t} ||q x||
// and every search that runs on top of it.  psi is non-increasing and drops
// exactly at the convergent denominators, so all searches reduce to finitely
// many merged step intervals; nothing here samples t.
//
// Certification policy: a claim about a step (gap ratio vs a threshold,
// reciprocal gap vs K*t, a sign) is decided exactly whenever both psi values
// live in one quadratic field (the ratio is then itself a surd), and by
// adaptive interval refinement otherwise, shrinking to width 1e-40 before
// giving up.  Finite-prefix curves carry fixed certified bounds instead of
// exact values; claims their bounds cannot settle are omitted, never guessed.

#include <optional>
#include <vector>

#include "psicf/cf.hpp"

namespace psicf {

// A continued fraction with cached convergents, exact step values xi_n, and
// (for periodic inputs) the exact number behind it.
class PsiCurve {
  public:
    explicit PsiCurve(PartialQuotients pq);
    explicit PsiCurve(const QuadraticSurd& x);

    const PartialQuotients& digits() const { return pq_; }
    bool has_value() const { return value_.has_value(); }
    const QuadraticSurd& value() const;  // throws horizon_exceeded for prefixes
    const ValidityHorizon& horizon() const { return horizon_; }

    const Convergent& convergent(std::size_t n) const;
    // Largest n with q_n <= t (ties resolved to the larger index).
    std::size_t locate(const Rat& t) const;
    // xi_n = |q_n x - p_n| exactly; throws horizon_exceeded for prefixes.
    const QuadraticSurd& error(std::size_t n) const;
    // Certified bounds 1/(q_{n+1}+q_n) <= xi_n <= 1/q_{n+1}; valid (and the
    // best available information) for finite prefixes too.
    RationalInterval error_bounds(std::size_t n) const;

  private:
    void grow_to_index(std::size_t n) const;
    void grow_past(const Rat& t) const;

    PartialQuotients pq_;
    std::optional<QuadraticSurd> value_;
    ValidityHorizon horizon_;
    mutable std::vector<Convergent> cv_;
    mutable std::vector<QuadraticSurd> xi_;
};

// One evaluation psi(t).
struct PsiValue {
    Rat t;
    std::size_t n;  // q_n <= t < q_{n+1}
    Int q;
    Int p;
    std::optional<QuadraticSurd> exact;  // xi_n when the number is determined
    RationalInterval bounds;             // always certified
};
PsiValue psi(const PsiCurve& curve, const Rat& t);

// The value of one curve on one merged step.
struct StepValue {
    std::size_t n;
    Int q, p;
    std::optional<QuadraticSurd> exact;
    RationalInterval bounds;
};

// [t_lo, t_hi) on which both curves are constant.
struct StepInterval {
    Int t_lo, t_hi;
    StepValue a, b;
};

// Sorted tiling of [t_lo, t_hi) by merged steps (integer breakpoints are the
// union of both denominator lists).
std::vector<StepInterval> merged_breakpoints(const PsiCurve& a, const PsiCurve& b, const Int& t_lo,
                                             const Int& t_hi);

struct Threshold {
    static Threshold k_gap() { return {true, Rat(0)}; }
    static Threshold rational(Rat v);  // v >= 0

    bool is_k;
    Rat value;  // meaningful when !is_k
};

enum class CertMethod { exact, interval };
const char* cert_method_name(CertMethod m);

// A step on which |psi_a - psi_b| >= threshold * min(psi_a, psi_b), with the
// certification that established it.
struct GapWitness {
    StepInterval step;
    std::strong_ordering vs_threshold = std::strong_ordering::greater;
    CertMethod method = CertMethod::exact;
    Rat width;               // interval width that separated (0 when exact)
    RationalInterval ratio;  // reporting enclosure of the gap ratio
};

// All certified witnesses on [t_min, t_max).  Throws Errc::equivalent_pair
// when beta = +-alpha + integer (such pairs have identical psi).  An empty
// result for a finite window is a legal outcome.
std::vector<GapWitness> find_gap_witnesses(const PsiCurve& a, const PsiCurve& b, const Int& t_min,
                                           const Int& t_max, const Threshold& threshold);

// The two-pronged breakpoint witness at q_n: requires lambda_n(alpha) >= K
// and q_n not a denominator of beta (each checked, with the failed
// hypothesis named).  Produces a certified witness either on [q_n - 1, q_n)
// with psi_alpha = xi_{n-1}, or at t = q_n with psi_alpha = xi_n; `l` is the
// alpha index whose error carries the witness (n-1 or n).  The swapped-roles
// variant is the same call with the curves exchanged.
enum class StepGapCase { above, below, inside };
struct BreakpointWitness {
    std::size_t n;
    std::size_t l;
    StepGapCase regime;  // where psi_beta(q_n) fell relative to [xi_n, xi_{n-1}]
    GapWitness witness;
};
BreakpointWitness breakpoint_witness(const PsiCurve& a, const PsiCurve& b, std::size_t n);

// How eta relates to the step envelope [xi_nu, xi_{nu-1}], with the exact
// relative-gap comparisons squared to stay inside quadratic fields:
//   upper_vs:  eta^2            vs  alpha_{nu+1} * xi_nu^2
//   lower_vs:  xi_{nu-1}^2      vs  alpha_{nu+1} * eta^2
// above  (eta >= xi_{nu-1}): holds iff upper strictly greater
// below  (eta <= xi_nu):     holds iff lower strictly greater
// inside:                    holds iff upper >= or lower >= (the product of
//                            the two relative gaps is exactly alpha_{nu+1},
//                            so at least one side always reaches lambda_nu)
struct StepGapReport {
    StepGapCase regime = StepGapCase::inside;
    std::strong_ordering upper_vs = std::strong_ordering::equal;
    std::strong_ordering lower_vs = std::strong_ordering::equal;
    bool holds = false;
};
StepGapReport classify_step_gap(const PsiCurve& a, std::size_t nu, const QuadraticSurd& eta);
// Same check with eta given by its square (lets callers test eta of degree 4
// over the rationals, e.g. the geometric mean of xi_nu and xi_{nu-1}).
StepGapReport classify_step_gap_squared(const PsiCurve& a, std::size_t nu,
                                        const QuadraticSurd& eta_squared);

// Steps where sign(psi_a - psi_b) flips; zero-gap steps are skipped, a flip
// is two consecutive nonzero signs that differ.
struct SignFlip {
    StepInterval before, after;
    int from = 0, to = 0;
};
std::vector<SignFlip> find_sign_changes(const PsiCurve& a, const PsiCurve& b, const Int& t_max);

// First step in [t_min, t_max) whose left endpoint t satisfies
// |1/psi_a(t) - 1/psi_b(t)| >= K * t.  nullopt = no witness in the window
// (legal; widen the window).
struct ReciprocalWitness {
    StepInterval step;
    Int t;
    RationalInterval gap;  // |1/psi_a - 1/psi_b| enclosure
    RationalInterval kt;   // K * t enclosure
    std::strong_ordering vs_kt = std::strong_ordering::greater;
    CertMethod method = CertMethod::exact;
    Rat width;
};
std::optional<ReciprocalWitness> find_reciprocal_witness(const PsiCurve& a, const PsiCurve& b,
                                                         const Int& t_min, const Int& t_max);

// xi_n * q_{n+1} < 1 exactly for every n <= upto_index (the sharpened form
// of the 1/t upper bound, checked at the tight right edge of each step).
struct MinkowskiReport {
    std::size_t upto_index = 0;
    std::size_t argmax = 0;
    RationalInterval max_product;
    bool all_below_one = false;
};
MinkowskiReport check_minkowski(const PsiCurve& a, std::size_t upto_index);

// Shared-denominator classification: for q_n = s_m <= T, which of the six
// digit patterns the neighborhood satisfies.  The two hypothesis flags tell
// which pattern family was applicable at all.
enum class CoincidencePattern {
    i_equal,         // m = n, identical digits
    i_shift_alpha,   // m = n+1, (b) = (1, a_1 - 1, a_2, ..., a_n)
    i_shift_beta,    // n = m+1, (1, b_1 - 1, b_2, ..., b_m) = (a_1, ..., a_{m+1})
    ii_case1,        // m = n, (b) = (1, a_1 - 1, a_2, ..., a_{n-2}, a_{n-1}+1)
    ii_case2,        // m = n-1, (b) = (a_1, ..., a_{n-2}, a_{n-1}+1)
    ii_case3,        // m = n-2, (1, b_1 - 1, ..., b_m) = (a_1, ..., a_m, a_{m+1}+1)
    unclassified,
};
const char* coincidence_pattern_name(CoincidencePattern p);

struct CoincidenceRecord {
    Int q;             // the shared denominator value
    std::size_t n, m;  // q_n (alpha) = s_m (beta)
    bool hyp_first;    // q_{n-1} = s_{m-1}
    bool hyp_second;   // a_n = 1 and q_{n-2} = s_{m-1}
    CoincidencePattern pattern;
};
std::vector<CoincidenceRecord> classify_coincidences(const PsiCurve& a, const PsiCurve& b,
                                                     const Int& t_max);

}  // namespace psicf
