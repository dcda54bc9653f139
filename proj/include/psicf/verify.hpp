#pragma once

// Seeded property suites: randomized inputs, independent oracles, and a
// machine-readable pass/fail summary.  Everything is deterministic in the
// seed -- the generator is wrapped so no library distribution (whose output
// may differ across standard libraries) is involved.
//
// Suite selectors (fixed CLI vocabulary):
//   oracle      psi against a brute-force interval-arithmetic minimum
//   minkowski   xi_n * q_{n+1} < 1 exactly
//   hilfssatz1  the step-envelope gap dichotomy holds for every eta > 0
//   hilfssatz2  small-lambda => next digit 1; adjacent lambdas reach K;
//               the golden ratio sits exactly at K
//   hilfssatz3  hypothesis-covered shared denominators always classify
//   mirror      denominator-ratio mirror identities
//   all         every suite above, in that order

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "psicf/psi.hpp"

namespace psicf {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t n);         // uniform in [0, n), rejection sampled
    long long range(long long lo, long long hi);  // uniform inclusive
    bool coin() { return below(2) != 0; }

  private:
    std::mt19937_64 eng_;
};

// Irrational surd with |a|, |b| <= 50 (b != 0), c in [1, 50], and d <= 200
// squarefree (so distinct d means distinct field).
QuadraticSurd random_surd(Rng& rng);
QuadraticSurd random_surd_in_window(Rng& rng);  // additionally 0 < x < 3
std::pair<QuadraticSurd, QuadraticSurd> random_nonequivalent_pair(Rng& rng);
std::pair<QuadraticSurd, QuadraticSurd> random_equivalent_pair(Rng& rng);  // beta = +-alpha + n

// Independent psi oracle: the running minimum of ||q*alpha|| over q <= t,
// decided only by interval arithmetic (enclosures of width 1e-55, refined
// further whenever two candidates overlap; exact ties are impossible for
// irrational alpha).  Entry t-1 holds the argmin (q, nearest integer m) for
// the window q <= t.
std::vector<std::pair<Int, Int>> brute_force_psi(const QuadraticSurd& alpha, std::size_t t_max);

struct SuiteResult {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t cases = 0;       // random inputs consumed
    std::size_t checks = 0;      // individual assertions evaluated
    std::size_t violations = 0;  // failed assertions
    std::vector<std::string> notes;  // first few violation descriptions
    bool pass() const { return violations == 0; }
};

SuiteResult run_oracle_suite(std::uint64_t seed, std::size_t count);
SuiteResult run_minkowski_suite(std::uint64_t seed, std::size_t count);
SuiteResult run_step_gap_suite(std::uint64_t seed, std::size_t count);     // "hilfssatz1"
SuiteResult run_lambda_suite(std::uint64_t seed, std::size_t count);       // "hilfssatz2"
SuiteResult run_coincidence_suite(std::uint64_t seed, std::size_t count);  // "hilfssatz3"
SuiteResult run_mirror_suite(std::uint64_t seed, std::size_t count);

// Dispatch on a selector; raises parse_error for unknown names.
std::vector<SuiteResult> run_suites(const std::string& selector, std::uint64_t seed,
                                    std::size_t count);

}  // namespace psicf
