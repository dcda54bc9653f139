#pragma once

// Constructive sharpness of the K threshold.  For any eps > 0 we build a
// companion number phi, not integer-shift equivalent to the golden ratio
// tau, whose step curve interlaces tau's so tightly that the relative gap
// between the two curves eventually stays within ~eps of K.
//
// The construction: pick an integer seed (U, V) and run the Fibonacci
// recurrence X_{j+1} = X_j + X_{j-1} from X_0 = U, X_1 = V.  The growth
// constant of X is A*sqrt(5) = V + U/tau; choosing the seed with
// |A*sqrt(5) - sqrt(tau)| < eps makes X interleave the Fibonacci numbers,
// F_n < X_n < F_{n+1}, and the number phi = [0; b_1, ..., b_w, 1, 1, ...]
// (b = reversed digits of X_{k-1}/X_k at the first increasing positive
// pair) has denominators s_m = X_{m+n0} from some onset m.  The two step
// curves then alternate with level ratios A*sqrt(5) and tau/(A*sqrt(5)),
// both within 5*eps of sqrt(tau), so every relative gap on the merged steps
// is eventually below K + eps.

#include <optional>
#include <vector>

#include "psicf/cf.hpp"
#include "psicf/interval.hpp"
#include "psicf/numeric.hpp"
#include "psicf/surd.hpp"

namespace psicf {

// Seed of the shifted Fibonacci recurrence, with a certified bound on
// |V + U/tau - sqrt(tau)|.  The bound is established exactly (one squaring
// against tau); the interval is for reporting only.
struct SeedPair {
    Int U;
    Int V;
    RationalInterval achieved_error;
};

// First (U, V) with gcd(U, V) = 1, positive growth constant, and certified
// error < eps, in the deterministic order: |U| ascending with +U before -U,
// then |V| ascending with +V before -V.  Raises search_budget_exceeded when
// |U| passes 10^9.
SeedPair find_uv(const Rat& eps);

struct Construction {
    Rat epsilon;
    SeedPair seed;
    std::vector<Int> x;  // X_0 .. X_k
    std::size_t k = 0;   // minimal k with 1 <= X_{k-1} < X_k
    std::vector<Int> b;  // reversed digits of X_{k-1}/X_k
    std::size_t w = 0;   // b.size()
    long long n0 = 0;    // k - w; the alignment offset in s_m = X_{m+n0}
    QuadraticSurd phi;   // value of [0; b_1, ..., b_w, 1, 1, 1, ...]
    PartialQuotients phi_digits = PartialQuotients::prefix(Int(0), {});
};

// Runs the seed stream, skipping seeds whose phi degenerates into a shift
// of tau itself (those pairs are excluded by the gap theory, and their
// curves coincide anyway).
Construction build_construction(const Rat& eps);

struct InterleavingReport {
    std::size_t n_max = 0;
    bool holds_eventually = false;  // F_n < X_n < F_{n+1} for a trailing run
    std::size_t first_valid = 0;    // first index of that trailing run
    bool closed_form_ok = false;    // X_n = A tau^n + B (-tau)^{-n} exactly
    std::optional<std::size_t> alignment_onset;  // first m with s_j = X_{j+n0} onward
    bool pass = false;
};
InterleavingReport verify_interleaving(const Construction& c, std::size_t n_max);

// Sweeps the merged steps of tau and phi over t in [F_{n_min}, F_{n_max})
// and maximizes the relative gap |psi_tau - psi_phi| / min(...) exactly
// (both curves live in Q(sqrt 5)).  Passing means the maximum lies in
// [K - slack, K + eps + slack] and both characteristic level ratios lie
// within 5*eps of sqrt(tau); every comparison against the degree-4
// constants is exact (one extra squaring).
struct PiiReport {
    std::size_t n_min = 0, n_max = 0;
    Int t_lo, t_hi;
    QuadraticSurd max_ratio;  // exact maximum of the relative gap
    RationalInterval max_ratio_bounds;
    Int argmax_t;
    Rat slack;
    bool ratio_within = false;
    QuadraticSurd level_ratio_low;   // A*sqrt(5)   (xi_{n-1} / eta at aligned steps)
    QuadraticSurd level_ratio_high;  // tau/(A*sqrt(5))   (eta / xi_n)
    bool levels_within = false;
    bool pass = false;
};
PiiReport verify_pii(const Construction& c, std::size_t n_min, std::size_t n_max,
                     const Rat& slack);

}  // namespace psicf
