#include "psicf/verify.hpp"

#include <limits>
#include <sstream>

#include "psicf/errors.hpp"

namespace psicf {

namespace {

constexpr std::size_t kMaxNotes = 5;

void note_violation(SuiteResult& r, const std::string& text) {
    ++r.violations;
    if (r.notes.size() < kMaxNotes) r.notes.push_back(text);
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) raise(Errc::internal_error, "empty sampling range");
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        const std::uint64_t v = eng_();
        if (v < limit) return v % n;
    }
}

long long Rng::range(long long lo, long long hi) {
    if (lo > hi) raise(Errc::internal_error, "empty sampling range");
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
}

QuadraticSurd random_surd(Rng& rng) {
    for (;;) {
        const long long a = rng.range(-50, 50);
        const long long b = rng.range(-50, 50);
        if (b == 0) continue;
        const long long c = rng.range(1, 50);
        const long long d = rng.range(2, 200);
        if (extract_square_part(Int(d)).core != d) continue;
        return QuadraticSurd(Int(a), Int(b), Int(c), Int(d));
    }
}

QuadraticSurd random_surd_in_window(Rng& rng) {
    for (;;) {
        QuadraticSurd x = random_surd(rng);
        if (x.sign() > 0 && x.cmp_rat(Rat(3)) == std::strong_ordering::less) return x;
    }
}

std::pair<QuadraticSurd, QuadraticSurd> random_nonequivalent_pair(Rng& rng) {
    for (;;) {
        QuadraticSurd a = random_surd(rng);
        QuadraticSurd b = random_surd(rng);
        if (!integer_shift_equiv(a, b)) return {std::move(a), std::move(b)};
    }
}

std::pair<QuadraticSurd, QuadraticSurd> random_equivalent_pair(Rng& rng) {
    QuadraticSurd a = random_surd(rng);
    const int sign = rng.coin() ? 1 : -1;
    const long long shift = rng.range(-10, 10);
    QuadraticSurd b = a.mul_rat(Rat(sign)).add_rat(Rat(shift));
    return {std::move(a), std::move(b)};
}

std::vector<std::pair<Int, Int>> brute_force_psi(const QuadraticSurd& alpha,
                                                 std::size_t t_max) {
    // One tight base enclosure keeps every scaled candidate below 1e-55 wide.
    Rat base = pow10_neg(55) / Rat(Int(t_max) + 1);
    RationalInterval aiv = enclose(alpha, base);
    Rat mid = aiv.midpoint();
    const auto dist_at = [&](const Int& q, const Int& m) {
        return aiv.scale(Rat(q)).shift(Rat(-m)).abs();
    };

    Int best_q = 0, best_m = 0;
    RationalInterval best;
    std::vector<std::pair<Int, Int>> out;
    out.reserve(t_max);
    const Rat half(Int(1), Int(2));
    for (std::size_t t = 1; t <= t_max; ++t) {
        const Int q(t);
        Int m = round_rat(Rat(q) * mid);
        RationalInterval cand = dist_at(q, m);
        unsigned refinements = 0;
        // Certify m is the nearest integer, then order against the running
        // minimum; refine the base enclosure until both are decided.
        for (;;) {
            if (!(cand.hi() < half)) {
                // undecided nearest-integer certificate
            } else if (best_q == 0 || cand.hi() < best.lo() || cand.lo() > best.hi()) {
                break;
            }
            if (++refinements > 30)
                raise(Errc::precision_exhausted, "oracle candidates would not separate");
            base *= pow10_neg(10);
            aiv = enclose(alpha, base);
            mid = aiv.midpoint();
            m = round_rat(Rat(q) * mid);
            cand = dist_at(q, m);
            if (best_q != 0) best = dist_at(best_q, best_m);
        }
        if (best_q == 0 || cand.hi() < best.lo()) {
            best_q = q;
            best_m = m;
            best = cand;
        }
        out.emplace_back(best_q, best_m);
    }
    return out;
}

SuiteResult run_oracle_suite(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"oracle", seed, 0, 0, 0, {}};
    Rng rng(seed);
    constexpr std::size_t t_max = 2000;
    for (std::size_t i = 0; i < count; ++i) {
        const QuadraticSurd x = random_surd_in_window(rng);
        const PsiCurve curve(x);
        const auto oracle = brute_force_psi(x, t_max);
        ++r.cases;
        for (std::size_t t = 1; t <= t_max; ++t) {
            ++r.checks;
            const auto& [bq, bm] = oracle[t - 1];
            const PsiValue v = psi(curve, Rat(Int(t)));
            bool ok = v.q == bq && v.p == bm && v.exact.has_value();
            if (ok) {
                const QuadraticSurd recon = x.mul_rat(Rat(bq)).add_rat(Rat(-bm)).abs();
                ok = recon.cmp(*v.exact) == std::strong_ordering::equal;
            }
            if (!ok) {
                std::ostringstream msg;
                msg << "case " << i << " t=" << t << ": engine q=" << v.q
                    << " oracle q=" << bq;
                note_violation(r, msg.str());
            }
        }
    }
    return r;
}

SuiteResult run_minkowski_suite(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"minkowski", seed, 0, 0, 0, {}};
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const QuadraticSurd x = random_surd(rng);
        ++r.cases;
        r.checks += 51;
        try {
            const MinkowskiReport rep = check_minkowski(PsiCurve(x), 50);
            if (!rep.all_below_one)
                note_violation(r, "case " + std::to_string(i) + ": product reached 1");
        } catch (const Error& e) {
            note_violation(r, "case " + std::to_string(i) + ": " + e.what());
        }
    }
    return r;
}

SuiteResult run_step_gap_suite(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"hilfssatz1", seed, 0, 0, 0, {}};
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const QuadraticSurd x = random_surd(rng);
        const PsiCurve curve(x);
        const std::size_t nu = static_cast<std::size_t>(rng.range(1, 30));
        const QuadraticSurd& xi = curve.error(nu);
        const QuadraticSurd& xi_prev = curve.error(nu - 1);
        ++r.cases;

        const auto expect = [&](const char* label, const StepGapReport& rep,
                                StepGapCase regime) {
            ++r.checks;
            if (!rep.holds || rep.regime != regime)
                note_violation(r, "case " + std::to_string(i) + " nu=" + std::to_string(nu) +
                                      ": " + label + " failed");
        };
        // eta at or above the upper envelope edge
        expect("above",
               classify_step_gap(
                   curve, nu,
                   xi_prev.mul_rat(Rat(Int(10 + rng.range(0, 20)), Int(10)))),
               StepGapCase::above);
        // eta at or below the lower edge
        expect("below",
               classify_step_gap(curve, nu,
                                 xi.mul_rat(Rat(Int(rng.range(1, 10)), Int(10)))),
               StepGapCase::below);
        // strictly inside: the midpoint
        expect("inside",
               classify_step_gap(curve, nu, xi.add(xi_prev).mul_rat(Rat(Int(1), Int(2)))),
               StepGapCase::inside);
        // the geometric mean (degree 4 over Q): both relative gaps equal lambda
        {
            const StepGapReport rep =
                classify_step_gap_squared(curve, nu, xi.mul(xi_prev));
            ++r.checks;
            if (!(rep.holds && rep.regime == StepGapCase::inside &&
                  rep.upper_vs == std::strong_ordering::equal &&
                  rep.lower_vs == std::strong_ordering::equal))
                note_violation(r, "case " + std::to_string(i) +
                                      ": geometric-mean equality failed");
        }
        // cross-field eta: the dichotomy holds for every positive eta
        {
            QuadraticSurd eta = random_surd(rng).abs();
            while (eta.sign() <= 0) eta = random_surd(rng).abs();
            const StepGapReport rep = classify_step_gap(curve, nu, eta);
            ++r.checks;
            if (!rep.holds)
                note_violation(r, "case " + std::to_string(i) + ": cross-field eta failed");
        }
    }
    return r;
}

SuiteResult run_lambda_suite(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"hilfssatz2", seed, 0, 0, 0, {}};
    // Fixed edge first: the golden ratio sits exactly at K for every n.
    const PartialQuotients golden_pq =
        PartialQuotients::periodic(Int(1), {}, {Int(1)});
    for (std::size_t n = 0; n <= 50; ++n) {
        ++r.checks;
        if (lambda(golden_pq, n).vs_k_gap() != std::strong_ordering::equal)
            note_violation(r, "golden ratio lambda_" + std::to_string(n) + " != K");
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const QuadraticSurd x = random_surd(rng);
        const PartialQuotients pq = expand_surd(x);
        ++r.cases;
        LambdaValue prev = lambda(pq, 0);
        if (prev.vs_sqrt2_minus1() == std::strong_ordering::less) {
            ++r.checks;
            if (pq.digit(1) != 1)
                note_violation(r, "case " + std::to_string(i) + ": small lambda_0, a_1 != 1");
        }
        for (std::size_t n = 1; n <= 50; ++n) {
            LambdaValue cur = lambda(pq, n);
            if (cur.vs_sqrt2_minus1() == std::strong_ordering::less) {
                ++r.checks;
                if (pq.digit(n + 1) != 1)
                    note_violation(r, "case " + std::to_string(i) + " n=" +
                                          std::to_string(n) + ": small lambda, digit != 1");
            }
            ++r.checks;
            const LambdaValue& larger =
                prev.vs(cur) == std::strong_ordering::less ? cur : prev;
            if (larger.vs_k_gap() == std::strong_ordering::less)
                note_violation(r, "case " + std::to_string(i) + " n=" + std::to_string(n) +
                                      ": max(lambda_{n-1}, lambda_n) < K");
            prev = std::move(cur);
        }
    }
    return r;
}

SuiteResult run_coincidence_suite(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"hilfssatz3", seed, 0, 0, 0, {}};
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const QuadraticSurd a = random_surd(rng);
        const QuadraticSurd b = random_surd(rng);
        ++r.cases;
        const auto records =
            classify_coincidences(PsiCurve(a), PsiCurve(b), Int(10000));
        for (const CoincidenceRecord& rec : records) {
            if (!rec.hyp_first && !rec.hyp_second) continue;
            ++r.checks;
            if (rec.pattern == CoincidencePattern::unclassified) {
                std::ostringstream msg;
                msg << "case " << i << " q=" << rec.q << " (n=" << rec.n << ", m=" << rec.m
                    << "): hypotheses hold but no pattern matched";
                note_violation(r, msg.str());
            }
        }
    }
    return r;
}

SuiteResult run_mirror_suite(std::uint64_t seed, std::size_t count) {
    SuiteResult r{"mirror", seed, 0, 0, 0, {}};
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const QuadraticSurd x = random_surd(rng);
        const PartialQuotients pq = expand_surd(x);
        ++r.cases;
        for (std::size_t n = 1; n <= 30; ++n) {
            ++r.checks;
            if (!mirror(pq, n).agrees)
                note_violation(r, "case " + std::to_string(i) + " n=" + std::to_string(n) +
                                      ": mirror mismatch");
            if (n >= 2 && pq.digit(n) == 1) {
                ++r.checks;
                if (!second_mirror(pq, n).agrees)
                    note_violation(r, "case " + std::to_string(i) + " n=" +
                                          std::to_string(n) + ": second mirror mismatch");
            }
        }
    }
    return r;
}

std::vector<SuiteResult> run_suites(const std::string& selector, std::uint64_t seed,
                                    std::size_t count) {
    if (selector == "oracle") return {run_oracle_suite(seed, count)};
    if (selector == "minkowski") return {run_minkowski_suite(seed, count)};
    if (selector == "hilfssatz1") return {run_step_gap_suite(seed, count)};
    if (selector == "hilfssatz2") return {run_lambda_suite(seed, count)};
    if (selector == "hilfssatz3") return {run_coincidence_suite(seed, count)};
    if (selector == "mirror") return {run_mirror_suite(seed, count)};
    if (selector == "all")
        return {run_oracle_suite(seed, count),      run_minkowski_suite(seed, count),
                run_step_gap_suite(seed, count),    run_lambda_suite(seed, count),
                run_coincidence_suite(seed, count), run_mirror_suite(seed, count)};
    raise(Errc::parse_error,
          "unknown suite (expected oracle, minkowski, hilfssatz1, hilfssatz2, "
          "hilfssatz3, mirror, or all)");
}

}  // namespace psicf
