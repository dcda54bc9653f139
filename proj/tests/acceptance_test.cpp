// Acceptance gate: one line per criterion, every tolerance pinned here.
// Exit status 0 only if all ten criteria pass.

#include <chrono>
#include <compare>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "psicf/extremal.hpp"
#include "psicf/psi.hpp"
#include "psicf/verify.hpp"
#include "support/testutil.hpp"

using namespace psicf;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int criterion, bool pass, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---- 1: psi equals the brute-force minimum -----------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult r = run_oracle_suite(7, 100);
    const double dt = seconds_since(t0);
    const bool pass = r.violations == 0 && dt < 60.0;
    report(1, pass,
           fmt("psi oracle, 100 surds x t in [1,2000]: %zu checks, %zu violations, %.1fs "
               "(budget 60s)",
               r.checks, r.violations, dt));
}

// ---- 2: sharpened Minkowski product ------------------------------------------

void criterion_2() {
    const SuiteResult r = run_minkowski_suite(7, 100);
    report(2, r.violations == 0,
           fmt("xi_n * q_{n+1} < 1 exactly, 100 surds, n <= 50: %zu checks, %zu violations",
               r.checks, r.violations));
}

// ---- 3: small-lambda digit law and adjacent-maximum law ----------------------

void criterion_3() {
    const SuiteResult r = run_lambda_suite(7, 100);
    report(3, r.violations == 0,
           fmt("lambda laws (small => digit 1; max(adjacent) >= K), 100 surds, n <= 50: "
               "%zu checks, %zu violations",
               r.checks, r.violations));
}

// ---- 4: the golden ratio sits exactly at K -----------------------------------

void criterion_4() {
    const PartialQuotients golden = PartialQuotients::periodic(Int(1), {}, {Int(1)});
    std::size_t equal = 0;
    for (std::size_t n = 0; n <= 50; ++n)
        if (lambda(golden, n).vs_k_gap() == std::strong_ordering::equal) ++equal;
    report(4, equal == 51,
           fmt("lambda_n(golden ratio) = K exactly (surd-vs-tau equality) for %zu/51 indices",
               equal));
}

// ---- 5: gap witnesses in every window [T, 1000 T) ----------------------------

bool witness_certified(const GapWitness& w) {
    if (w.vs_threshold == std::strong_ordering::less) return false;
    if (w.method == CertMethod::exact) return w.width == 0;
    return w.width <= pow10_neg(10);  // refinement succeeded within the cap
}

std::vector<std::pair<PsiCurve, PsiCurve>> make_pairs(std::size_t count) {
    Rng rng(7);
    std::vector<std::pair<PsiCurve, PsiCurve>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto [a, b] = random_nonequivalent_pair(rng);
        pairs.emplace_back(PsiCurve(a), PsiCurve(b));
    }
    return pairs;
}

void criterion_5(const std::vector<std::pair<PsiCurve, PsiCurve>>& pairs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t windows = 0, empty_windows = 0, bad_certs = 0;
    for (const auto& [a, b] : pairs) {
        for (long long T : {100LL, 1000LL, 10000LL}) {
            ++windows;
            const auto ws = find_gap_witnesses(a, b, Int(T), Int(1000 * T),
                                               Threshold::k_gap());
            if (ws.empty()) ++empty_windows;
            for (const GapWitness& w : ws)
                if (!witness_certified(w)) ++bad_certs;
        }
    }
    const double dt = seconds_since(t0);
    const bool pass = empty_windows == 0 && bad_certs == 0 && dt < 600.0;
    report(5, pass,
           fmt("K-gap witnesses, 200 pairs x T in {1e2,1e3,1e4} over [T,1000T): "
               "%zu/%zu windows nonempty, %zu bad certificates, %.1fs (budget 600s)",
               windows - empty_windows, windows, bad_certs, dt));
}

// ---- 6: sign changes up to 10^6 ----------------------------------------------

void criterion_6(const std::vector<std::pair<PsiCurve, PsiCurve>>& pairs) {
    std::size_t enough = 0;
    for (const auto& [a, b] : pairs)
        if (find_sign_changes(a, b, Int(1000000)).size() >= 3) ++enough;
    const double quota = double(enough) / double(pairs.size());
    report(6, quota >= 0.95,
           fmt("sign changes up to 1e6: %zu/%zu pairs with >= 3 flips (need 95%%)", enough,
               pairs.size()));
}

// ---- 7: reciprocal witnesses -------------------------------------------------

void criterion_7(const std::vector<std::pair<PsiCurve, PsiCurve>>& pairs) {
    std::size_t found = 0;
    const std::size_t total = 50;
    for (std::size_t i = 0; i < total; ++i) {
        const auto w =
            find_reciprocal_witness(pairs[i].first, pairs[i].second, Int(100), Int(1000000));
        if (w && w->vs_kt != std::strong_ordering::less) ++found;
    }
    report(7, found == total,
           fmt("|1/psi_a - 1/psi_b| >= K*t witnesses in [1e2,1e6): %zu/%zu pairs", found,
               total));
}

// ---- 8: the eps = 1/100 companion construction -------------------------------

void criterion_8() {
    const auto t0 = std::chrono::steady_clock::now();
    const Construction c = build_construction(Rat(1, 100));
    const bool seed_ok = c.seed.U == 15 && c.seed.V == -8;
    const bool err_ok =
        c.seed.achieved_error.lo() >= 0 && c.seed.achieved_error.hi() < Rat(1, 100);
    const InterleavingReport il = verify_interleaving(c, 40);
    // slack 1/50 makes ratio_within exactly "max in [K - 0.02, K + eps + 0.02]",
    // and levels_within is "both level ratios within 5*eps = 0.05 of sqrt(tau)".
    const PiiReport pii = verify_pii(c, 10, 40, Rat(1, 50));
    const double dt = seconds_since(t0);
    const bool pass = seed_ok && err_ok && il.pass && pii.ratio_within && pii.levels_within &&
                      pii.pass && dt < 30.0;
    report(8, pass,
           fmt("construction eps=1/100: seed (%s,%s), error < 1/100 %s, interleaving to 40 %s, "
               "max ratio in [K-0.02, K+0.03] %s, levels in sqrt(tau)+-0.05 %s, %.1fs "
               "(budget 30s)",
               c.seed.U.str().c_str(), c.seed.V.str().c_str(), err_ok ? "ok" : "BAD",
               il.pass ? "ok" : "BAD", pii.ratio_within ? "ok" : "BAD",
               pii.levels_within ? "ok" : "BAD", dt));
}

// ---- 9: the equivalence gate and exact psi equality --------------------------

void criterion_9() {
    Rng rng(7);
    std::size_t gated = 0, equal_values = 0;
    const std::size_t total = 50;
    for (std::size_t i = 0; i < total; ++i) {
        const auto [a, b] = random_equivalent_pair(rng);
        const PsiCurve ca(a), cb(b);
        try {
            find_gap_witnesses(ca, cb, Int(1), Int(100), Threshold::k_gap());
        } catch (const Error& e) {
            if (e.code() == Errc::equivalent_pair) ++gated;
        }
        bool all_equal = true;
        for (int t = 1; t <= 100; ++t) {
            const PsiValue va = psi(ca, Rat(t));
            const PsiValue vb = psi(cb, Rat(t));
            if (!va.exact || !vb.exact ||
                va.exact->cmp(*vb.exact) != std::strong_ordering::equal) {
                all_equal = false;
                break;
            }
        }
        if (all_equal) ++equal_values;
    }
    report(9, gated == total && equal_values == total,
           fmt("equivalent pairs beta = +-alpha + n: gate fired %zu/%zu, psi equal on 100 "
               "sampled t %zu/%zu",
               gated, total, equal_values, total));
}

// ---- 10: byte-identical verification reports ---------------------------------

void criterion_10() {
    const testutil::CliResult a = testutil::run_cli("verify --suite all --seed 7");
    const testutil::CliResult b = testutil::run_cli("verify --suite all --seed 7");
    const bool pass =
        a.exit_code == 0 && b.exit_code == 0 && !a.out.empty() && a.out == b.out;
    report(10, pass,
           fmt("verify --suite all --seed 7 twice: exits %d/%d, %zu bytes, byte-identical: %s",
               a.exit_code, b.exit_code, a.out.size(), a.out == b.out ? "yes" : "NO"));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    const auto pairs = make_pairs(200);
    criterion_5(pairs);
    criterion_6(pairs);
    criterion_7(pairs);
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed (%.1fs total)\n", 10 - failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
