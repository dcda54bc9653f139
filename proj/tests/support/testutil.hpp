// Shared helpers for the test binaries.
//
// The bisection enclosures here are deliberately independent of the library's
// own interval code: they evaluate defining polynomials with plain rational
// arithmetic, so they can serve as oracles for enclose()/cmp_* results.
#pragma once

#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "psicf/errors.hpp"
#include "psicf/numeric.hpp"
#include "psicf/surd.hpp"

namespace testutil {

using psicf::Int;
using psicf::Rat;

struct RatBounds {
    Rat lo;
    Rat hi;
};

// Bisect f on [lo, hi] (requires f(lo) < 0 < f(hi)) for `steps` halvings.
inline RatBounds bisect(const std::function<Rat(const Rat&)>& f, Rat lo, Rat hi, int steps) {
    if (!(f(lo) < 0) || !(f(hi) > 0)) throw std::logic_error("bisect: bad bracket");
    for (int i = 0; i < steps; ++i) {
        Rat mid = (lo + hi) / 2;
        Rat v = f(mid);
        if (v == 0) return {mid, mid};
        (v < 0 ? lo : hi) = mid;
    }
    return {lo, hi};
}

// Enclosure of sqrt(x) for x > 0 via bisection on y^2 - x.
inline RatBounds sqrt_bounds(const Rat& x, int steps) {
    Rat hi = x < 1 ? Rat(1) : Rat(x + 1);
    // The explicit -> Rat materializes the value before locals go out of
    // scope (the expression templates hold references).
    return bisect([&x](const Rat& y) -> Rat { return y * y - x; }, Rat(0), hi, steps);
}

// Enclosure of the golden ratio via y^2 - y - 1 on [1, 2].
inline RatBounds golden_bounds(int steps) {
    return bisect([](const Rat& y) -> Rat { return y * y - y - 1; }, Rat(1), Rat(2), steps);
}

// Enclosure of K = sqrt(golden ratio) - 1 via (y+1)^4 - (y+1)^2 - 1 on [1/4, 3/10].
inline RatBounds k_gap_bounds(int steps) {
    auto f = [](const Rat& y) -> Rat {
        Rat z = y + 1;
        Rat z2 = z * z;
        return z2 * z2 - z2 - 1;
    };
    return bisect(f, Rat(1, 4), Rat(3, 10), steps);
}

// Run f and report which library error code it raised, if any.
template <typename F>
inline std::optional<psicf::Errc> error_code_of(F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const psicf::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

// Convert exact values to double for loose sanity checks (never for verdicts).
inline double to_double(const Rat& x) { return x.convert_to<double>(); }

inline double to_double(const psicf::QuadraticSurd& x) {
    RatBounds r = sqrt_bounds(Rat(x.d()), 80);
    Rat mid = (Rat(x.a()) + Rat(x.b()) * (r.lo + r.hi) / 2) / Rat(x.c());
    return to_double(mid);
}

#ifdef PSICF_CLI_PATH
struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Run the CLI with `args` appended after the binary path; capture stdout.
inline CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(PSICF_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("popen failed for: " + cmd);
    CliResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    int status = ::pclose(pipe);
    res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return res;
}
#endif

}  // namespace testutil
