#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "psicf/errors.hpp"
#include "psicf/extremal.hpp"
#include "support/testutil.hpp"

using psicf::Construction;
using psicf::Errc;
using psicf::Int;
using psicf::QuadraticSurd;
using psicf::Rat;
using testutil::error_code_of;

namespace {
std::vector<Int> ints(std::initializer_list<long long> xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}
}  // namespace

TEST_CASE("seed search walks the deterministic candidate order") {
    psicf::SeedPair half = psicf::find_uv(Rat(1, 2));
    CHECK(half.U == 0);
    CHECK(half.V == 1);
    CHECK(half.achieved_error.hi() < Rat(1, 2));

    psicf::SeedPair tenth = psicf::find_uv(Rat(1, 10));
    CHECK(tenth.U == -6);
    CHECK(tenth.V == 5);
    CHECK(tenth.achieved_error.hi() < Rat(1, 10));

    psicf::SeedPair cent = psicf::find_uv(Rat(1, 100));
    CHECK(cent.U == 15);
    CHECK(cent.V == -8);
    CHECK(cent.achieved_error.lo() >= 0);
    CHECK(cent.achieved_error.hi() < Rat(1, 100));
    // |(-8) + 15/tau - sqrt(tau)| = 0.001509...
    CHECK(cent.achieved_error.hi() > Rat(15, 10000));
    CHECK(cent.achieved_error.lo() < Rat(16, 10000));

    CHECK(error_code_of([] { psicf::find_uv(Rat(0)); }) == Errc::domain_error);
    CHECK(error_code_of([] { psicf::find_uv(Rat(-1, 10)); }) == Errc::domain_error);
}

TEST_CASE("construction skips seeds whose companion degenerates to tau") {
    // (0,1) and (1,1) both produce phi = 2 - tau (an integer shift of tau);
    // the builder must advance to (-1, 2).
    Construction c = psicf::build_construction(Rat(1, 2));
    CHECK(c.seed.U == -1);
    CHECK(c.seed.V == 2);
    CHECK(c.x == ints({-1, 2, 1, 3}));
    CHECK(c.k == 3);
    CHECK(c.b == ints({3}));
    CHECK(c.w == 1);
    CHECK(c.n0 == 2);
    CHECK(c.phi.equals(QuadraticSurd(5, -1, 10, 5)));  // [0; 3, (1)] = (5 - sqrt 5)/10
    CHECK(c.phi_digits.format() == "[0; 3, (1)]");
    CHECK(!psicf::integer_shift_equiv(c.phi, psicf::golden_ratio()).has_value());
}

TEST_CASE("the 1/100 construction, frozen end to end") {
    Construction c = psicf::build_construction(Rat(1, 100));
    CHECK(c.epsilon == Rat(1, 100));
    CHECK(c.seed.U == 15);
    CHECK(c.seed.V == -8);
    CHECK(c.x == ints({15, -8, 7, -1, 6, 5, 11}));
    CHECK(c.k == 6);
    CHECK(c.b == ints({5, 2}));  // reversed digits of X_5/X_6 = 5/11 = [0; 2, 5]
    CHECK(c.w == 2);
    CHECK(c.n0 == 4);
    CHECK(c.phi.equals(QuadraticSurd(13, 1, 82, 5)));  // [0; 5, 2, (1)] = (13 + sqrt 5)/82
    CHECK(c.phi_digits.format() == "[0; 5, 2, (1)]");

    // The growth constant A*sqrt(5) = V + U/tau, exactly.
    QuadraticSurd w = psicf::golden_ratio().recip().mul_rat(Rat(15)).add_rat(Rat(-8));
    CHECK(w.equals(QuadraticSurd(-31, 15, 2, 5)));
}

TEST_CASE("interleaving of the shifted recurrence with the Fibonacci numbers") {
    Construction c = psicf::build_construction(Rat(1, 100));
    psicf::InterleavingReport rep = psicf::verify_interleaving(c, 40);
    CHECK(rep.n_max == 40);
    CHECK(rep.holds_eventually);
    CHECK(rep.first_valid == 6);  // 8 < 11 < 13 starts the trailing run
    CHECK(rep.closed_form_ok);
    REQUIRE(rep.alignment_onset.has_value());
    CHECK(*rep.alignment_onset == 1);  // s_1 = 5 = X_5 onward
    CHECK(rep.pass);

    // Smallest allowed window: the run has just begun at n = k.
    psicf::InterleavingReport tight = psicf::verify_interleaving(c, 6);
    CHECK(tight.holds_eventually);
    CHECK(tight.first_valid == 6);
    CHECK(tight.pass);

    CHECK(error_code_of([&] { psicf::verify_interleaving(c, 5); }) == Errc::domain_error);
}

TEST_CASE("the merged-step sweep pins the relative gap near K") {
    Construction c = psicf::build_construction(Rat(1, 100));
    psicf::PiiReport rep = psicf::verify_pii(c, 10, 40, Rat(1, 50));
    CHECK(rep.t_lo == 55);         // F_10
    CHECK(rep.t_hi == 102334155);  // F_40
    CHECK(rep.max_ratio.equals(QuadraticSurd(-29, 23, 82, 5)));  // tau/(A sqrt 5) - 1
    CHECK(rep.argmax_t == 55);
    CHECK(rep.max_ratio_bounds.lo() > Rat(27353, 100000));
    CHECK(rep.max_ratio_bounds.hi() < Rat(27354, 100000));
    CHECK(rep.ratio_within);
    CHECK(rep.level_ratio_low.equals(QuadraticSurd(-31, 15, 2, 5)));   // ~1.2705098
    CHECK(rep.level_ratio_high.equals(QuadraticSurd(53, 23, 82, 5)));  // ~1.2735313
    CHECK(rep.levels_within);
    CHECK(rep.pass);

    CHECK(error_code_of([&] { psicf::verify_pii(c, 10, 40, Rat(-1)); }) == Errc::domain_error);
    CHECK(error_code_of([&] { psicf::verify_pii(c, 1, 40, Rat(0)); }) == Errc::domain_error);
    CHECK(error_code_of([&] { psicf::verify_pii(c, 40, 10, Rat(0)); }) == Errc::domain_error);
}

TEST_CASE("looser targets still verify") {
    Construction c = psicf::build_construction(Rat(1, 10));
    CHECK(c.seed.U == -6);
    CHECK(c.seed.V == 5);
    psicf::InterleavingReport il = psicf::verify_interleaving(c, 30);
    CHECK(il.pass);
    psicf::PiiReport pii = psicf::verify_pii(c, 8, 30, Rat(1, 10));
    CHECK(pii.pass);
    // Both characteristic levels stay within 5*eps = 1/2 of sqrt(tau).
    CHECK(pii.levels_within);
}
