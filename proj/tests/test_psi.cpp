#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <compare>
#include <vector>

#include "psicf/errors.hpp"
#include "psicf/psi.hpp"
#include "support/testutil.hpp"

using psicf::Errc;
using psicf::Int;
using psicf::PartialQuotients;
using psicf::PsiCurve;
using psicf::QuadraticSurd;
using psicf::Rat;
using testutil::error_code_of;

namespace {
const auto LT = std::strong_ordering::less;
const auto EQ = std::strong_ordering::equal;
const auto GT = std::strong_ordering::greater;

PsiCurve golden_curve() { return PsiCurve(psicf::golden_ratio()); }
PsiCurve sqrt2_curve() { return PsiCurve(QuadraticSurd::sqrt_of(2)); }
}  // namespace

TEST_CASE("locate resolves the duplicate q_0 = q_1 = 1 to the larger index") {
    PsiCurve tau = golden_curve();
    CHECK(tau.locate(Rat(1)) == 1);
    CHECK(tau.locate(Rat(2)) == 2);
    CHECK(tau.locate(Rat(3)) == 3);
    CHECK(tau.locate(Rat(4)) == 3);
    CHECK(tau.locate(Rat(5)) == 4);
    CHECK(tau.locate(Rat(5, 2)) == 2);

    PsiCurve s2 = sqrt2_curve();
    CHECK(s2.locate(Rat(1)) == 0);  // a_1 = 2, so q_1 = 2 > 1
    CHECK(s2.locate(Rat(2)) == 1);
}

TEST_CASE("psi at frozen points") {
    PsiCurve s2 = sqrt2_curve();
    psicf::PsiValue v = psi(s2, Rat(5));
    CHECK(v.n == 2);
    CHECK(v.q == 5);
    CHECK(v.p == 7);
    REQUIRE(v.exact.has_value());
    CHECK(v.exact->equals(QuadraticSurd(-7, 5, 1, 2)));  // 5*sqrt(2) - 7
    CHECK(v.bounds.contains(Rat(710678, 10000000)));
    CHECK(v.bounds.lo() > 0);

    // psi(1) is the nearest-integer distance ||alpha||, on both sides of 1/2.
    psicf::PsiValue t1 = psi(golden_curve(), Rat(1));
    CHECK(t1.n == 1);
    CHECK(t1.q == 1);
    CHECK(t1.p == 2);
    CHECK(t1.exact->equals(QuadraticSurd(3, -1, 2, 5)));  // 2 - tau = ||tau||

    psicf::PsiValue u1 = psi(s2, Rat(1));
    CHECK(u1.q == 1);
    CHECK(u1.p == 1);
    CHECK(u1.exact->equals(QuadraticSurd(-1, 1, 1, 2)));  // sqrt(2) - 1

    psicf::PsiValue t7 = psi(golden_curve(), Rat(7));
    CHECK(t7.n == 4);
    CHECK(t7.q == 5);
    CHECK(t7.p == 8);
    CHECK(t7.exact->equals(QuadraticSurd(-11, 5, 2, 5)));  // 5*tau - 8

    psicf::PsiValue frac = psi(s2, Rat(5, 2));
    CHECK(frac.n == 1);
    CHECK(frac.exact->equals(QuadraticSurd(3, -2, 1, 2)));  // 3 - 2*sqrt(2)

    psicf::PsiValue big = psi(golden_curve(), Rat(1000000));
    CHECK(big.n == 29);
    CHECK(big.q == 832040);  // F_30, the largest Fibonacci number <= 10^6

    CHECK(error_code_of([&] { psi(s2, Rat(1, 2)); }) == Errc::domain_error);
    CHECK(error_code_of([&] { psi(s2, Rat(0)); }) == Errc::domain_error);
}

TEST_CASE("psi is non-increasing and drops exactly at the denominators") {
    for (const PsiCurve& c : {golden_curve(), sqrt2_curve(),
                              PsiCurve(QuadraticSurd::sqrt_of(7))}) {
        psicf::PsiValue prev = psi(c, Rat(1));
        for (int t = 2; t <= 60; ++t) {
            psicf::PsiValue cur = psi(c, Rat(t));
            CHECK(cur.exact->cmp(*prev.exact) != GT);
            prev = cur;
        }
        for (std::size_t n = 1; n <= 8; ++n) {
            const Int& next_q = c.convergent(n + 1).q;
            CHECK(psi(c, Rat(next_q - 1)).exact->equals(c.error(n)));
            CHECK(psi(c, Rat(next_q)).exact->equals(c.error(n + 1)));
        }
    }
}

TEST_CASE("error values and certified bounds") {
    PsiCurve tau = golden_curve();
    for (std::size_t n = 0; n <= 12; ++n) {
        const QuadraticSurd& xi = tau.error(n);
        psicf::RationalInterval b = tau.error_bounds(n);
        CHECK(xi.cmp_rat(b.lo()) != LT);  // 1/(q_{n+1}+q_n) <= xi_n
        CHECK(xi.cmp_rat(b.hi()) != GT);  // xi_n <= 1/q_{n+1}
        if (n > 0) CHECK(tau.error(n - 1).cmp(xi) == GT);
        // xi_{n-1} / xi_n = alpha_{n+1} = tau for the golden ratio.
        if (n > 0) CHECK(tau.error(n - 1).equals(xi.mul(psicf::golden_ratio())));
    }
}

TEST_CASE("finite prefixes carry bounds and a hard horizon") {
    std::vector<Int> twos(11, Int(2));
    PsiCurve pre(PartialQuotients::prefix(Int(1), twos));  // sqrt(2) to a_11
    CHECK(!pre.has_value());
    CHECK(error_code_of([&] { pre.value(); }) == Errc::horizon_exceeded);
    CHECK(error_code_of([&] { pre.error(3); }) == Errc::horizon_exceeded);
    CHECK(!pre.horizon().unbounded);
    CHECK(pre.horizon().max_index == 11);
    CHECK(pre.horizon().max_t == 13860);  // q_11 of sqrt(2)

    psicf::RationalInterval b3 = pre.error_bounds(3);
    CHECK(b3.lo() == Rat(1, 41));  // 1/(q_4 + q_3) = 1/(29 + 12)
    CHECK(b3.hi() == Rat(1, 29));

    PsiCurve exact_s2 = sqrt2_curve();
    psicf::PsiValue v = psi(pre, Rat(5000));
    CHECK(v.n == 9);
    CHECK(!v.exact.has_value());
    const QuadraticSurd& true_xi = exact_s2.error(9);
    CHECK(true_xi.cmp_rat(v.bounds.lo()) != LT);
    CHECK(true_xi.cmp_rat(v.bounds.hi()) != GT);

    CHECK(psi(pre, Rat(13859)).n == 10);
    CHECK(error_code_of([&] { psi(pre, Rat(13860)); }) == Errc::horizon_exceeded);
}

TEST_CASE("merged steps tile the window") {
    std::vector<psicf::StepInterval> steps =
        psicf::merged_breakpoints(golden_curve(), sqrt2_curve(), Int(1), Int(20));
    REQUIRE(steps.size() == 7);
    long long lo_expected[] = {1, 2, 3, 5, 8, 12, 13};
    long long hi_expected[] = {2, 3, 5, 8, 12, 13, 20};
    std::size_t na_expected[] = {1, 2, 3, 4, 5, 5, 6};
    std::size_t nb_expected[] = {0, 1, 1, 2, 2, 3, 3};
    for (std::size_t i = 0; i < steps.size(); ++i) {
        CHECK(steps[i].t_lo == lo_expected[i]);
        CHECK(steps[i].t_hi == hi_expected[i]);
        CHECK(steps[i].a.n == na_expected[i]);
        CHECK(steps[i].b.n == nb_expected[i]);
        REQUIRE(steps[i].a.exact.has_value());
        CHECK(steps[i].a.exact->equals(golden_curve().error(na_expected[i])));
    }

    // A window starting inside a step still begins at t_lo.
    std::vector<psicf::StepInterval> mid =
        psicf::merged_breakpoints(golden_curve(), sqrt2_curve(), Int(6), Int(9));
    REQUIRE(mid.size() == 2);
    CHECK(mid[0].t_lo == 6);
    CHECK(mid[0].t_hi == 8);
    CHECK(mid[1].t_lo == 8);
    CHECK(mid[1].t_hi == 9);
}

TEST_CASE("equivalent pairs are rejected by the searches") {
    PsiCurve tau = golden_curve();
    PsiCurve shifted(psicf::golden_ratio().add_int(Int(3)));
    PsiCurve reflected(psicf::golden_ratio().neg().add_int(Int(2)));
    CHECK(error_code_of([&] {
              psicf::find_gap_witnesses(tau, shifted, Int(1), Int(100), psicf::Threshold::k_gap());
          }) == Errc::equivalent_pair);
    CHECK(error_code_of([&] { psicf::find_sign_changes(tau, reflected, Int(100)); }) ==
          Errc::equivalent_pair);
    CHECK(error_code_of([&] { psicf::find_reciprocal_witness(tau, shifted, Int(1), Int(100)); }) ==
          Errc::equivalent_pair);
    CHECK(error_code_of([] { psicf::Threshold::rational(Rat(-1)); }) == Errc::domain_error);
}

TEST_CASE("gap witnesses: same-field pairs certify exactly") {
    PsiCurve tau = golden_curve();
    PsiCurve root5(QuadraticSurd::sqrt_of(5));
    std::vector<psicf::GapWitness> ws =
        psicf::find_gap_witnesses(tau, root5, Int(1), Int(100), psicf::Threshold::k_gap());
    REQUIRE(!ws.empty());
    for (const psicf::GapWitness& w : ws) {
        CHECK(w.vs_threshold != LT);
        CHECK(w.method == psicf::CertMethod::exact);
        CHECK(w.width == 0);
        CHECK(w.ratio.lo() > 0);
    }
    // At t = 1 the relative gap is (2-tau)/(sqrt(5)-2) - 1 = tau - 1 exactly.
    CHECK(ws.front().step.t_lo == 1);
    CHECK(ws.front().ratio.lo() > Rat(61803, 100000));
    CHECK(ws.front().ratio.hi() < Rat(61804, 100000));
}

TEST_CASE("gap witnesses: cross-field pairs certify by refinement") {
    std::vector<psicf::GapWitness> ws = psicf::find_gap_witnesses(
        golden_curve(), sqrt2_curve(), Int(1), Int(10000), psicf::Threshold::k_gap());
    REQUIRE(!ws.empty());
    for (const psicf::GapWitness& w : ws) {
        CHECK(w.vs_threshold != LT);
        if (w.method == psicf::CertMethod::interval) CHECK(w.width <= Rat(1, 10000000000LL));
        CHECK(w.ratio.lo() > 0);
        CHECK(w.step.t_lo < w.step.t_hi);
    }
    // Rational thresholds across fields have an exact route.
    std::vector<psicf::GapWitness> rs = psicf::find_gap_witnesses(
        golden_curve(), sqrt2_curve(), Int(1), Int(1000), psicf::Threshold::rational(Rat(1, 4)));
    REQUIRE(!rs.empty());
    for (const psicf::GapWitness& w : rs) {
        CHECK(w.method == psicf::CertMethod::exact);
        CHECK(w.vs_threshold != LT);
    }
}

TEST_CASE("step-gap dichotomy at the golden ratio") {
    PsiCurve tau = golden_curve();
    const QuadraticSurd xi2 = tau.error(2);
    const QuadraticSurd xi3 = tau.error(3);

    psicf::StepGapReport below = psicf::classify_step_gap(tau, 3, xi3);
    CHECK(below.regime == psicf::StepGapCase::below);
    CHECK(below.lower_vs == GT);
    CHECK(below.holds);

    psicf::StepGapReport above = psicf::classify_step_gap(tau, 3, xi2);
    CHECK(above.regime == psicf::StepGapCase::above);
    CHECK(above.upper_vs == GT);
    CHECK(above.holds);

    psicf::StepGapReport mid =
        psicf::classify_step_gap(tau, 3, xi2.add(xi3).mul_rat(Rat(1, 2)));
    CHECK(mid.regime == psicf::StepGapCase::inside);
    CHECK(mid.holds);

    // The geometric mean eta = sqrt(xi_2 xi_3) meets both sides exactly.
    psicf::StepGapReport geo = psicf::classify_step_gap_squared(tau, 3, xi2.mul(xi3));
    CHECK(geo.regime == psicf::StepGapCase::inside);
    CHECK(geo.upper_vs == EQ);
    CHECK(geo.lower_vs == EQ);
    CHECK(geo.holds);

    // Cross-field eta, razor-thin margin: eta = 5*sqrt(2)-7 against step 5
    // of tau decides by sign(397 - 140*sqrt(2) - 89*sqrt(5)) ~ 5e-5.
    psicf::StepGapReport cross = psicf::classify_step_gap(tau, 5, QuadraticSurd(-7, 5, 1, 2));
    CHECK(cross.regime == psicf::StepGapCase::inside);
    CHECK(cross.upper_vs == GT);
    CHECK(cross.holds);

    CHECK(error_code_of([&] { psicf::classify_step_gap(tau, 0, xi2); }) ==
          Errc::precondition_violated);
    CHECK(error_code_of([&] { psicf::classify_step_gap(tau, 3, xi2.neg()); }) ==
          Errc::domain_error);
}

TEST_CASE("breakpoint witnesses on both sides of the tau / sqrt(2) pair") {
    PsiCurve tau = golden_curve();
    PsiCurve s2 = sqrt2_curve();

    // q_4(tau) = 5 is also a denominator of sqrt(2): hypothesis violated.
    CHECK(error_code_of([&] { psicf::breakpoint_witness(tau, s2, 4); }) ==
          Errc::precondition_violated);

    psicf::BreakpointWitness bw = psicf::breakpoint_witness(tau, s2, 5);
    CHECK(bw.n == 5);
    CHECK(bw.l == 5);
    CHECK(bw.regime == psicf::StepGapCase::inside);
    CHECK(bw.witness.step.t_lo == 8);
    CHECK(bw.witness.step.t_hi == 12);
    CHECK(bw.witness.vs_threshold != LT);

    psicf::BreakpointWitness rev = psicf::breakpoint_witness(s2, tau, 3);
    CHECK(rev.n == 3);
    CHECK(rev.l == 3);
    CHECK(rev.regime == psicf::StepGapCase::inside);
    CHECK(rev.witness.step.t_lo == 12);
    CHECK(rev.witness.step.t_hi == 13);
    CHECK(rev.witness.vs_threshold != LT);
}

TEST_CASE("sign changes between the golden ratio and sqrt(2)") {
    std::vector<psicf::SignFlip> flips =
        psicf::find_sign_changes(golden_curve(), sqrt2_curve(), Int(1000));
    REQUIRE(flips.size() >= 5);
    // First flips, frozen: psi_tau < psi_sqrt2 on [1,2), then the sign
    // alternates at t = 2, 3, 5, 8, 12.
    CHECK(flips[0].before.t_lo == 1);
    CHECK(flips[0].after.t_lo == 2);
    CHECK(flips[0].from == -1);
    CHECK(flips[0].to == 1);
    CHECK(flips[1].after.t_lo == 3);
    CHECK(flips[1].from == 1);
    CHECK(flips[1].to == -1);
    CHECK(flips[2].after.t_lo == 5);
    for (std::size_t i = 1; i < flips.size(); ++i) {
        CHECK(flips[i].from == flips[i - 1].to);  // signs alternate
        CHECK(flips[i].from != flips[i].to);
    }
}

TEST_CASE("reciprocal witnesses") {
    // Same field: at t = 1, |1/psi_tau - 1/psi_sqrt5| = tau exactly >= K.
    auto w = psicf::find_reciprocal_witness(golden_curve(), PsiCurve(QuadraticSurd::sqrt_of(5)),
                                            Int(1), Int(100));
    REQUIRE(w.has_value());
    CHECK(w->t == 1);
    CHECK(w->method == psicf::CertMethod::exact);
    CHECK(w->vs_kt != LT);
    // gap = (3+sqrt(5))/2 - (2+sqrt(5)) ... = tau = 1.6180339887...
    CHECK(w->gap.lo() > Rat(16180339887LL, 10000000000LL));
    CHECK(w->gap.hi() < Rat(16180339888LL, 10000000000LL));

    // Cross field: exists somewhere in [100, 10^6).
    auto c = psicf::find_reciprocal_witness(golden_curve(), sqrt2_curve(), Int(100), Int(1000000));
    REQUIRE(c.has_value());
    CHECK(c->t >= 100);
    CHECK(c->vs_kt != LT);
    CHECK(c->gap.lo() > c->kt.hi());
}

TEST_CASE("sharpened Minkowski products") {
    psicf::MinkowskiReport tau = psicf::check_minkowski(golden_curve(), 30);
    CHECK(tau.all_below_one);
    CHECK(tau.argmax == 1);  // xi_1 q_2 = 2/tau^2 = 3 - sqrt(5), the overall max
    CHECK(psicf::decimal_string(tau.max_product, 8) == "0.76393202");

    psicf::MinkowskiReport s2 = psicf::check_minkowski(sqrt2_curve(), 20);
    CHECK(s2.all_below_one);
    CHECK(s2.argmax == 1);  // xi_1 q_2 = 5(3 - 2*sqrt(2))
    CHECK(psicf::decimal_string(s2.max_product, 4) == "0.8579");
}

TEST_CASE("shared denominators classify by the digit patterns") {
    std::vector<psicf::CoincidenceRecord> recs =
        psicf::classify_coincidences(golden_curve(), sqrt2_curve(), Int(100));
    REQUIRE(recs.size() == 4);

    CHECK(recs[0].q == 1);
    CHECK(recs[0].n == 0);
    CHECK(recs[0].m == 0);
    CHECK(!recs[0].hyp_first);
    CHECK(!recs[0].hyp_second);
    CHECK(recs[0].pattern == psicf::CoincidencePattern::unclassified);

    CHECK(recs[1].q == 1);
    CHECK(recs[1].n == 1);
    CHECK(recs[1].m == 0);
    CHECK(!recs[1].hyp_first);

    CHECK(recs[2].q == 2);
    CHECK(recs[2].n == 2);
    CHECK(recs[2].m == 1);
    CHECK(recs[2].hyp_first);
    CHECK(recs[2].hyp_second);
    CHECK(recs[2].pattern == psicf::CoincidencePattern::i_shift_beta);

    CHECK(recs[3].q == 5);
    CHECK(recs[3].n == 4);
    CHECK(recs[3].m == 2);
    CHECK(!recs[3].hyp_first);
    CHECK(recs[3].hyp_second);
    CHECK(recs[3].pattern == psicf::CoincidencePattern::ii_case3);

    CHECK(std::string(psicf::coincidence_pattern_name(recs[3].pattern)) == "(ii)-case3");

    // Equal digit prefixes force shared denominators of the (i)-equal kind.
    PsiCurve a(PartialQuotients::parse("[0; 2, 2, 2, 1, (3)]"));
    PsiCurve b(PartialQuotients::parse("[1; 2, 2, 2, 4, (5)]"));
    std::vector<psicf::CoincidenceRecord> eq = psicf::classify_coincidences(a, b, Int(60));
    REQUIRE(eq.size() == 4);
    for (std::size_t i = 1; i < eq.size(); ++i) {
        CHECK(eq[i].n == i);
        CHECK(eq[i].m == i);
        CHECK(eq[i].hyp_first);
        CHECK(eq[i].pattern == psicf::CoincidencePattern::i_equal);
    }
}
