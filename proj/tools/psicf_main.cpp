// Command-line front end: every engine operation behind one binary, with
// JSON/CSV emission for scripted runs.  Exit codes: 0 ok, 1 verification
// failure, 2 parse/usage, 3 domain, 4 equivalent-pair gate.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "psicf/errors.hpp"
#include "psicf/extremal.hpp"
#include "psicf/report.hpp"
#include "psicf/verify.hpp"

namespace {

using namespace psicf;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::parse_error:
            return 2;
        case Errc::equivalent_pair:
            return 4;
        case Errc::zero_denominator:
        case Errc::negative_radicand:
        case Errc::division_by_zero:
        case Errc::mixed_radicand:
        case Errc::rational_input:
        case Errc::horizon_exceeded:
        case Errc::precondition_violated:
        case Errc::domain_error:
            return 3;
        case Errc::precision_exhausted:
        case Errc::search_budget_exceeded:
        case Errc::internal_error:
            return 1;
    }
    return 1;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) raise(Errc::domain_error, "cannot open output file: " + out_path);
    f << text;
}

// Numbers are accepted in either literal grammar: a continued fraction
// "[a0; a1, (p1, p2)]" (leading '[') or a surd "(a + b*sqrt(d))/c".
PsiCurve parse_curve(const std::string& text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '[') return PsiCurve(PartialQuotients::parse(text));
    return PsiCurve(QuadraticSurd::parse(text));
}

Int parse_bigint(const std::string& text) {
    std::size_t i = (!text.empty() && (text[0] == '+' || text[0] == '-')) ? 1 : 0;
    if (i == text.size()) raise(Errc::parse_error, "not an integer: " + text);
    for (; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            raise(Errc::parse_error, "not an integer: " + text);
    return Int(text);
}

Threshold parse_threshold(const std::string& text) {
    if (text == "K" || text == "k") return Threshold::k_gap();
    return Threshold::rational(parse_rational(text));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact step-function analysis of quadratic irrationals"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    std::string out_path;
    int precision = 30;
    std::uint64_t seed = 0;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write output to this file instead of stdout");
    app.add_option("--precision", precision, "fractional decimal digits for display")
        ->check(CLI::Range(6, 200));
    app.add_option("--seed", seed, "seed for randomized verification suites");

    int rc = 0;
    const auto opts = [&] { return RenderOptions{parse_format(format), precision}; };

    // expand <surd>
    std::string expand_number;
    auto* cmd_expand = app.add_subcommand("expand", "continued fraction of a surd");
    cmd_expand->add_option("number", expand_number, "surd literal")->required();
    cmd_expand->callback([&] {
        emit(expand_surd(QuadraticSurd::parse(expand_number)).format() + "\n", out_path);
    });

    // surd <cf>
    std::string surd_cf;
    auto* cmd_surd = app.add_subcommand("surd", "exact value of a periodic continued fraction");
    cmd_surd->add_option("cf", surd_cf, "continued fraction literal")->required();
    cmd_surd->callback(
        [&] { emit(cf_to_surd(PartialQuotients::parse(surd_cf)).to_string() + "\n", out_path); });

    // convergents <number> <n>
    std::string conv_number;
    std::size_t conv_n = 0;
    auto* cmd_conv = app.add_subcommand("convergents", "convergents p_n/q_n up to an index");
    cmd_conv->add_option("number", conv_number)->required();
    cmd_conv->add_option("n", conv_n, "largest index")->required();
    cmd_conv->callback([&] {
        const PsiCurve curve = parse_curve(conv_number);
        std::vector<Convergent> cs;
        for (std::size_t i = 0; i <= conv_n; ++i) cs.push_back(curve.convergent(i));
        emit(render_convergents(cs, opts()), out_path);
    });

    // psi <number> <t>
    std::string psi_number, psi_t;
    auto* cmd_psi = app.add_subcommand("psi", "best approximation error at t");
    cmd_psi->add_option("number", psi_number)->required();
    cmd_psi->add_option("t", psi_t, "query point t >= 1 (integer or rational)")->required();
    cmd_psi->callback([&] {
        const PsiCurve curve = parse_curve(psi_number);
        emit(render_psi(psi(curve, parse_rational(psi_t)), opts()), out_path);
    });

    // witness <alpha> <beta> --tmin --tmax [--threshold]
    std::string wit_a, wit_b, wit_tmin, wit_tmax, wit_thr = "K";
    auto* cmd_wit = app.add_subcommand("witness", "steps where the relative gap clears a threshold");
    cmd_wit->add_option("alpha", wit_a)->required();
    cmd_wit->add_option("beta", wit_b)->required();
    cmd_wit->add_option("--tmin", wit_tmin)->required();
    cmd_wit->add_option("--tmax", wit_tmax)->required();
    cmd_wit->add_option("--threshold", wit_thr, "\"K\" or a rational");
    cmd_wit->callback([&] {
        const PsiCurve a = parse_curve(wit_a), b = parse_curve(wit_b);
        const auto ws = find_gap_witnesses(a, b, parse_bigint(wit_tmin), parse_bigint(wit_tmax),
                                           parse_threshold(wit_thr));
        emit(render_witnesses(ws, opts()), out_path);
    });

    // signchanges <alpha> <beta> --tmax
    std::string sc_a, sc_b, sc_tmax;
    auto* cmd_sc = app.add_subcommand("signchanges", "steps where psi_alpha - psi_beta flips sign");
    cmd_sc->add_option("alpha", sc_a)->required();
    cmd_sc->add_option("beta", sc_b)->required();
    cmd_sc->add_option("--tmax", sc_tmax)->required();
    cmd_sc->callback([&] {
        const PsiCurve a = parse_curve(sc_a), b = parse_curve(sc_b);
        emit(render_flips(find_sign_changes(a, b, parse_bigint(sc_tmax)), opts()), out_path);
    });

    // reciprocal <alpha> <beta> --tmin --tmax
    std::string rc_a, rc_b, rc_tmin, rc_tmax;
    auto* cmd_rc = app.add_subcommand("reciprocal",
                                      "first step with |1/psi_a - 1/psi_b| >= K*t");
    cmd_rc->add_option("alpha", rc_a)->required();
    cmd_rc->add_option("beta", rc_b)->required();
    cmd_rc->add_option("--tmin", rc_tmin)->required();
    cmd_rc->add_option("--tmax", rc_tmax)->required();
    cmd_rc->callback([&] {
        const PsiCurve a = parse_curve(rc_a), b = parse_curve(rc_b);
        emit(render_reciprocal(
                 find_reciprocal_witness(a, b, parse_bigint(rc_tmin), parse_bigint(rc_tmax)),
                 opts()),
             out_path);
    });

    // coincidences <alpha> <beta> --tmax
    std::string co_a, co_b, co_tmax;
    auto* cmd_co = app.add_subcommand("coincidences",
                                      "classified shared denominators q_n = s_m");
    cmd_co->add_option("alpha", co_a)->required();
    cmd_co->add_option("beta", co_b)->required();
    cmd_co->add_option("--tmax", co_tmax)->required();
    cmd_co->callback([&] {
        const PsiCurve a = parse_curve(co_a), b = parse_curve(co_b);
        emit(render_coincidences(classify_coincidences(a, b, parse_bigint(co_tmax)), opts()),
             out_path);
    });

    // extremal --eps [--nmin --nmax --slack]
    std::string ex_eps, ex_slack = "1/50";
    std::size_t ex_nmin = 10, ex_nmax = 40;
    auto* cmd_ex = app.add_subcommand("extremal",
                                      "companion construction tracking the golden ratio");
    cmd_ex->add_option("--eps", ex_eps, "target bound on |A*sqrt(5) - sqrt(tau)|")->required();
    cmd_ex->add_option("--nmin", ex_nmin, "sweep window start (Fibonacci index)");
    cmd_ex->add_option("--nmax", ex_nmax, "sweep window end (Fibonacci index)");
    cmd_ex->add_option("--slack", ex_slack, "tolerance added around [K, K + eps]");
    cmd_ex->callback([&] {
        const Rat eps = parse_rational(ex_eps);
        if (eps <= 0) {
            // usage-level rejection, per the exit-code contract
            throw CLI::ValidationError("--eps", "must be a positive rational");
        }
        const Construction c = build_construction(eps);
        const PiiReport pii = verify_pii(c, ex_nmin, ex_nmax, parse_rational(ex_slack));
        emit(render_extremal(c, pii, precision), out_path);
        if (!pii.pass) rc = 1;
    });

    // verify --suite [--count]
    std::string vf_suite;
    std::size_t vf_count = 100;
    auto* cmd_vf = app.add_subcommand("verify", "seeded property suites");
    cmd_vf->add_option("--suite", vf_suite,
                       "oracle | minkowski | hilfssatz1 | hilfssatz2 | hilfssatz3 | mirror | all")
        ->required();
    cmd_vf->add_option("--count", vf_count, "random cases per suite");
    cmd_vf->callback([&] {
        const auto results = run_suites(vf_suite, seed, vf_count);
        bool all_pass = true;
        Json j;
        j["selector"] = vf_suite;
        j["seed"] = seed;
        j["count"] = vf_count;
        Json arr = Json::array();
        for (const SuiteResult& s : results) {
            Json sj;
            sj["suite"] = s.suite;
            sj["cases"] = s.cases;
            sj["checks"] = s.checks;
            sj["violations"] = s.violations;
            sj["pass"] = s.pass();
            sj["notes"] = s.notes;
            arr.push_back(std::move(sj));
            all_pass = all_pass && s.pass();
        }
        j["suites"] = std::move(arr);
        j["pass"] = all_pass;
        emit(j.dump(2) + "\n", out_path);
        if (!all_pass) rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int c = app.exit(e);
        return c == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return rc;
}
