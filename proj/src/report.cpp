#include "psicf/report.hpp"

#include <sstream>

#include "psicf/errors.hpp"

namespace psicf {

namespace {

std::string int_str(const Int& n) { return n.str(); }

std::string rat_str(const Rat& r) { return r.str(); }  // exact "num/den" form

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Decimal + width + exact fields of one step value.  Exact values are
// enclosed a little tighter than the display precision so the midpoint
// rounds correctly; prefix values render their fixed certified bounds.
RationalInterval display_interval(const StepValue& v, int precision) {
    return v.exact ? enclose(*v.exact, pow10_neg(static_cast<unsigned>(precision) + 5))
                   : v.bounds;
}

void add_step_side(Json& j, const std::string& name, const StepValue& v, int precision) {
    const RationalInterval iv = display_interval(v, precision);
    j[name] = decimal_string(iv, precision);
    j[name + "_width"] = width_string(iv.width());
    j[name + "_surd"] = v.exact ? surd_fields(*v.exact) : Json(nullptr);
}

void add_step_side_csv(std::vector<std::string>& row, const StepValue& v, int precision) {
    const RationalInterval iv = display_interval(v, precision);
    row.push_back(decimal_string(iv, precision));
    row.push_back(width_string(iv.width()));
    row.push_back(v.exact ? v.exact->to_string() : "");
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    raise(Errc::parse_error, "unknown format (expected json or csv)");
}

std::string decimal_of(const QuadraticSurd& x, int precision) {
    return decimal_string(enclose(x, pow10_neg(static_cast<unsigned>(precision) + 5)),
                          precision);
}

std::string decimal_of(const RationalInterval& iv, int precision) {
    return decimal_string(iv, precision);
}

Json surd_fields(const QuadraticSurd& x) {
    Json j;
    j["a"] = int_str(x.a());
    j["b"] = int_str(x.b());
    j["c"] = int_str(x.c());
    j["d"] = int_str(x.d());
    return j;
}

std::string render_psi(const PsiValue& v, const RenderOptions& opt) {
    const RationalInterval iv =
        v.exact ? enclose(*v.exact, pow10_neg(static_cast<unsigned>(opt.precision) + 5))
                : v.bounds;
    if (opt.format == OutputFormat::json) {
        Json j;
        j["t"] = rat_str(v.t);
        j["n"] = v.n;
        j["q"] = int_str(v.q);
        j["p"] = int_str(v.p);
        j["value"] = decimal_string(iv, opt.precision);
        j["value_width"] = width_string(iv.width());
        j["value_surd"] = v.exact ? surd_fields(*v.exact) : Json(nullptr);
        return dump(j);
    }
    return csv_table({"t", "n", "q", "p", "value", "value_width", "value_surd"},
                     {{rat_str(v.t), std::to_string(v.n), int_str(v.q), int_str(v.p),
                       decimal_string(iv, opt.precision), width_string(iv.width()),
                       v.exact ? v.exact->to_string() : ""}});
}

std::string render_convergents(const std::vector<Convergent>& cs, const RenderOptions& opt) {
    if (opt.format == OutputFormat::json) {
        Json arr = Json::array();
        for (const Convergent& c : cs) {
            Json j;
            j["n"] = c.n;
            j["p"] = int_str(c.p);
            j["q"] = int_str(c.q);
            arr.push_back(std::move(j));
        }
        return dump(arr);
    }
    std::vector<std::vector<std::string>> rows;
    for (const Convergent& c : cs) rows.push_back({std::to_string(c.n), int_str(c.p), int_str(c.q)});
    return csv_table({"n", "p", "q"}, rows);
}

std::string render_witnesses(const std::vector<GapWitness>& ws, const RenderOptions& opt) {
    if (opt.format == OutputFormat::json) {
        Json arr = Json::array();
        for (const GapWitness& w : ws) {
            Json j;
            j["t_lo"] = int_str(w.step.t_lo);
            j["t_hi"] = int_str(w.step.t_hi);
            add_step_side(j, "psi_alpha", w.step.a, opt.precision);
            add_step_side(j, "psi_beta", w.step.b, opt.precision);
            j["ratio_lo"] = decimal_string(w.ratio.lo(), opt.precision);
            j["ratio_hi"] = decimal_string(w.ratio.hi(), opt.precision);
            j["certified"] = true;
            j["method"] = cert_method_name(w.method);
            arr.push_back(std::move(j));
        }
        return dump(arr);
    }
    std::vector<std::vector<std::string>> rows;
    for (const GapWitness& w : ws) {
        std::vector<std::string> row{int_str(w.step.t_lo), int_str(w.step.t_hi)};
        add_step_side_csv(row, w.step.a, opt.precision);
        add_step_side_csv(row, w.step.b, opt.precision);
        row.push_back(decimal_string(w.ratio.lo(), opt.precision));
        row.push_back(decimal_string(w.ratio.hi(), opt.precision));
        row.push_back("true");
        row.push_back(cert_method_name(w.method));
        rows.push_back(std::move(row));
    }
    return csv_table({"t_lo", "t_hi", "psi_alpha", "psi_alpha_width", "psi_alpha_surd",
                      "psi_beta", "psi_beta_width", "psi_beta_surd", "ratio_lo", "ratio_hi",
                      "certified", "method"},
                     rows);
}

std::string render_flips(const std::vector<SignFlip>& fs, const RenderOptions& opt) {
    if (opt.format == OutputFormat::json) {
        Json arr = Json::array();
        for (const SignFlip& f : fs) {
            Json j;
            j["before_t_lo"] = int_str(f.before.t_lo);
            j["before_t_hi"] = int_str(f.before.t_hi);
            j["after_t_lo"] = int_str(f.after.t_lo);
            j["after_t_hi"] = int_str(f.after.t_hi);
            j["sign_before"] = f.from;
            j["sign_after"] = f.to;
            arr.push_back(std::move(j));
        }
        return dump(arr);
    }
    std::vector<std::vector<std::string>> rows;
    for (const SignFlip& f : fs)
        rows.push_back({int_str(f.before.t_lo), int_str(f.before.t_hi), int_str(f.after.t_lo),
                        int_str(f.after.t_hi), std::to_string(f.from), std::to_string(f.to)});
    return csv_table(
        {"before_t_lo", "before_t_hi", "after_t_lo", "after_t_hi", "sign_before", "sign_after"},
        rows);
}

std::string render_reciprocal(const std::optional<ReciprocalWitness>& w,
                              const RenderOptions& opt) {
    if (opt.format == OutputFormat::json) {
        if (!w) return dump(Json(nullptr));
        Json j;
        j["t_lo"] = int_str(w->step.t_lo);
        j["t_hi"] = int_str(w->step.t_hi);
        j["t"] = int_str(w->t);
        j["gap_lo"] = decimal_string(w->gap.lo(), opt.precision);
        j["gap_hi"] = decimal_string(w->gap.hi(), opt.precision);
        j["kt_lo"] = decimal_string(w->kt.lo(), opt.precision);
        j["kt_hi"] = decimal_string(w->kt.hi(), opt.precision);
        j["method"] = cert_method_name(w->method);
        j["width"] = width_string(w->width);
        return dump(j);
    }
    std::vector<std::vector<std::string>> rows;
    if (w)
        rows.push_back({int_str(w->step.t_lo), int_str(w->step.t_hi), int_str(w->t),
                        decimal_string(w->gap.lo(), opt.precision),
                        decimal_string(w->gap.hi(), opt.precision),
                        decimal_string(w->kt.lo(), opt.precision),
                        decimal_string(w->kt.hi(), opt.precision), cert_method_name(w->method),
                        width_string(w->width)});
    return csv_table({"t_lo", "t_hi", "t", "gap_lo", "gap_hi", "kt_lo", "kt_hi", "method",
                      "width"},
                     rows);
}

std::string render_coincidences(const std::vector<CoincidenceRecord>& rs,
                                const RenderOptions& opt) {
    if (opt.format == OutputFormat::json) {
        Json arr = Json::array();
        for (const CoincidenceRecord& r : rs) {
            Json j;
            j["q"] = int_str(r.q);
            j["n"] = r.n;
            j["m"] = r.m;
            j["hyp_first"] = r.hyp_first;
            j["hyp_second"] = r.hyp_second;
            j["pattern"] = coincidence_pattern_name(r.pattern);
            arr.push_back(std::move(j));
        }
        return dump(arr);
    }
    std::vector<std::vector<std::string>> rows;
    for (const CoincidenceRecord& r : rs)
        rows.push_back({int_str(r.q), std::to_string(r.n), std::to_string(r.m),
                        r.hyp_first ? "true" : "false", r.hyp_second ? "true" : "false",
                        coincidence_pattern_name(r.pattern)});
    return csv_table({"q", "n", "m", "hyp_first", "hyp_second", "pattern"}, rows);
}

std::string render_extremal(const Construction& c, const PiiReport& pii, int precision) {
    Json j;
    j["epsilon"] = rat_str(c.epsilon);
    j["U"] = int_str(c.seed.U);
    j["V"] = int_str(c.seed.V);
    j["k"] = c.k;
    j["w"] = c.w;
    Json b = Json::array();
    for (const Int& digit : c.b) b.push_back(int_str(digit));
    j["b"] = std::move(b);
    j["n0"] = c.n0;
    j["phi"] = surd_fields(c.phi);
    j["phi_cf"] = c.phi_digits.format();
    Json err;
    err["lo"] = decimal_string(c.seed.achieved_error.lo(), precision);
    err["hi"] = decimal_string(c.seed.achieved_error.hi(), precision);
    j["achieved_error_interval"] = std::move(err);
    j["n_min"] = pii.n_min;
    j["n_max"] = pii.n_max;
    j["max_ratio_lo"] = decimal_string(pii.max_ratio_bounds.lo(), precision);
    j["max_ratio_hi"] = decimal_string(pii.max_ratio_bounds.hi(), precision);
    j["slack"] = rat_str(pii.slack);
    j["pass"] = pii.pass;
    return dump(j);
}

}  // namespace psicf
