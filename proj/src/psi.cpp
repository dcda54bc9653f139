#include "psicf/psi.hpp"

#include <algorithm>
#include <map>

#include "psicf/errors.hpp"

namespace psicf {

// ---------------------------------------------------------------- PsiCurve ---

PsiCurve::PsiCurve(PartialQuotients pq) : pq_(std::move(pq)) {
    if (pq_.is_periodic()) value_ = cf_to_surd(pq_);
    horizon_ = psicf::horizon(pq_);
    cv_.push_back({0, pq_.a0(), Int(1)});
}

PsiCurve::PsiCurve(const QuadraticSurd& x) : PsiCurve(expand_surd(x)) {}

const QuadraticSurd& PsiCurve::value() const {
    if (!value_) raise(Errc::horizon_exceeded, "a finite prefix does not determine the number");
    return *value_;
}

void PsiCurve::grow_to_index(std::size_t n) const {
    while (cv_.size() <= n) {
        const std::size_t i = cv_.size();
        const Int a = pq_.digit(i);  // throws horizon_exceeded past a prefix
        const Int& p1 = cv_[i - 1].p;
        const Int& q1 = cv_[i - 1].q;
        const Int p0 = (i >= 2) ? cv_[i - 2].p : Int(1);
        const Int q0 = (i >= 2) ? cv_[i - 2].q : Int(0);
        cv_.push_back({i, a * p1 + p0, a * q1 + q0});
    }
}

void PsiCurve::grow_past(const Rat& t) const {
    while (Rat(cv_.back().q) <= t) grow_to_index(cv_.size());
}

const Convergent& PsiCurve::convergent(std::size_t n) const {
    grow_to_index(n);
    return cv_[n];
}

std::size_t PsiCurve::locate(const Rat& t) const {
    if (t < 1) raise(Errc::domain_error, "psi is defined for t >= 1");
    grow_past(t);
    // Last index with q_n <= t (q_0 = q_1 is the only possible duplicate).
    auto it = std::partition_point(cv_.begin(), cv_.end(),
                                   [&](const Convergent& c) { return Rat(c.q) <= t; });
    return static_cast<std::size_t>(it - cv_.begin()) - 1;
}

const QuadraticSurd& PsiCurve::error(std::size_t n) const {
    if (!value_) raise(Errc::horizon_exceeded, "exact step values need the full expansion");
    grow_to_index(n);
    while (xi_.size() <= n) xi_.push_back(approximation_error(*value_, cv_[xi_.size()]));
    return xi_[n];
}

RationalInterval PsiCurve::error_bounds(std::size_t n) const {
    grow_to_index(n + 1);
    return {Rat(Int(1), cv_[n + 1].q + cv_[n].q), Rat(Int(1), cv_[n + 1].q)};
}

PsiValue psi(const PsiCurve& curve, const Rat& t) {
    const std::size_t n = curve.locate(t);
    PsiValue v;
    v.t = t;
    v.n = n;
    v.q = curve.convergent(n).q;
    v.p = curve.convergent(n).p;
    if (curve.has_value()) v.exact = curve.error(n);
    v.bounds = curve.error_bounds(n);
    return v;
}

// ------------------------------------------------------------ merged steps ---

namespace {

StepValue step_value(const PsiCurve& c, std::size_t n) {
    StepValue v;
    v.n = n;
    v.q = c.convergent(n).q;
    v.p = c.convergent(n).p;
    if (c.has_value()) v.exact = c.error(n);
    v.bounds = c.error_bounds(n);
    return v;
}

void gate_equivalence(const PsiCurve& a, const PsiCurve& b) {
    if (!a.has_value() || !b.has_value()) return;
    if (auto eq = integer_shift_equiv(a.value(), b.value()))
        raise(Errc::equivalent_pair, "the numbers are integer-shift equivalent: beta = " +
                                         std::string(eq->sign > 0 ? "+" : "-") + "alpha + (" +
                                         eq->n.str() + "); psi is identical for such pairs");
}

// Enclosure of one step value at width w; prefix bounds are an information
// floor that cannot be refined.
RationalInterval positive_enclosure(const StepValue& v, Rat w) {
    if (!v.exact) return v.bounds;
    RationalInterval iv = enclose(*v.exact, w);
    while (iv.lo() <= 0) {
        w /= 1024;
        iv = enclose(*v.exact, w);
    }
    return iv;
}

// Certified sign of psi_a - psi_b on a step; nullopt when the floor bounds
// cannot separate (never happens for two exact values).
std::optional<int> decide_sign(const StepValue& va, const StepValue& vb) {
    if (va.exact && vb.exact) {
        const auto c = va.exact->cmp(*vb.exact);
        if (c == std::strong_ordering::less) return -1;
        if (c == std::strong_ordering::greater) return 1;
        return 0;
    }
    Rat w = pow10_neg(10);
    const Rat cap = pow10_neg(40);
    for (;;) {
        const RationalInterval A = positive_enclosure(va, w);
        const RationalInterval B = positive_enclosure(vb, w);
        if (A.hi() < B.lo()) return -1;
        if (B.hi() < A.lo()) return 1;
        if (w <= cap) return std::nullopt;
        w *= pow10_neg(10);
    }
}

// Enclosure of (hi_side - lo_side) / lo_side, both sides known positive with
// hi_side > lo_side.
RationalInterval ratio_enclosure(const StepValue& hi_side, const StepValue& lo_side,
                                 const Rat& w) {
    const RationalInterval H = positive_enclosure(hi_side, w);
    const RationalInterval L = positive_enclosure(lo_side, w);
    Rat lo = H.lo() - L.hi();
    if (lo < 0) lo = 0;
    const Rat hi = H.hi() - L.lo();
    return RationalInterval(lo, hi).mul(L.recip());
}

struct RatioCertificate {
    int gap_sign = 0;
    std::strong_ordering vs = std::strong_ordering::less;
    CertMethod method = CertMethod::exact;
    Rat width;
    RationalInterval ratio;
};

std::optional<RatioCertificate> certify_gap_ratio(const StepValue& va, const StepValue& vb,
                                                  const Threshold& thr) {
    const auto s = decide_sign(va, vb);
    if (!s) return std::nullopt;
    const Rat display_w = pow10_neg(30);
    RatioCertificate cert;
    cert.gap_sign = *s;
    cert.width = 0;
    if (*s == 0) {
        cert.vs = (!thr.is_k && thr.value == 0) ? std::strong_ordering::equal
                                                : std::strong_ordering::less;
        cert.ratio = RationalInterval(Rat(0), Rat(0));
        return cert;
    }
    const StepValue& big = (*s > 0) ? va : vb;
    const StepValue& small = (*s > 0) ? vb : va;
    if (big.exact && small.exact) {
        const QuadraticSurd& B = *big.exact;
        const QuadraticSurd& S = *small.exact;
        if (B.d() == S.d()) {
            // Same field: the ratio is itself a surd, every threshold exact.
            const QuadraticSurd R = B.sub(S).div(S);
            cert.vs = thr.is_k ? cmp_k_gap(R) : R.cmp_rat(thr.value);
            cert.ratio = enclose(R, display_w);
            return cert;
        }
        if (!thr.is_k) {
            // Cross field, rational threshold tn/td:
            //   sign(td*(B - S) - tn*S) = sign(td*B - (td+tn)*S)
            // expands to X + Y*sqrt(dB) + Z*sqrt(dS) over a positive common
            // denominator -- one exact two-radical sign test.
            const Int tn = num(thr.value), td = den(thr.value);
            const Int X = td * B.a() * S.c() - (td + tn) * S.a() * B.c();
            const Int Y = td * B.b() * S.c();
            const Int Z = -(td + tn) * S.b() * B.c();
            const int es = sign_two_radicals(X, Y, B.d(), Z, S.d());
            cert.vs = es > 0   ? std::strong_ordering::greater
                      : es < 0 ? std::strong_ordering::less
                               : std::strong_ordering::equal;
            cert.ratio = ratio_enclosure(big, small, display_w);
            return cert;
        }
    }
    // Interval route: cross-field ratio against K, or floor-bounded values.
    Rat w = pow10_neg(10);
    const Rat cap = pow10_neg(40);
    for (;;) {
        const RationalInterval ratio = ratio_enclosure(big, small, w);
        const RationalInterval thr_iv = thr.is_k ? enclose(NamedConstant::k_gap, w)
                                                 : RationalInterval(thr.value, thr.value);
        if (ratio.lo() > thr_iv.hi() || ratio.hi() < thr_iv.lo()) {
            cert.vs = ratio.lo() > thr_iv.hi() ? std::strong_ordering::greater
                                               : std::strong_ordering::less;
            cert.method = CertMethod::interval;
            cert.width = w;
            cert.ratio = ratio;
            return cert;
        }
        if (w <= cap) return std::nullopt;
        w *= pow10_neg(10);
    }
}

}  // namespace

std::vector<StepInterval> merged_breakpoints(const PsiCurve& a, const PsiCurve& b, const Int& t_lo,
                                             const Int& t_hi) {
    if (t_lo < 1 || t_lo >= t_hi)
        raise(Errc::domain_error, "step window must satisfy 1 <= t_lo < t_hi");
    std::vector<Int> pts{t_lo};
    for (const PsiCurve* c : {&a, &b}) {
        for (std::size_t n = 0;; ++n) {
            const Int& q = c->convergent(n).q;
            if (q >= t_hi) break;
            if (q > t_lo) pts.push_back(q);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(t_hi);
    std::vector<StepInterval> steps;
    steps.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        StepInterval st;
        st.t_lo = pts[i];
        st.t_hi = pts[i + 1];
        st.a = step_value(a, a.locate(Rat(st.t_lo)));
        st.b = step_value(b, b.locate(Rat(st.t_lo)));
        steps.push_back(std::move(st));
    }
    return steps;
}

Threshold Threshold::rational(Rat v) {
    if (v < 0) raise(Errc::domain_error, "gap threshold must be >= 0");
    return {false, std::move(v)};
}

const char* cert_method_name(CertMethod m) {
    return m == CertMethod::exact ? "exact" : "interval";
}

std::vector<GapWitness> find_gap_witnesses(const PsiCurve& a, const PsiCurve& b, const Int& t_min,
                                           const Int& t_max, const Threshold& threshold) {
    gate_equivalence(a, b);
    std::vector<GapWitness> out;
    for (const StepInterval& st : merged_breakpoints(a, b, t_min, t_max)) {
        const auto cert = certify_gap_ratio(st.a, st.b, threshold);
        if (!cert || cert->gap_sign == 0 || cert->vs == std::strong_ordering::less) continue;
        out.push_back({st, cert->vs, cert->method, cert->width, cert->ratio});
    }
    return out;
}

// ------------------------------------------------------- envelope analysis ---

namespace {

StepGapReport classify_from_squares(const PsiCurve& a, std::size_t nu,
                                    const QuadraticSurd& eta_sq) {
    if (nu < 1) raise(Errc::precondition_violated, "envelope analysis needs nu >= 1");
    if (eta_sq.sign() <= 0) raise(Errc::domain_error, "eta must be positive");
    const QuadraticSurd& xi = a.error(nu);
    const QuadraticSurd& xi_prev = a.error(nu - 1);
    const QuadraticSurd alpha_next = tail(a.digits(), nu + 1);
    const QuadraticSurd xi_sq = xi.mul(xi);
    const QuadraticSurd xi_prev_sq = xi_prev.mul(xi_prev);

    StepGapReport rep;
    // All comparisons below are between two quadratic surds (cross-field
    // allowed), hence exact: the mixed products are rearranged so each side
    // stays inside its own field.
    rep.upper_vs = eta_sq.cmp(alpha_next.mul(xi_sq));          // eta^2 vs alpha*xi^2
    rep.lower_vs = xi_prev_sq.div(alpha_next).cmp(eta_sq);     // xi_prev^2/alpha vs eta^2
    const auto vs_low = eta_sq.cmp(xi_sq);
    const auto vs_high = eta_sq.cmp(xi_prev_sq);
    if (vs_high != std::strong_ordering::less) {
        rep.regime = StepGapCase::above;
        rep.holds = rep.upper_vs == std::strong_ordering::greater;
    } else if (vs_low != std::strong_ordering::greater) {
        rep.regime = StepGapCase::below;
        rep.holds = rep.lower_vs == std::strong_ordering::greater;
    } else {
        rep.regime = StepGapCase::inside;
        rep.holds = rep.upper_vs != std::strong_ordering::less ||
                    rep.lower_vs != std::strong_ordering::less;
    }
    return rep;
}

}  // namespace

StepGapReport classify_step_gap(const PsiCurve& a, std::size_t nu, const QuadraticSurd& eta) {
    if (eta.sign() <= 0) raise(Errc::domain_error, "eta must be positive");
    return classify_from_squares(a, nu, eta.mul(eta));
}

StepGapReport classify_step_gap_squared(const PsiCurve& a, std::size_t nu,
                                        const QuadraticSurd& eta_squared) {
    return classify_from_squares(a, nu, eta_squared);
}

BreakpointWitness breakpoint_witness(const PsiCurve& a, const PsiCurve& b, std::size_t n) {
    if (n < 1) raise(Errc::precondition_violated, "index hypothesis failed: n >= 1 required");
    if (lambda(a.digits(), n).vs_k_gap() == std::strong_ordering::less)
        raise(Errc::precondition_violated, "lambda hypothesis failed: lambda_n(alpha) < K");
    const Int qn = a.convergent(n).q;
    for (std::size_t m = 0;; ++m) {
        const Int& s = b.convergent(m).q;
        if (s == qn)
            raise(Errc::precondition_violated,
                  "denominator hypothesis failed: q_n is a denominator of beta");
        if (s > qn) break;
    }
    const std::size_t mb = b.locate(Rat(qn));
    const QuadraticSurd eta = b.error(mb);  // throws horizon_exceeded for prefixes

    const StepGapReport rep = classify_step_gap(a, n, eta);
    const bool at_breakpoint = rep.regime == StepGapCase::above ||
                               (rep.regime == StepGapCase::inside &&
                                rep.upper_vs != std::strong_ordering::less);
    StepInterval st;
    if (at_breakpoint) {
        st.t_lo = qn;
        st.t_hi = std::min(a.convergent(n + 1).q, b.convergent(mb + 1).q);
        st.a = step_value(a, n);
    } else {
        st.t_lo = qn - 1;
        st.t_hi = qn;
        st.a = step_value(a, n - 1);
    }
    st.b = step_value(b, mb);

    const auto cert = certify_gap_ratio(st.a, st.b, Threshold::k_gap());
    if (!cert || cert->gap_sign == 0 || cert->vs == std::strong_ordering::less)
        raise(Errc::internal_error, "hypotheses held but the breakpoint witness failed to certify");
    return {n, at_breakpoint ? n : n - 1, rep.regime,
            GapWitness{st, cert->vs, cert->method, cert->width, cert->ratio}};
}

// ------------------------------------------------------------- sign flips ---

std::vector<SignFlip> find_sign_changes(const PsiCurve& a, const PsiCurve& b, const Int& t_max) {
    gate_equivalence(a, b);
    std::vector<SignFlip> flips;
    const StepInterval* prev = nullptr;
    int prev_sign = 0;
    const auto steps = merged_breakpoints(a, b, Int(1), t_max);
    for (const StepInterval& st : steps) {
        const auto s = decide_sign(st.a, st.b);
        if (!s)
            raise(Errc::precision_exhausted,
                  "step sign undecidable from finite-prefix bounds");
        if (*s == 0) continue;
        if (prev && prev_sign != *s) flips.push_back({*prev, st, prev_sign, *s});
        prev = &st;
        prev_sign = *s;
    }
    return flips;
}

// ------------------------------------------------------- reciprocal  gaps ---

std::optional<ReciprocalWitness> find_reciprocal_witness(const PsiCurve& a, const PsiCurve& b,
                                                         const Int& t_min, const Int& t_max) {
    gate_equivalence(a, b);
    const Rat display_w = pow10_neg(30);
    for (const StepInterval& st : merged_breakpoints(a, b, t_min, t_max)) {
        const auto s = decide_sign(st.a, st.b);
        if (!s || *s == 0) continue;
        const StepValue& big = (*s > 0) ? st.a : st.b;
        const StepValue& small = (*s > 0) ? st.b : st.a;
        const Int& t = st.t_lo;
        if (big.exact && small.exact && big.exact->d() == small.exact->d()) {
            // |1/psi_a - 1/psi_b| = 1/small - 1/big, a surd; divide by t and
            // compare with K exactly.
            const QuadraticSurd D = small.exact->recip().sub(big.exact->recip());
            const auto vs = cmp_k_gap(D.mul_rat(Rat(Int(1), t)));
            if (vs == std::strong_ordering::less) continue;
            ReciprocalWitness w;
            w.step = st;
            w.t = t;
            w.gap = enclose(D, display_w);
            w.kt = enclose(NamedConstant::k_gap, display_w).scale(Rat(t));
            w.vs_kt = vs;
            w.method = CertMethod::exact;
            w.width = 0;
            return w;
        }
        Rat wd = pow10_neg(10);
        const Rat cap = pow10_neg(40);
        for (;;) {
            const RationalInterval S = positive_enclosure(small, wd);
            const RationalInterval B = positive_enclosure(big, wd);
            RationalInterval D = S.recip().sub(B.recip());
            if (D.lo() < 0) D = RationalInterval(Rat(0), D.hi());
            const RationalInterval kt = enclose(NamedConstant::k_gap, wd).scale(Rat(t));
            if (D.lo() > kt.hi()) {
                ReciprocalWitness w;
                w.step = st;
                w.t = t;
                w.gap = D;
                w.kt = kt;
                w.vs_kt = std::strong_ordering::greater;
                w.method = CertMethod::interval;
                w.width = wd;
                return w;
            }
            if (D.hi() < kt.lo() || wd <= cap) break;
            wd *= pow10_neg(10);
        }
    }
    return std::nullopt;
}

// --------------------------------------------------------------- Minkowski ---

MinkowskiReport check_minkowski(const PsiCurve& a, std::size_t upto_index) {
    if (!a.has_value())
        raise(Errc::horizon_exceeded, "the sharpened bound needs exact step values");
    MinkowskiReport rep;
    rep.upto_index = upto_index;
    std::optional<QuadraticSurd> best;
    for (std::size_t n = 0; n <= upto_index; ++n) {
        const QuadraticSurd product = a.error(n).mul_rat(Rat(a.convergent(n + 1).q));
        if (product.cmp_rat(Rat(1)) != std::strong_ordering::less)
            raise(Errc::internal_error, "xi_n * q_{n+1} >= 1: exact arithmetic is broken");
        if (!best || product.cmp(*best) == std::strong_ordering::greater) {
            best = product;
            rep.argmax = n;
        }
    }
    rep.max_product = enclose(*best, pow10_neg(30));
    rep.all_below_one = true;
    return rep;
}

// ------------------------------------------------------------ coincidences ---

namespace {

std::vector<Int> digit_range(const PartialQuotients& pq, std::size_t lo, std::size_t hi) {
    std::vector<Int> out;
    for (std::size_t i = lo; i <= hi; ++i) out.push_back(pq.digit(i));
    return out;
}

CoincidencePattern classify_pair(const PartialQuotients& A, const PartialQuotients& B,
                                 std::size_t n, std::size_t m, bool hyp_first, bool hyp_second) {
    if (hyp_first) {
        if (m == n && digit_range(A, 1, n) == digit_range(B, 1, n))
            return CoincidencePattern::i_equal;
        if (m == n + 1 && A.digit(1) >= 2) {
            std::vector<Int> want{Int(1), A.digit(1) - 1};
            for (std::size_t j = 2; j <= n; ++j) want.push_back(A.digit(j));
            if (want == digit_range(B, 1, m)) return CoincidencePattern::i_shift_alpha;
        }
        if (n == m + 1 && B.digit(1) >= 2) {
            std::vector<Int> want{Int(1), B.digit(1) - 1};
            for (std::size_t j = 2; j <= m; ++j) want.push_back(B.digit(j));
            if (want == digit_range(A, 1, n)) return CoincidencePattern::i_shift_beta;
        }
    }
    if (hyp_second) {
        if (m == n && n == 2) {
            // Degenerate length: q_2/q_0 = [a_1+1] splits as (a_1, 1), so the
            // reversed pattern is (b_1, b_2) = (1, a_1) with no separate
            // a_1 - 1 digit.
            std::vector<Int> want{Int(1), A.digit(1)};
            if (want == digit_range(B, 1, m)) return CoincidencePattern::ii_case1;
        }
        if (m == n && n >= 3 && A.digit(1) >= 2) {
            std::vector<Int> want{Int(1), A.digit(1) - 1};
            for (std::size_t j = 2; j + 2 <= n; ++j) want.push_back(A.digit(j));
            want.push_back(A.digit(n - 1) + 1);
            if (want == digit_range(B, 1, n)) return CoincidencePattern::ii_case1;
        }
        // Unlike the two splitting cases, the equal-length case constrains no
        // first digit: a_1 = 1 occurs and still matches.
        if (m + 1 == n) {
            std::vector<Int> want;
            for (std::size_t j = 1; j + 2 <= n; ++j) want.push_back(A.digit(j));
            want.push_back(A.digit(n - 1) + 1);
            if (want == digit_range(B, 1, m)) return CoincidencePattern::ii_case2;
        }
        if (m + 2 == n && B.digit(1) >= 2) {
            std::vector<Int> lhs{Int(1), B.digit(1) - 1};
            for (std::size_t j = 2; j <= m; ++j) lhs.push_back(B.digit(j));
            std::vector<Int> rhs;
            for (std::size_t j = 1; j <= m; ++j) rhs.push_back(A.digit(j));
            rhs.push_back(A.digit(m + 1) + 1);
            if (lhs == rhs) return CoincidencePattern::ii_case3;
        }
    }
    return CoincidencePattern::unclassified;
}

}  // namespace

const char* coincidence_pattern_name(CoincidencePattern p) {
    switch (p) {
        case CoincidencePattern::i_equal: return "(i)-equal";
        case CoincidencePattern::i_shift_alpha: return "(i)-shift-alpha";
        case CoincidencePattern::i_shift_beta: return "(i)-shift-beta";
        case CoincidencePattern::ii_case1: return "(ii)-case1";
        case CoincidencePattern::ii_case2: return "(ii)-case2";
        case CoincidencePattern::ii_case3: return "(ii)-case3";
        case CoincidencePattern::unclassified: return "unclassified";
    }
    return "unclassified";
}

std::vector<CoincidenceRecord> classify_coincidences(const PsiCurve& a, const PsiCurve& b,
                                                     const Int& t_max) {
    if (t_max < 1) raise(Errc::domain_error, "coincidence bound must be >= 1");
    std::map<Int, std::vector<std::size_t>> b_by_value;
    for (std::size_t m = 0;; ++m) {
        const Int& s = b.convergent(m).q;
        if (s > t_max) break;
        b_by_value[s].push_back(m);
    }
    std::vector<CoincidenceRecord> out;
    for (std::size_t n = 0;; ++n) {
        const Int& q = a.convergent(n).q;
        if (q > t_max) break;
        const auto hit = b_by_value.find(q);
        if (hit == b_by_value.end()) continue;
        for (const std::size_t m : hit->second) {
            CoincidenceRecord rec;
            rec.q = q;
            rec.n = n;
            rec.m = m;
            rec.hyp_first =
                n >= 1 && m >= 1 && a.convergent(n - 1).q == b.convergent(m - 1).q;
            rec.hyp_second = n >= 2 && m >= 1 && a.digits().digit(n) == 1 &&
                             a.convergent(n - 2).q == b.convergent(m - 1).q;
            rec.pattern =
                classify_pair(a.digits(), b.digits(), n, m, rec.hyp_first, rec.hyp_second);
            out.push_back(std::move(rec));
        }
    }
    return out;
}

}  // namespace psicf
