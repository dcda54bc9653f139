#include "psicf/extremal.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "psicf/errors.hpp"
#include "psicf/psi.hpp"

namespace psicf {

namespace {

// A*sqrt(5) = V + U/tau = ((2V - U) + U*sqrt(5)) / 2, the growth constant
// of the recurrence started at (U, V).
QuadraticSurd growth_rate(const Int& U, const Int& V) {
    return QuadraticSurd(2 * V - U, U, Int(2), Int(5));
}

bool error_certified_below(const QuadraticSurd& W, const Rat& eps) {
    // |W - sqrt(tau)| < eps  <=>  W - eps < sqrt(tau) < W + eps, both sides
    // decided exactly by one squaring.
    return cmp_sqrt_tau(W.add_rat(-eps)) == std::strong_ordering::less &&
           cmp_sqrt_tau(W.add_rat(eps)) == std::strong_ordering::greater;
}

// Deterministic seed enumeration: |U| ascending (+ before -), and within
// one U the integer V window that could possibly satisfy the error bound,
// |V| ascending (+ before -).
class SeedStream {
  public:
    explicit SeedStream(Rat eps) : eps_(std::move(eps)) {
        if (eps_ <= 0) raise(Errc::domain_error, "eps must be positive");
    }

    SeedPair next() {
        for (;;) {
            if (pending_.empty()) {
                advance_u();
                continue;
            }
            const auto [U, V] = pending_.front();
            pending_.pop_front();
            if (gcd(abs(U), abs(V)) != 1) continue;
            // positive growth constant: A > 0 <=> tau*V + U > 0
            if (golden_ratio().mul_rat(Rat(V)).add_rat(Rat(U)).sign() <= 0) continue;
            const QuadraticSurd W = growth_rate(U, V);
            if (!error_certified_below(W, eps_)) continue;
            const Rat rw = pow10_neg(30);
            return {U, V,
                    enclose(W, rw).sub(enclose(NamedConstant::sqrt_tau, rw)).abs()};
        }
    }

  private:
    void advance_u() {
        if (!started_) {
            started_ = true;
            u_ = 0;
        } else if (u_ > 0) {
            u_ = -u_;
        } else {
            u_ = -u_ + 1;
        }
        if (u_ > budget_)
            raise(Errc::search_budget_exceeded, "no admissible seed with |U| <= 10^9");
        fill_window(u_);
    }

    void fill_window(const Int& U) {
        // V must lie in (sqrt(tau) - U/tau - eps, sqrt(tau) + eps - U/tau);
        // pad the rational bounds by 1 and let the exact test filter.
        const Rat w(Int(1), Int(1000000));
        const RationalInterval st = enclose(NamedConstant::sqrt_tau, w);
        const RationalInterval ut = enclose(golden_ratio().recip().mul_rat(Rat(U)), w);
        const Int v_lo = floor_rat(st.lo() - ut.hi() - eps_) - 1;
        const Int v_hi = floor_rat(st.hi() - ut.lo() + eps_) + 1;
        std::vector<Int> vs;
        for (Int v = v_lo; v <= v_hi; ++v) vs.push_back(v);
        std::sort(vs.begin(), vs.end(), [](const Int& x, const Int& y) {
            const Int ax = abs(x), ay = abs(y);
            if (ax != ay) return ax < ay;
            return x > y;  // +v before -v
        });
        for (Int& v : vs) pending_.emplace_back(u_, std::move(v));
    }

    Rat eps_;
    bool started_ = false;
    Int u_ = 0;
    const Int budget_ = Int(1000000000);
    std::deque<std::pair<Int, Int>> pending_;
};

std::vector<Int> recurrence_values(const SeedPair& seed, std::size_t upto) {
    std::vector<Int> x{seed.U, seed.V};
    while (x.size() <= upto) x.push_back(x[x.size() - 1] + x[x.size() - 2]);
    return x;
}

// F_n with F_1 = F_2 = 1; the golden ratio's denominators are q_n = F_{n+1}.
Int fibonacci(const PsiCurve& tau_curve, std::size_t n) {
    return n == 0 ? Int(0) : tau_curve.convergent(n - 1).q;
}

// Builds the construction for one seed; false when phi degenerates into an
// integer shift of tau (the excluded-pair case).
bool assemble(SeedPair seed, const Rat& eps, Construction& c) {
    std::vector<Int> x{seed.U, seed.V};
    std::optional<std::size_t> k;
    for (std::size_t j = 1; j < 4000; ++j) {
        while (x.size() <= j) x.push_back(x[x.size() - 1] + x[x.size() - 2]);
        if (x[j - 1] >= 1 && x[j] >= 1 && x[j - 1] < x[j]) {
            k = j;
            break;
        }
    }
    if (!k)
        raise(Errc::internal_error, "positive-growth recurrence never turned increasing");
    c.epsilon = eps;
    c.k = *k;
    const std::vector<Int> digits = unit_ratio_digits(x[*k - 1], x[*k]);
    c.b.assign(digits.rbegin(), digits.rend());
    c.w = c.b.size();
    c.n0 = static_cast<long long>(*k) - static_cast<long long>(c.w);
    c.phi_digits = PartialQuotients::periodic(Int(0), c.b, {Int(1)});
    c.phi = cf_to_surd(c.phi_digits);
    x.resize(*k + 1);
    c.x = std::move(x);
    c.seed = std::move(seed);
    return !integer_shift_equiv(c.phi, golden_ratio()).has_value();
}

}  // namespace

SeedPair find_uv(const Rat& eps) { return SeedStream(eps).next(); }

Construction build_construction(const Rat& eps) {
    SeedStream stream(eps);
    for (;;) {
        Construction c;
        if (assemble(stream.next(), eps, c)) return c;
    }
}

InterleavingReport verify_interleaving(const Construction& c, std::size_t n_max) {
    if (n_max < c.k) raise(Errc::domain_error, "n_max must reach past k");
    InterleavingReport rep;
    rep.n_max = n_max;
    const std::vector<Int> x = recurrence_values(c.seed, n_max + 1);
    const PsiCurve tau_curve(golden_ratio());

    // Trailing run of F_n < X_n < F_{n+1}.
    std::size_t first = n_max + 1;
    while (first > 1) {
        const std::size_t j = first - 1;
        if (!(fibonacci(tau_curve, j) < x[j] && x[j] < fibonacci(tau_curve, j + 1))) break;
        first = j;
    }
    rep.holds_eventually = first <= n_max;
    rep.first_valid = first;

    // X_n = A tau^n + B (-tau)^{-n} as an exact identity in Q(sqrt 5).
    const QuadraticSurd golden = golden_ratio();
    const QuadraticSurd A =
        golden.mul_rat(Rat(c.seed.V)).add_rat(Rat(c.seed.U)).div(golden.add_rat(Rat(2)));
    const QuadraticSurd B = QuadraticSurd::from_rational(Rat(c.seed.U)).sub(A);
    QuadraticSurd tau_pow = QuadraticSurd::from_int(1);
    QuadraticSurd tau_inv_pow = QuadraticSurd::from_int(1);
    const QuadraticSurd golden_inv = golden.recip();
    rep.closed_form_ok = true;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const QuadraticSurd tail_term =
            (n % 2 == 0) ? B.mul(tau_inv_pow) : B.mul(tau_inv_pow).neg();
        if (A.mul(tau_pow).add(tail_term).cmp_rat(Rat(x[n])) != std::strong_ordering::equal) {
            rep.closed_form_ok = false;
            break;
        }
        tau_pow = tau_pow.mul(golden);
        tau_inv_pow = tau_inv_pow.mul(golden_inv);
    }

    // Onset of the denominator alignment s_m = X_{m+n0}.
    const PsiCurve phi_curve(c.phi_digits);
    const long long m_hi_signed = static_cast<long long>(n_max) - c.n0;
    if (m_hi_signed >= 0) {
        const std::size_t m_hi = static_cast<std::size_t>(m_hi_signed);
        const std::size_t m_lo = c.n0 < 0 ? static_cast<std::size_t>(-c.n0) : 0;
        std::size_t onset = m_hi + 1;
        while (onset > m_lo) {
            const std::size_t m = onset - 1;
            const std::size_t j = static_cast<std::size_t>(static_cast<long long>(m) + c.n0);
            if (phi_curve.convergent(m).q != x[j]) break;
            onset = m;
        }
        if (onset <= m_hi) rep.alignment_onset = onset;
    }

    rep.pass = rep.holds_eventually && rep.closed_form_ok && rep.alignment_onset.has_value();
    return rep;
}

PiiReport verify_pii(const Construction& c, std::size_t n_min, std::size_t n_max,
                     const Rat& slack) {
    if (slack < 0) raise(Errc::domain_error, "slack must be >= 0");
    if (n_min < 2 || n_min >= n_max)
        raise(Errc::domain_error, "window must satisfy 2 <= n_min < n_max");
    PiiReport rep;
    rep.n_min = n_min;
    rep.n_max = n_max;
    rep.slack = slack;

    const PsiCurve tau_curve(golden_ratio());
    const PsiCurve phi_curve(c.phi_digits);
    rep.t_lo = fibonacci(tau_curve, n_min);
    rep.t_hi = fibonacci(tau_curve, n_max);

    std::optional<QuadraticSurd> best;
    for (const StepInterval& st : merged_breakpoints(tau_curve, phi_curve, rep.t_lo, rep.t_hi)) {
        const QuadraticSurd& va = *st.a.exact;
        const QuadraticSurd& vb = *st.b.exact;
        const auto s = va.cmp(vb);
        if (s == std::strong_ordering::equal) continue;
        const QuadraticSurd& hi = (s == std::strong_ordering::greater) ? va : vb;
        const QuadraticSurd& lo = (s == std::strong_ordering::greater) ? vb : va;
        QuadraticSurd ratio = hi.sub(lo).div(lo);
        if (!best || ratio.cmp(*best) == std::strong_ordering::greater) {
            best = std::move(ratio);
            rep.argmax_t = st.t_lo;
        }
    }
    if (!best) raise(Errc::internal_error, "sweep window contained no unequal step");
    rep.max_ratio = *best;
    rep.max_ratio_bounds = enclose(*best, pow10_neg(30));

    // K - slack <= max <= K + eps + slack, exactly:
    //   max >= K - slack        <=>  max + 1 + slack       >= sqrt(tau)
    //   max <= K + eps + slack  <=>  max + 1 - eps - slack <= sqrt(tau)
    rep.ratio_within =
        cmp_sqrt_tau(best->add_rat(Rat(1) + slack)) != std::strong_ordering::less &&
        cmp_sqrt_tau(best->add_rat(Rat(1) - c.epsilon - slack)) != std::strong_ordering::greater;

    rep.level_ratio_low = growth_rate(c.seed.U, c.seed.V);
    rep.level_ratio_high = golden_ratio().div(rep.level_ratio_low);
    const Rat five_eps = Rat(5) * c.epsilon;
    const auto within_5eps = [&](const QuadraticSurd& v) {
        return cmp_sqrt_tau(v.add_rat(-five_eps)) == std::strong_ordering::less &&
               cmp_sqrt_tau(v.add_rat(five_eps)) == std::strong_ordering::greater;
    };
    rep.levels_within = within_5eps(rep.level_ratio_low) && within_5eps(rep.level_ratio_high);
    rep.pass = rep.ratio_within && rep.levels_within;
    return rep;
}

}  // namespace psicf
