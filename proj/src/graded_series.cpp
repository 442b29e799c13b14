#include "quiverbps/graded_series.hpp"

#include <algorithm>

#include "quiverbps/errors.hpp"

namespace qbps {

namespace {

void require_dim_in_box(const DimVector& d, const DimVector& box) {
    if (d.size() != box.size() || !dv_leq(d, box))
        throw check_error("graded series term outside box: " + dv_to_string(d));
}

Int binom(const Int& n, int k) {
    if (k < 0) return 0;
    Int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - (i - 1)) / i;
    return r;
}

}  // namespace

GradedSeries::GradedSeries(DimVector box, int win_lo, int win_hi)
    : box_(std::move(box)), win_lo_(win_lo), win_hi_(win_hi) {
    if (win_lo_ > win_hi_) throw check_error("graded series window is empty");
    for (int b : box_)
        if (b < 0) throw check_error("graded series box has a negative entry");
}

GradedSeries GradedSeries::one(DimVector box, int win_lo, int win_hi) {
    GradedSeries s(std::move(box), win_lo, win_hi);
    s.set_term(DimVector(s.box_.size(), 0), HalfLaurent::one());
    return s;
}

HalfLaurent GradedSeries::term(const DimVector& d) const {
    require_dim_in_box(d, box_);
    auto it = terms_.find(d);
    return it == terms_.end() ? HalfLaurent() : it->second;
}

void GradedSeries::set_term(const DimVector& d, const HalfLaurent& h) {
    require_dim_in_box(d, box_);
    HalfLaurent t = h.truncated(win_lo_, win_hi_);
    if (t.is_zero())
        terms_.erase(d);
    else
        terms_[d] = std::move(t);
}

void GradedSeries::add_term(const DimVector& d, const HalfLaurent& h) {
    set_term(d, term(d) + h);
}

bool GradedSeries::same_shape(const GradedSeries& o) const {
    return box_ == o.box_ && win_lo_ == o.win_lo_ && win_hi_ == o.win_hi_;
}

bool GradedSeries::operator==(const GradedSeries& o) const {
    return same_shape(o) && terms_ == o.terms_;
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
    if (!same_shape(o)) throw check_error("graded series shape mismatch in +");
    for (const auto& [d, h] : o.terms_) add_term(d, h);
    return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& o) {
    if (!same_shape(o)) throw check_error("graded series shape mismatch in -");
    for (const auto& [d, h] : o.terms_) add_term(d, -h);
    return *this;
}

bool GradedSeries::all_integer_coeffs() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.second.all_integer_coeffs(); });
}

bool GradedSeries::is_signed_dimension_series() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.second.is_signed_dimension_series(); });
}

void GradedSeries::window_clamp() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second = it->second.truncated(win_lo_, win_hi_);
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b) {
    if (!a.same_shape(b)) throw check_error("graded series shape mismatch in mul");
    GradedSeries r(a.box_, a.win_lo_, a.win_hi_);
    for (const auto& [da, ha] : a.terms_)
        for (const auto& [db, hb] : b.terms_) {
            DimVector d = dv_add(da, db);
            if (!dv_leq(d, r.box_)) continue;
            auto it = r.terms_.find(d);
            if (it == r.terms_.end())
                r.terms_[d] = ha * hb;
            else
                it->second += ha * hb;
        }
    r.window_clamp();
    return r;
}

namespace {

// Exact graded product (box truncation only); callers clamp the window once at the end.
std::map<DimVector, HalfLaurent> raw_mul(const std::map<DimVector, HalfLaurent>& a,
                                         const std::map<DimVector, HalfLaurent>& b,
                                         const DimVector& box) {
    std::map<DimVector, HalfLaurent> r;
    for (const auto& [da, ha] : a)
        for (const auto& [db, hb] : b) {
            DimVector d = dv_add(da, db);
            if (!dv_leq(d, box)) continue;
            auto it = r.find(d);
            if (it == r.end())
                r[d] = ha * hb;
            else
                it->second += ha * hb;
        }
    return r;
}

// psi_k scales the dimension grading and the cohomological grading by k.
std::map<DimVector, HalfLaurent> raw_psi(const std::map<DimVector, HalfLaurent>& f, int k,
                                         const DimVector& box) {
    std::map<DimVector, HalfLaurent> r;
    for (const auto& [d, h] : f) {
        DimVector kd = dv_scale(k, d);
        if (!dv_leq(kd, box)) continue;
        r[kd] = h.psi(k);
    }
    return r;
}

void raw_add_scaled(std::map<DimVector, HalfLaurent>& acc,
                    const std::map<DimVector, HalfLaurent>& f, const Rat& c) {
    for (const auto& [d, h] : f) {
        auto it = acc.find(d);
        if (it == acc.end())
            acc[d] = h.scaled(c);
        else
            it->second += h.scaled(c);
    }
}

}  // namespace

GradedSeries plethystic_exp(const GradedSeries& f) {
    DimVector zero(f.box_.size(), 0);
    if (f.terms_.count(zero)) throw check_error("plethystic_exp requires zero constant term");
    const bool signed_input = f.is_signed_dimension_series();
    int total = dv_total(f.box_);

    std::map<DimVector, HalfLaurent> g;
    for (int k = 1; k <= total; ++k) raw_add_scaled(g, raw_psi(f.terms_, k, f.box_), Rat(1, k));

    // exp(g) = sum g^n / n!; g has no constant term so n > |box| contributes nothing.
    std::map<DimVector, HalfLaurent> acc{{zero, HalfLaurent::one()}};
    std::map<DimVector, HalfLaurent> pow{{zero, HalfLaurent::one()}};
    Int factorial = 1;
    for (int n = 1; n <= total && !pow.empty(); ++n) {
        pow = raw_mul(pow, g, f.box_);
        factorial *= n;
        raw_add_scaled(acc, pow, Rat(1, factorial));
    }

    GradedSeries r(f.box_, f.win_lo_, f.win_hi_);
    r.terms_ = std::move(acc);
    r.window_clamp();
    if (signed_input && !r.all_integer_coeffs())
        throw check_error("plethystic_exp of an integer signed series is not integral");
    return r;
}

GradedSeries plethystic_log(const GradedSeries& g) {
    DimVector zero(g.box_.size(), 0);
    if (g.term(zero) != HalfLaurent::one())
        throw check_error("plethystic_log requires constant term 1");
    int total = dv_total(g.box_);

    std::map<DimVector, HalfLaurent> h = g.terms_;
    h.erase(zero);

    // log(g) = sum_{n>=1} (-1)^(n+1) h^n / n.
    std::map<DimVector, HalfLaurent> lg;
    std::map<DimVector, HalfLaurent> pow{{zero, HalfLaurent::one()}};
    for (int n = 1; n <= total && !pow.empty(); ++n) {
        pow = raw_mul(pow, h, g.box_);
        raw_add_scaled(lg, pow, Rat(n % 2 ? 1 : -1, n));
    }

    std::map<DimVector, HalfLaurent> acc;
    for (int k = 1; k <= total; ++k) {
        int mu = moebius(k);
        if (mu == 0) continue;
        raw_add_scaled(acc, raw_psi(lg, k, g.box_), Rat(mu, k));
    }

    GradedSeries r(g.box_, g.win_lo_, g.win_hi_);
    r.terms_ = std::move(acc);
    r.window_clamp();
    return r;
}

HalfLaurent symmetric_power_character(const HalfLaurent& f, int n) {
    if (n < 0) throw check_error("symmetric power order must be nonnegative");
    if (!f.is_signed_dimension_series())
        throw check_error("symmetric_power_character needs integer coefficients of sign (-1)^k");

    // dp[j] = coefficient of x^j in prod over basis weights of the per-weight factor.
    std::vector<HalfLaurent> dp(static_cast<size_t>(n) + 1);
    dp[0] = HalfLaurent::one();
    for (const auto& [e, c] : f.terms()) {
        Int m = rat_num(c);
        bool odd = ((e % 2) + 2) % 2 == 1;
        if (odd) m = -m;
        // factor: even (1 - x q^(e/2))^(-m), odd (1 - x q^(e/2))^m expanded in x.
        std::vector<HalfLaurent> next(static_cast<size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) {
            if (dp[j].is_zero()) continue;
            for (int i = 0; j + i <= n; ++i) {
                Int coef = odd ? binom(m, i) * ((i % 2) ? -1 : 1) : binom(m + i - 1, i);
                if (coef == 0) {
                    if (odd && Int(i) > m) break;
                    continue;
                }
                next[j + i] += dp[j].scaled(Rat(coef)).shifted(e * i);
            }
        }
        dp = std::move(next);
    }
    return dp[static_cast<size_t>(n)];
}

HalfLaurent inverse_one_minus_q(int win_hi) {
    HalfLaurent r;
    for (int e = 0; e <= win_hi; e += 2) r.add_coeff(e, 1);
    return r;
}

int moebius(int n) {
    if (n <= 0) throw check_error("moebius needs a positive argument");
    int r = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
    }
    if (n > 1) r = -r;
    return r;
}

}  // namespace qbps
