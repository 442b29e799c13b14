#pragma once

#include <map>

#include "quiverbps/half_laurent.hpp"
#include "quiverbps/quiver.hpp"

namespace qbps {

// Formal series sum_{0 <= d <= box} c_d(q^(1/2)) T^d whose coefficients are
// HalfLaurent values.  `box` truncates the dimension-vector grading; the
// cohomological window [win_lo, win_hi] (doubled exponents) truncates stored
// coefficients.  Operations compute exactly on the stored (already truncated)
// inputs and apply the window only to their final output, so different
// evaluation orders of the same expression agree coefficient for coefficient.
class GradedSeries {
public:
    GradedSeries(DimVector box, int win_lo, int win_hi);

    static GradedSeries one(DimVector box, int win_lo, int win_hi);

    const DimVector& box() const { return box_; }
    int win_lo() const { return win_lo_; }
    int win_hi() const { return win_hi_; }

    const std::map<DimVector, HalfLaurent>& terms() const { return terms_; }
    HalfLaurent term(const DimVector& d) const;
    void set_term(const DimVector& d, const HalfLaurent& h);
    void add_term(const DimVector& d, const HalfLaurent& h);

    bool same_shape(const GradedSeries& o) const;
    bool operator==(const GradedSeries& o) const;

    GradedSeries& operator+=(const GradedSeries& o);
    GradedSeries& operator-=(const GradedSeries& o);
    friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
    friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }

    bool all_integer_coeffs() const;
    bool is_signed_dimension_series() const;  // every term passes the HalfLaurent check

private:
    void window_clamp();

    DimVector box_;
    int win_lo_;
    int win_hi_;
    std::map<DimVector, HalfLaurent> terms_;

    friend GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b);
    friend GradedSeries plethystic_exp(const GradedSeries& f);
    friend GradedSeries plethystic_log(const GradedSeries& g);
};

// Product truncated to the common box and window; boxes and windows must match.
GradedSeries series_mul(const GradedSeries& a, const GradedSeries& b);

// Exp(f) = exp(sum_{k>=1} psi_k(f)/k) where psi_k scales both gradings by k.
// Odd cohomological degrees (negative signed dimensions) yield exterior
// algebra factors, even ones symmetric algebra factors.  Requires f_0 = 0.
// When f is a signed dimension series the result must have integer
// coefficients; this is asserted.
GradedSeries plethystic_exp(const GradedSeries& f);

// Inverse of plethystic_exp: Log(g) = sum_{k>=1} mu(k)/k psi_k(log g).
// Requires g_0 = 1.
GradedSeries plethystic_log(const GradedSeries& g);

// Character of Sym^n of the graded super vector space whose character is `f`
// (coefficient at doubled exponent k must be an integer of sign (-1)^k).
// Enumerates monomials directly: even basis elements repeat freely, odd ones
// appear at most once.  Exact, no window.
HalfLaurent symmetric_power_character(const HalfLaurent& f, int n);

// Truncated expansion of 1/(1-q): 1 + q + q^2 + ... up to doubled exponent win_hi.
HalfLaurent inverse_one_minus_q(int win_hi);

int moebius(int n);

}  // namespace qbps
