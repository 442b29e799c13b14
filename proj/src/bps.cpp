#include "quiverbps/bps.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "quiverbps/errors.hpp"

namespace qbps {

namespace {

// a_d in the emission convention: q^{-1} substitution for the full class,
// plain q for the nilpotent ones.
HalfLaurent emitted_kac(const Quiver& q, const DimVector& d, NilpotencyClass cls,
                        const CountingConfig& cfg) {
    if (cls == NilpotencyClass::ALL) return hua_kac(q, d, cfg).poly.inverted();
    return interpolate_kac(q, d, cls, cfg).poly;
}

// Per-degree PBW factor a_d(q^{-1}) (1-q)^{-1} (optionally q^{-chi(d,d)}),
// truncated to [lo, hi].
HalfLaurent pbw_factor(const Quiver& q, const DimVector& d, bool tate_twisted, int lo, int hi,
                       const CountingConfig& cfg) {
    HalfLaurent v = hua_kac(q, d, cfg).poly.inverted();
    if (v.is_zero()) return v;
    if (tate_twisted) v = v.shifted(static_cast<int>(-2 * euler_form(q, d, d)));
    return (v * inverse_one_minus_q(hi - v.min_exp())).truncated(lo, hi);
}

// Most negative exponent over all factor bottoms a_d(q^{-1}) (plus twist).
int factor_floor(const Quiver& q, const DimVector& box, bool tate_twisted,
                 const CountingConfig& cfg) {
    int min_e = 0;
    for (const auto& d : dim_vectors_below(box)) {
        if (dv_is_zero(d)) continue;
        HalfLaurent v = hua_kac(q, d, cfg).poly.inverted();
        if (v.is_zero()) continue;
        if (tate_twisted) v = v.shifted(static_cast<int>(-2 * euler_form(q, d, d)));
        min_e = std::min(min_e, v.min_exp());
    }
    return min_e;
}

void check_window(int win_lo, int win_hi, int min_e) {
    if (win_lo > win_hi) throw usage_error("window is empty");
    if (win_lo > 0 || win_hi < 0) throw usage_error("window must contain exponent 0");
    if (win_lo > min_e) {
        throw usage_error("window too narrow: characters reach doubled exponent " +
                          std::to_string(min_e) + ", window starts at " + std::to_string(win_lo));
    }
}

Rat det(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    Rat d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const Rat f = m[r][col] / m[col][col];
            for (std::size_t cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return d;
}

// Kernel of a symmetric rational matrix via Gaussian elimination.
std::vector<std::vector<Rat>> kernel(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[row]);
        const Rat p = m[row][col];
        for (std::size_t cc = 0; cc < n; ++cc) m[row][cc] /= p;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rat f = m[r][col];
            for (std::size_t cc = 0; cc < n; ++cc) m[r][cc] -= f * m[row][cc];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<std::vector<Rat>> basis;
    for (std::size_t col = 0; col < n; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(col)) !=
            pivot_col.end()) {
            continue;
        }
        std::vector<Rat> v(n, 0);
        v[col] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) {
            v[static_cast<std::size_t>(pivot_col[r])] = -m[r][col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

BPSCharacter bps_character(const Quiver& q, NilpotencyClass cls, const DimVector& box,
                           const CountingConfig& cfg) {
    q.check_dim(box, "bps_character");
    BPSCharacter out;
    out.quiver = q;
    out.cls = cls;
    for (const auto& d : dim_vectors_below(box)) {
        if (dv_is_zero(d)) continue;
        const HalfLaurent v = emitted_kac(q, d, cls, cfg);
        if (!v.is_zero()) out.values[d] = v;
    }
    return out;
}

GradedSeries coha_character(const Quiver& q, const DimVector& box, int win_lo, int win_hi,
                            bool tate_twisted, const CountingConfig& cfg) {
    q.check_dim(box, "coha_character");
    const int min_e = factor_floor(q, box, tate_twisted, cfg);
    check_window(win_lo, win_hi, min_e);
    // Extended interior window: a monomial landing in the requested window is a
    // sum of at most dv_total(box) single-factor exponents, each >= min_e, so
    // no factor above int_hi and nothing below int_lo can contribute.
    const int len = std::max<int>(1, static_cast<int>(dv_total(box)));
    const int int_lo = len * min_e;
    const int int_hi = win_hi + (len - 1) * (-min_e);
    GradedSeries f(box, int_lo, int_hi);
    for (const auto& d : dim_vectors_below(box)) {
        if (dv_is_zero(d)) continue;
        const HalfLaurent h = pbw_factor(q, d, tate_twisted, int_lo, int_hi, cfg);
        if (!h.is_zero()) f.set_term(d, h);
    }
    const GradedSeries full = plethystic_exp(f);
    GradedSeries out(box, win_lo, win_hi);
    for (const auto& [d, h] : full.terms()) out.set_term(d, h);
    return out;
}

HalfLaurent coha_coefficient_by_enumeration(const Quiver& q, const DimVector& d, int win_lo,
                                            int win_hi, bool tate_twisted,
                                            const CountingConfig& cfg) {
    q.check_dim(d, "coha_coefficient_by_enumeration");
    const int min_e = factor_floor(q, d, tate_twisted, cfg);
    check_window(win_lo, win_hi, min_e);
    if (dv_is_zero(d)) return HalfLaurent::one().truncated(win_lo, win_hi);
    const int len = std::max<int>(1, static_cast<int>(dv_total(d)));
    const int int_lo = len * min_e;
    const int int_hi = win_hi + (len - 1) * (-min_e);

    std::vector<DimVector> parts;
    std::vector<HalfLaurent> factors;
    for (const auto& e : dim_vectors_below(d)) {
        if (dv_is_zero(e)) continue;
        const HalfLaurent h = pbw_factor(q, e, tate_twisted, int_lo, int_hi, cfg);
        if (!h.is_zero()) {
            parts.push_back(e);
            factors.push_back(h);
        }
    }

    // Sum over multiset decompositions d = sum m_k part_k of products of
    // graded symmetric powers of the factors.
    HalfLaurent total;
    std::function<void(std::size_t, const DimVector&, const HalfLaurent&)> rec =
        [&](std::size_t k, const DimVector& rem, const HalfLaurent& acc) {
            if (dv_is_zero(rem)) {
                total += acc;
                return;
            }
            if (k == parts.size()) return;
            DimVector r = rem;
            for (int m = 0;; ++m) {
                if (m > 0) {
                    if (!dv_leq(parts[k], r)) break;
                    r = dv_sub(r, parts[k]);
                }
                const HalfLaurent sym =
                    m == 0 ? HalfLaurent::one()
                           : symmetric_power_character(factors[k], m).truncated(int_lo, int_hi);
                if (sym.is_zero()) continue;
                rec(k + 1, r, (acc * sym).truncated(int_lo, int_hi));
            }
        };
    rec(0, d, HalfLaurent::one());
    return total.truncated(win_lo, win_hi);
}

GradedDims zeroth_piece_character(const Quiver& q, const DimVector& box) {
    q.check_dim(box, "zeroth_piece_character");
    const RealSubquiver sub = real_subquiver(q);
    DimVector sub_box(sub.vertex_map.size(), 0);
    for (std::size_t k = 0; k < sub.vertex_map.size(); ++k) {
        sub_box[k] = box[static_cast<std::size_t>(sub.vertex_map[k])];
    }
    const GradedDims u = uea_dims(km_root_mult_recursion(sub.quiver, sub_box), sub_box);
    GradedDims out;
    for (const auto& [ds, h] : u) {
        DimVector d(box.size(), 0);
        for (std::size_t k = 0; k < sub.vertex_map.size(); ++k) {
            d[static_cast<std::size_t>(sub.vertex_map[k])] = ds[k];
        }
        out[d] = h;
    }
    return out;
}

AffineBPSCharacter affine_bps_character(const Quiver& q, const DimVector& box) {
    q.check_dim(box, "affine_bps_character");
    const std::size_t n = q.num_vertices();
    if (n == 0) throw usage_error("affine check failed: empty quiver");
    std::vector<std::vector<Rat>> cartan(n, std::vector<Rat>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cartan[i][j] = symmetrized_form(q, dv_unit(n, i), dv_unit(n, j));
        }
    }

    // Positive semidefinite <=> every principal minor is >= 0 (exact).
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t(1) << i)) idx.push_back(i);
        }
        std::vector<std::vector<Rat>> sub(idx.size(), std::vector<Rat>(idx.size()));
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) sub[a][b] = cartan[idx[a]][idx[b]];
        }
        if (det(std::move(sub)) < 0) {
            std::ostringstream os;
            os << "affine check failed: symmetrized form is not positive semidefinite "
                  "(negative principal minor on vertices {";
            for (std::size_t a = 0; a < idx.size(); ++a) {
                os << (a ? "," : "") << q.vertex_name(idx[a]);
            }
            os << "})";
            throw usage_error(os.str());
        }
    }

    const auto null_basis = kernel(cartan);
    if (null_basis.size() != 1) {
        throw usage_error("affine check failed: kernel of the symmetrized form has dimension " +
                          std::to_string(null_basis.size()) + ", need 1");
    }
    // Scale the null vector to a primitive integer vector; it must be positive.
    std::vector<Rat> v = null_basis.front();
    Int lcm = 1;
    for (const Rat& x : v) lcm = boost::multiprecision::lcm(lcm, rat_den(x));
    std::vector<Int> w;
    Int g = 0;
    for (const Rat& x : v) {
        const Int y = to_integer(x * lcm);
        w.push_back(y);
        g = boost::multiprecision::gcd(g, y);
    }
    if (g != 0) {
        for (Int& x : w) x /= g;
    }
    int sign = 0;
    for (const Int& x : w) {
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    }
    DimVector delta(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const Int x = sign < 0 ? Int(-w[i]) : w[i];
        if (x <= 0) {
            throw usage_error(
                "affine check failed: null vector of the symmetrized form is not positive");
        }
        delta[i] = static_cast<int>(x);
    }

    AffineBPSCharacter out;
    out.character.quiver = q;
    out.character.cls = NilpotencyClass::ALL;
    out.delta = delta;
    const HalfLaurent imaginary_value =
        HalfLaurent::monomial(-2, 1) + HalfLaurent::constant(static_cast<long long>(n) - 1);
    for (const auto& d : dim_vectors_below(box)) {
        if (dv_is_zero(d)) continue;
        if (symmetrized_form(q, d, d) == 2) {
            out.real_roots.push_back(d);
            out.character.values[d] = HalfLaurent::one();
            continue;
        }
        const int k = d[0] / delta[0];
        if (k >= 1 && d == dv_scale(k, delta)) out.character.values[d] = imaginary_value;
    }
    return out;
}

std::vector<SerreVanishingCheck> serre_vanishing_suite(const Quiver& q,
                                                       const CountingConfig& cfg) {
    std::vector<SerreVanishingCheck> out;
    const std::size_t n = q.num_vertices();
    for (std::size_t i = 0; i < n; ++i) {
        if (q.loops_at(i) != 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            int e = 0;
            for (const Arrow& a : q.arrows()) {
                const auto s = static_cast<std::size_t>(a.src);
                const auto t = static_cast<std::size_t>(a.tgt);
                if ((s == i && t == j) || (s == j && t == i)) ++e;
            }
            DimVector d(n, 0);
            d[i] = e + 1;
            d[j] = 1;
            SerreVanishingCheck chk;
            chk.d = d;
            chk.pass = hua_kac(q, d, cfg).poly.is_zero();
            out.push_back(std::move(chk));
        }
    }
    return out;
}

ExtractionReport cuspidal_extract(const Quiver& q, const DimVector& box, int win_lo, int win_hi,
                                  const CountingConfig& cfg) {
    q.check_dim(box, "cuspidal_extract");
    if (win_lo > win_hi) throw usage_error("window is empty");
    const BPSCharacter bps = bps_character(q, NilpotencyClass::ALL, box, cfg);

    ExtractionReport report;
    report.quiver = q;
    report.box = box;

    LieGenerators gens;
    GradedDims current;  // quotient dims for the generators found so far
    bool dirty = false;
    for (const auto& d : dim_vectors_below(box)) {
        if (dv_is_zero(d)) continue;
        if (dirty) {
            current = serre_quotient_dims(gens, euler_pairing_form(q, gens), box);
            dirty = false;
        }
        const HalfLaurent residual = dims_at(bps.values, d) - dims_at(current, d);
        if (residual.is_zero()) continue;
        if (residual.min_exp() < win_lo || residual.max_exp() > win_hi) {
            throw usage_error("window too narrow for the residual at " + dv_to_string(d));
        }

        ExtractionEntry entry;
        entry.d = d;
        entry.residual = residual;
        bool real_simple = dv_total(d) == 1;
        if (real_simple) {
            for (std::size_t i = 0; i < d.size(); ++i) {
                if (d[i] == 1 && q.loops_at(i) != 0) real_simple = false;
            }
        }
        if (real_simple) {
            entry.tag = "real-simple";
        } else if (symmetrized_form(q, d, d) == 0) {
            entry.tag = "isotropic-line";
        } else {
            entry.tag = "hyperbolic-residual";
        }
        entry.nonnegative = residual.all_nonnegative_coeffs();
        report.all_nonnegative = report.all_nonnegative && entry.nonnegative;

        // New generators: one multiplicity per cohomological degree.  Negative
        // residual coefficients cannot be realized as multiplicities; they are
        // reported above and skipped here.
        for (const auto& [e, c] : residual.terms()) {
            if (c < 0) continue;
            LieGenerator g;
            g.grading = d;
            g.coh = e;
            g.multiplicity = static_cast<int>(to_integer(c));
            g.real = entry.tag == "real-simple";
            gens.push_back(std::move(g));
            dirty = true;
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace qbps
