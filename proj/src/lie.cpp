#include "quiverbps/lie.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "quiverbps/errors.hpp"

namespace qbps {

namespace {

// Words in the expanded alphabet (one letter per generator copy), compared
// lexicographically by letter id.  Letter ids follow (declaration index,
// copy index), which for quiver generator sets means (vertex, level, copy).
using Word = std::vector<int>;

// Element of the tensor algebra: word -> coefficient, zero coefficients pruned.
using SparseVec = std::map<Word, Rat>;

struct Letter {
    int gen = 0;  // index into the generator list (copies share it)
    DimVector grading;
    int coh = 0;
};

void prune_zeros(SparseVec& v) {
    for (auto it = v.begin(); it != v.end();) {
        if (it->second == 0) {
            it = v.erase(it);
        } else {
            ++it;
        }
    }
}

SparseVec concat_mul(const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    for (const auto& [wa, ca] : a) {
        for (const auto& [wb, cb] : b) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out[w] += ca * cb;
        }
    }
    prune_zeros(out);
    return out;
}

// [a, b] = ab - (-1)^{p(a) p(b)} ba (Koszul rule).
SparseVec super_bracket(const SparseVec& a, bool pa, const SparseVec& b, bool pb) {
    SparseVec out = concat_mul(a, b);
    const Rat sign = (pa && pb) ? Rat(1) : Rat(-1);
    for (const auto& [w, c] : concat_mul(b, a)) {
        out[w] += sign * c;
    }
    prune_zeros(out);
    return out;
}

// A word is Lyndon iff it is strictly smaller than every proper suffix.
bool is_lyndon(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + i, w.end())) {
            return false;
        }
    }
    return true;
}

// Basis element of the free Lie superalgebra: a Lyndon word w (bracketed via
// its standard factorization), or [b(w), b(w)] for odd-parity w ("square").
struct LieBasisElement {
    Word word;
    bool square = false;
    DimVector grading;
    int coh = 0;
    SparseVec expansion;
};

struct FreeLieBasis {
    std::vector<Letter> letters;
    // Basis elements grouped by grading, in a fixed deterministic order.
    std::map<DimVector, std::vector<LieBasisElement>> by_degree;
};

constexpr double kWordBudget = 4e6;

void validate_generators(const LieGenerators& gens, const DimVector& box) {
    for (int b : box) {
        if (b < 0) throw usage_error("box entries must be nonnegative");
    }
    for (const auto& g : gens) {
        if (g.grading.size() != box.size()) {
            throw usage_error("generator grading has wrong number of vertices");
        }
        if (g.multiplicity < 0) throw usage_error("generator multiplicity must be >= 0");
        bool zero = true;
        for (int x : g.grading) {
            if (x < 0) throw usage_error("generator grading must be nonnegative");
            if (x != 0) zero = false;
        }
        if (zero) throw usage_error("generators in degree zero are not allowed");
    }
}

FreeLieBasis build_basis(const LieGenerators& gens, const DimVector& box) {
    validate_generators(gens, box);
    FreeLieBasis basis;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (!dv_leq(gens[k].grading, box)) continue;  // cannot occur under the box
        for (int c = 0; c < gens[k].multiplicity; ++c) {
            basis.letters.push_back(Letter{static_cast<int>(k), gens[k].grading, gens[k].coh});
        }
    }

    // Count every word with grading <= box before enumerating any of them.
    const auto degrees = dim_vectors_below(box);
    std::map<DimVector, double> word_count;
    double total_words = 0.0;
    for (const auto& d : degrees) {
        if (dv_is_zero(d)) {
            word_count[d] = 1.0;
            continue;
        }
        double w = 0.0;
        for (const auto& ell : basis.letters) {
            if (!dv_leq(ell.grading, d)) continue;
            w += word_count.at(dv_sub(d, ell.grading));
        }
        word_count[d] = w;
        total_words += w;
    }
    if (total_words > kWordBudget) {
        std::ostringstream os;
        os << "free Lie enumeration needs about " << total_words << " words, budget is "
           << kWordBudget;
        throw resource_error(os.str(), total_words);
    }

    // Enumerate all words (depth-first, lexicographic), keep the Lyndon ones.
    std::vector<Word> lyndon;
    Word w;
    DimVector g(box.size(), 0);
    std::function<void()> rec = [&]() {
        for (int ell = 0; ell < static_cast<int>(basis.letters.size()); ++ell) {
            const auto& lg = basis.letters[ell].grading;
            bool fits = true;
            for (std::size_t i = 0; i < box.size(); ++i) {
                if (g[i] + lg[i] > box[i]) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            w.push_back(ell);
            for (std::size_t i = 0; i < box.size(); ++i) g[i] += lg[i];
            if (is_lyndon(w)) lyndon.push_back(w);
            rec();
            for (std::size_t i = 0; i < box.size(); ++i) g[i] -= lg[i];
            w.pop_back();
        }
    };
    rec();
    std::sort(lyndon.begin(), lyndon.end());

    // Bracketing of a Lyndon word via its standard factorization w = uv with v
    // the longest proper Lyndon suffix (u is then Lyndon as well).
    std::map<Word, SparseVec> expansion;
    auto word_parity = [&](const Word& x) {
        int c = 0;
        for (int ell : x) c += basis.letters[ell].coh;
        return (c % 2 + 2) % 2 == 1;
    };
    std::function<const SparseVec&(const Word&)> expand = [&](const Word& x) -> const SparseVec& {
        auto it = expansion.find(x);
        if (it != expansion.end()) return it->second;
        SparseVec result;
        if (x.size() == 1) {
            result[x] = 1;
        } else {
            std::size_t split = 0;
            for (std::size_t i = 1; i < x.size(); ++i) {
                if (is_lyndon(Word(x.begin() + i, x.end()))) {
                    split = i;
                    break;
                }
            }
            const Word u(x.begin(), x.begin() + split);
            const Word v(x.begin() + split, x.end());
            result = super_bracket(expand(u), word_parity(u), expand(v), word_parity(v));
        }
        return expansion.emplace(x, std::move(result)).first->second;
    };

    for (const auto& lw : lyndon) {
        LieBasisElement e;
        e.word = lw;
        e.grading = DimVector(box.size(), 0);
        for (int ell : lw) {
            e.grading = dv_add(e.grading, basis.letters[ell].grading);
            e.coh += basis.letters[ell].coh;
        }
        e.expansion = expand(lw);
        basis.by_degree[e.grading].push_back(std::move(e));
    }
    // Squares [b(w), b(w)] of odd-parity Lyndon words, when they fit the box.
    for (const auto& lw : lyndon) {
        if (!word_parity(lw)) continue;
        DimVector gr(box.size(), 0);
        int coh = 0;
        for (int ell : lw) {
            gr = dv_add(gr, basis.letters[ell].grading);
            coh += basis.letters[ell].coh;
        }
        const DimVector g2 = dv_add(gr, gr);
        if (!dv_leq(g2, box)) continue;
        LieBasisElement e;
        e.word = lw;
        e.square = true;
        e.grading = g2;
        e.coh = 2 * coh;
        e.expansion = super_bracket(expand(lw), true, expand(lw), true);
        basis.by_degree[e.grading].push_back(std::move(e));
    }
    return basis;
}

// Row space with exact Gaussian elimination; rows are kept reduced with the
// pivot (lexicographically smallest word) normalized to coefficient 1.
struct RowSpace {
    std::map<Word, SparseVec> rows;

    bool add(SparseVec v) {
        while (!v.empty()) {
            const Word pivot = v.begin()->first;
            auto it = rows.find(pivot);
            if (it == rows.end()) {
                const Rat c = v.begin()->second;
                for (auto& [w, x] : v) x /= c;
                rows.emplace(pivot, std::move(v));
                return true;
            }
            const Rat c = v.begin()->second;
            for (const auto& [w, x] : it->second) v[w] -= c * x;
            prune_zeros(v);
        }
        return false;
    }

    std::size_t rank() const { return rows.size(); }
};

HalfLaurent signed_to_dims(const HalfLaurent& h, const char* what) {
    HalfLaurent out;
    for (const auto& [e, c] : h.terms()) {
        const Rat u = (((e % 2) + 2) % 2 == 1) ? -c : c;
        if (!is_integer(u) || u < 0) {
            throw check_error(std::string(what) + " is not a dimension series at q-degree " +
                              std::to_string(e));
        }
        out.set_coeff(e, u);
    }
    return out;
}

}  // namespace

HalfLaurent dims_at(const GradedDims& dims, const DimVector& d) {
    auto it = dims.find(d);
    return it == dims.end() ? HalfLaurent() : it->second;
}

GeneratorForm euler_pairing_form(const Quiver& q, const LieGenerators& gens) {
    GeneratorForm form;
    form.pairing.assign(gens.size(), std::vector<long long>(gens.size(), 0));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = 0; j < gens.size(); ++j) {
            form.pairing[i][j] = symmetrized_form(q, gens[i].grading, gens[j].grading);
        }
    }
    return form;
}

GradedSeries series_from_graded_dims(const GradedDims& dims, const DimVector& box, int win_lo,
                                     int win_hi) {
    GradedSeries s(box, win_lo, win_hi);
    for (const auto& [d, h] : dims) {
        if (d.size() != box.size()) throw usage_error("graded dims and box disagree on vertices");
        if (!dv_leq(d, box)) continue;
        HalfLaurent signed_h;
        for (const auto& [e, c] : h.terms()) {
            signed_h.set_coeff(e, (((e % 2) + 2) % 2 == 1) ? -c : c);
        }
        s.set_term(d, signed_h);
    }
    return s;
}

GradedDims graded_dims_from_series(const GradedSeries& s) {
    GradedDims out;
    for (const auto& [d, h] : s.terms()) {
        const HalfLaurent dims = signed_to_dims(h, "series coefficient");
        if (!dims.is_zero()) out[d] = dims;
    }
    return out;
}

GradedDims free_lie_dims(const LieGenerators& gens, const DimVector& box) {
    const FreeLieBasis basis = build_basis(gens, box);

    GradedDims counted;
    for (const auto& [d, elems] : basis.by_degree) {
        HalfLaurent h;
        for (const auto& e : elems) h.add_coeff(e.coh, 1);
        if (!h.is_zero()) counted[d] = h;
    }

    // Independent route: the tensor algebra on the generators has character
    // 1/(1 - f); its plethystic log is the free Lie character.
    int min_coh = 0;
    int max_coh = 0;
    for (const auto& g : gens) {
        min_coh = std::min(min_coh, g.coh);
        max_coh = std::max(max_coh, g.coh);
    }
    const int len = static_cast<int>(dv_total(box));
    GradedSeries f(box, len * min_coh, len * max_coh);
    for (const auto& g : gens) {
        if (!dv_leq(g.grading, box) || g.multiplicity == 0) continue;
        const Rat c = (((g.coh % 2) + 2) % 2 == 1) ? Rat(-g.multiplicity) : Rat(g.multiplicity);
        f.add_term(g.grading, HalfLaurent::monomial(g.coh, c));
    }
    GradedSeries tensor = GradedSeries::one(f.box(), f.win_lo(), f.win_hi());
    for (int i = 0; i < len; ++i) {  // Horner: 1 + f(1 + f(...)), exact since f_0 = 0
        tensor = series_mul(f, tensor);
        tensor += GradedSeries::one(f.box(), f.win_lo(), f.win_hi());
    }
    const GradedDims witt = graded_dims_from_series(plethystic_log(tensor));

    for (const auto& d : dim_vectors_below(box)) {
        if (dv_is_zero(d)) continue;
        if (dims_at(counted, d) != dims_at(witt, d)) {
            throw check_error("free Lie dimension routes disagree at degree " + dv_to_string(d) +
                              ": basis " + dims_at(counted, d).to_string() + ", series " +
                              dims_at(witt, d).to_string());
        }
    }
    return counted;
}

GradedDims serre_quotient_dims(const LieGenerators& gens, const GeneratorForm& form,
                               const DimVector& box) {
    if (form.pairing.size() != gens.size()) {
        throw usage_error("pairing matrix size does not match the generator list");
    }
    for (const auto& row : form.pairing) {
        if (row.size() != gens.size()) {
            throw usage_error("pairing matrix size does not match the generator list");
        }
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (form.pairing[i][j] != form.pairing[j][i]) {
                throw usage_error("pairing matrix must be symmetric");
            }
        }
    }

    const FreeLieBasis basis = build_basis(gens, box);
    const auto& letters = basis.letters;
    auto letter_vec = [](int ell) {
        SparseVec v;
        v[Word{ell}] = 1;
        return v;
    };
    auto parity = [](int coh) { return ((coh % 2) + 2) % 2 == 1; };

    // Defining relations, grouped by grading.
    std::map<DimVector, std::vector<std::pair<int, SparseVec>>> relations;  // (coh, element)
    for (std::size_t a = 0; a < letters.size(); ++a) {
        const auto& la = letters[a];
        if (!gens[la.gen].real) continue;
        for (std::size_t b = 0; b < letters.size(); ++b) {
            const auto& lb = letters[b];
            if (lb.gen == la.gen) continue;
            const long long m = 1 - form.pairing[la.gen][lb.gen];
            if (m < 1) continue;
            DimVector deg = lb.grading;
            bool fits = true;
            for (long long k = 0; k < m && fits; ++k) {
                deg = dv_add(deg, la.grading);
                fits = dv_leq(deg, box);
            }
            if (!fits) continue;
            SparseVec x = letter_vec(static_cast<int>(b));
            int coh = lb.coh;
            for (long long k = 0; k < m; ++k) {
                x = super_bracket(letter_vec(static_cast<int>(a)), parity(la.coh), x, parity(coh));
                coh += la.coh;
            }
            relations[deg].emplace_back(coh, std::move(x));
        }
    }
    for (std::size_t a = 0; a < letters.size(); ++a) {
        for (std::size_t b = a; b < letters.size(); ++b) {
            if (form.pairing[letters[a].gen][letters[b].gen] != 0) continue;
            if (a == b && !parity(letters[a].coh)) continue;  // [x,x] = 0 for even x
            const DimVector deg = dv_add(letters[a].grading, letters[b].grading);
            if (!dv_leq(deg, box)) continue;
            SparseVec x = super_bracket(letter_vec(static_cast<int>(a)), parity(letters[a].coh),
                                        letter_vec(static_cast<int>(b)), parity(letters[b].coh));
            relations[deg].emplace_back(letters[a].coh + letters[b].coh, std::move(x));
        }
    }

    // Close the ideal degree by degree: I_d = R_d + sum_{0<d'<d} [I_{d'}, L_{d-d'}].
    // Every element is homogeneous in cohomological degree, so the rank splits.
    std::map<DimVector, std::map<int, RowSpace>> ideal;
    GradedDims result;
    for (const auto& d : dim_vectors_below(box)) {
        if (dv_is_zero(d)) continue;
        std::map<int, std::vector<SparseVec>> incoming;
        if (auto it = relations.find(d); it != relations.end()) {
            for (auto& [coh, v] : it->second) incoming[coh].push_back(v);
        }
        for (const auto& [dp, by_coh] : ideal) {
            if (!dv_leq(dp, d) || dp == d) continue;
            const DimVector dq = dv_sub(d, dp);
            auto bit = basis.by_degree.find(dq);
            if (bit == basis.by_degree.end()) continue;
            for (const auto& [coh_r, rs] : by_coh) {
                for (const auto& [pivot, row] : rs.rows) {
                    for (const auto& e : bit->second) {
                        incoming[coh_r + e.coh].push_back(
                            super_bracket(row, parity(coh_r), e.expansion, parity(e.coh)));
                    }
                }
            }
        }

        std::map<int, std::size_t> free_dim;
        if (auto bit = basis.by_degree.find(d); bit != basis.by_degree.end()) {
            for (const auto& e : bit->second) ++free_dim[e.coh];
        }

        HalfLaurent dims;
        std::map<int, RowSpace> reduced;
        for (auto& [coh, rows] : incoming) {
            RowSpace rs;
            for (auto& v : rows) rs.add(std::move(v));
            if (rs.rank() > 0) reduced[coh] = std::move(rs);
        }
        for (const auto& [coh, n] : free_dim) {
            std::size_t r = 0;
            if (auto it = reduced.find(coh); it != reduced.end()) r = it->second.rank();
            if (r > n) {
                throw check_error("ideal rank exceeds the free Lie dimension at degree " +
                                  dv_to_string(d));
            }
            if (n > r) dims.add_coeff(coh, static_cast<long long>(n - r));
        }
        for (const auto& [coh, rs] : reduced) {
            if (free_dim.find(coh) == free_dim.end() && rs.rank() > 0) {
                throw check_error("ideal rank exceeds the free Lie dimension at degree " +
                                  dv_to_string(d));
            }
        }
        if (!dims.is_zero()) result[d] = dims;
        if (!reduced.empty()) ideal[d] = std::move(reduced);
    }
    return result;
}

GradedDims borcherds_bozec_dims(const Quiver& q, const DimVector& box) {
    q.check_dim(box, "borcherds_bozec_dims");
    const auto bozec = bozec_generators(q, box);
    LieGenerators gens;
    GeneratorForm form;
    for (const auto& b : bozec) {
        LieGenerator g;
        g.grading = dv_scale(b.level, dv_unit(q.num_vertices(), b.vertex));
        g.coh = 0;
        g.multiplicity = 1;
        g.real = q.loops_at(b.vertex) == 0;
        gens.push_back(std::move(g));
    }
    form.pairing.assign(gens.size(), std::vector<long long>(gens.size(), 0));
    for (std::size_t i = 0; i < bozec.size(); ++i) {
        for (std::size_t j = 0; j < bozec.size(); ++j) {
            form.pairing[i][j] = bozec_pairing(q, bozec[i], bozec[j]);
        }
    }
    return serre_quotient_dims(gens, form, box);
}

GradedDims km_root_mult_recursion(const Quiver& q, const DimVector& box) {
    if (!q.is_loop_free()) {
        throw usage_error("root multiplicity recursion requires a loop-free quiver");
    }
    q.check_dim(box, "km_root_mult_recursion");

    std::map<DimVector, Rat> c;
    std::map<DimVector, Rat> mult;
    GradedDims result;
    for (const auto& d : dim_vectors_below(box)) {
        if (dv_is_zero(d)) continue;
        if (dv_total(d) == 1) {  // simple root
            c[d] = 1;
            mult[d] = 1;
            result[d] = HalfLaurent::one();
            continue;
        }
        // (d, d - 2 rho) c_d = sum_{d'+d''=d} (d', d'') c_{d'} c_{d''} with
        // (d, 2 rho) = 2 ht(d) in the simply-laced normalization.
        const long long denom = symmetrized_form(q, d, d) - 2 * dv_total(d);
        Rat numer = 0;
        std::vector<DimVector> subs;
        {
            DimVector sub(d.size(), 0);
            while (true) {
                if (!dv_is_zero(sub) && sub != d) subs.push_back(sub);
                std::size_t i = 0;
                while (i < d.size() && sub[i] == d[i]) {
                    sub[i] = 0;
                    ++i;
                }
                if (i == d.size()) break;
                ++sub[i];
            }
        }
        for (const auto& dp : subs) {
            const DimVector dq = dv_sub(d, dp);
            auto ip = c.find(dp);
            auto iq = c.find(dq);
            if (ip == c.end() || iq == c.end()) continue;
            numer += Rat(symmetrized_form(q, dp, dq)) * ip->second * iq->second;
        }
        Rat divisor_tail = 0;
        for (int k = 2; k <= dv_total(d); ++k) {
            if (!dv_divisible(d, k)) continue;
            divisor_tail += mult.at(dv_div(d, k)) / k;
        }
        Rat cd;
        Rat m;
        if (denom == 0) {
            // Not a root (roots of height >= 2 have (d, d - 2 rho) < 0): the
            // multiplicity is 0 and c_d reduces to its divisor tail.
            if (numer != 0) {
                throw check_error("recursion denominator vanished with nonzero numerator at " +
                                  dv_to_string(d));
            }
            m = 0;
            cd = divisor_tail;
        } else {
            cd = numer / denom;
            m = cd - divisor_tail;
        }
        c[d] = cd;
        if (!is_integer(m) || m < 0) {
            throw check_error("recursion produced a non-integral or negative multiplicity at " +
                              dv_to_string(d) + ": " + m.str());
        }
        mult[d] = m;
        if (m != 0) result[d] = HalfLaurent::constant(m);
    }
    return result;
}

GradedDims uea_dims(const GradedDims& dims, const DimVector& box) {
    for (int b : box) {
        if (b < 0) throw usage_error("box entries must be nonnegative");
    }
    int min_coh = 0;
    int max_coh = 0;
    for (const auto& [d, h] : dims) {
        if (d.size() != box.size()) throw usage_error("graded dims and box disagree on vertices");
        if (dv_is_zero(d)) throw usage_error("enveloping algebra input must vanish in degree 0");
        if (h.is_zero()) continue;
        min_coh = std::min(min_coh, h.min_exp());
        max_coh = std::max(max_coh, h.max_exp());
    }
    const int len = static_cast<int>(dv_total(box));
    const GradedSeries f = series_from_graded_dims(dims, box, len * min_coh, len * max_coh);
    return graded_dims_from_series(plethystic_exp(f));
}

}  // namespace qbps
