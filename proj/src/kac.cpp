#include "quiverbps/kac.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "quiverbps/errors.hpp"
#include "quiverbps/finite_field.hpp"
#include "quiverbps/graded_series.hpp"
#include "quiverbps/util.hpp"

namespace qbps {

namespace {
// Floor value acting as "exactly zero everywhere": deep enough that any max()
// against a working floor leaves the partner's floor unchanged.
constexpr int kZeroFloor = INT_MIN / 4;
}  // namespace

std::string nilpotency_class_name(NilpotencyClass cls) {
    switch (cls) {
        case NilpotencyClass::ALL: return "ALL";
        case NilpotencyClass::N: return "N";
        case NilpotencyClass::SN: return "SN";
        case NilpotencyClass::SSN: return "SSN";
    }
    throw check_error("unreachable nilpotency class");
}

NilpotencyClass nilpotency_class_from_name(const std::string& name) {
    if (name == "ALL") return NilpotencyClass::ALL;
    if (name == "N") return NilpotencyClass::N;
    if (name == "SN") return NilpotencyClass::SN;
    if (name == "SSN") return NilpotencyClass::SSN;
    throw usage_error("unknown nilpotency class '" + name + "' (expected ALL, N, SN, SSN)");
}

// ---------------------------------------------------------------------------
// Partitions.

namespace {

void extend_partitions(std::vector<std::vector<Partition>>& table, int n) {
    // Partitions in lex-descending order, parts weakly decreasing.
    for (int m = static_cast<int>(table.size()); m <= n; ++m) {
        std::vector<Partition> out;
        Partition cur;
        std::function<void(int, int)> rec = [&](int left, int max_part) {
            if (left == 0) {
                out.push_back(cur);
                return;
            }
            for (int part = std::min(left, max_part); part >= 1; --part) {
                cur.push_back(part);
                rec(left - part, part);
                cur.pop_back();
            }
        };
        rec(m, m);
        table.push_back(std::move(out));
    }
}

}  // namespace

const std::vector<Partition>& partitions_of(int n) {
    if (n < 0) throw usage_error("partitions_of needs n >= 0");
    static std::vector<std::vector<Partition>> table;
    if (n >= static_cast<int>(table.size())) extend_partitions(table, n);
    return table[static_cast<std::size_t>(n)];
}

Partition conjugate_partition(const Partition& p) {
    Partition c;
    if (p.empty()) return c;
    c.resize(static_cast<std::size_t>(p[0]), 0);
    for (int part : p)
        for (int k = 0; k < part; ++k) ++c[static_cast<std::size_t>(k)];
    return c;
}

long long partition_pairing(const Partition& a, const Partition& b) {
    Partition ca = conjugate_partition(a);
    Partition cb = conjugate_partition(b);
    std::size_t n = std::min(ca.size(), cb.size());
    long long s = 0;
    for (std::size_t k = 0; k < n; ++k) s += static_cast<long long>(ca[k]) * cb[k];
    return s;
}

// ---------------------------------------------------------------------------
// TailSeries.

TailSeries::TailSeries(HalfLaurent head, int floor)
    : head_(head.truncated_below(floor + 1)), floor_(floor) {}

TailSeries TailSeries::operator-() const {
    TailSeries r;
    r.head_ = -head_;
    r.floor_ = floor_;
    return r;
}

TailSeries& TailSeries::operator+=(const TailSeries& o) {
    floor_ = std::max(floor_, o.floor_);
    head_ += o.head_;
    head_ = head_.truncated_below(floor_ + 1);
    return *this;
}

TailSeries operator*(const TailSeries& a, const TailSeries& b) {
    // Unknown terms at or below floor_a meet partner terms up to top_b, so the
    // product is only trustworthy above max(fa + top_b, fb + top_a).
    int floor = std::max(a.floor_ + b.top_or_floor(), b.floor_ + a.top_or_floor());
    if (a.floor_ == kZeroFloor && b.floor_ == kZeroFloor) floor = kZeroFloor;
    TailSeries r;
    r.floor_ = floor;
    r.head_ = mul_truncated_below(a.head_, b.head_, floor == kZeroFloor ? floor : floor + 1);
    return r;
}

TailSeries TailSeries::scaled(const Rat& c) const {
    TailSeries r;
    r.head_ = head_.scaled(c);
    r.floor_ = floor_;
    return r;
}

TailSeries TailSeries::psi(int k) const {
    TailSeries r;
    r.head_ = head_.psi(k);
    r.floor_ = floor_ == kZeroFloor ? kZeroFloor : floor_ * k;
    return r;
}

// ---------------------------------------------------------------------------
// Hua-style computation.

namespace {

HalfLaurent poly_from_triples(const nlohmann::json& triples) {
    HalfLaurent h;
    for (const auto& t : triples) {
        int e = std::stoi(t.at(0).get<std::string>());
        Int num(t.at(1).get<std::string>());
        Int den(t.at(2).get<std::string>());
        h.add_coeff(e, Rat(num, den));
    }
    return h;
}

nlohmann::json poly_to_json(const HalfLaurent& h) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : h.json_triples()) out.push_back(t);
    return out;
}

// 1/(1 - q^(-j)) = sum_s q^(-js), truncated to doubled exponents > floor.
TailSeries geometric_inv_factor(int j, int floor) {
    HalfLaurent h;
    for (int s = 0; -2 * j * s > floor; ++s) h.add_coeff(-2 * j * s, 1);
    return TailSeries(std::move(h), floor);
}

// 1 / b_lambda(q^(-1)) with b_lambda(v) = prod_k prod_{j=1}^{m_k} (1 - v^j).
TailSeries b_inverse_tail(const Partition& lam, int floor) {
    TailSeries r(HalfLaurent::one(), floor);
    std::size_t i = 0;
    while (i < lam.size()) {
        std::size_t j = i;
        while (j < lam.size() && lam[j] == lam[i]) ++j;
        int mult = static_cast<int>(j - i);
        for (int m = 1; m <= mult; ++m) r = r * geometric_inv_factor(m, floor);
        i = j;
    }
    return r;
}

using TailMap = std::map<DimVector, TailSeries>;

TailSeries tail_zero() { return TailSeries::zero(kZeroFloor); }

void tail_add(TailMap& acc, const DimVector& d, const TailSeries& t) {
    auto it = acc.find(d);
    if (it == acc.end())
        acc.emplace(d, t);
    else
        it->second += t;
}

TailMap tail_mul(const TailMap& a, const TailMap& b, const DimVector& box) {
    TailMap r;
    for (const auto& [da, ta] : a)
        for (const auto& [db, tb] : b) {
            DimVector d = dv_add(da, db);
            if (!dv_leq(d, box)) continue;
            tail_add(r, d, ta * tb);
        }
    return r;
}

long long hua_tuple_estimate(const DimVector& d) {
    long long est = 1;
    for (int di : d) {
        long long s = 0;
        for (int k = 0; k <= di; ++k) {
            s += static_cast<long long>(partitions_of(k).size());
            if (s > (1LL << 40)) return LLONG_MAX;
        }
        if (est > (1LL << 40) / std::max<long long>(s, 1)) return LLONG_MAX;
        est *= s;
    }
    return est;
}

}  // namespace

KacPolynomial hua_kac(const Quiver& q, const DimVector& d, const CountingConfig& cfg) {
    q.check_dim(d, "hua_kac");
    if (dv_is_zero(d)) throw usage_error("hua_kac needs a nonzero dimension vector");

    std::string key = cache_key(q.canonical_hash(), dv_to_string(d), "ALL", "hua");
    if (cfg.cache) {
        if (auto hit = cfg.cache->get(key))
            return {q, d, NilpotencyClass::ALL, poly_from_triples(hit->at("poly"))};
    }

    long long estimate = hua_tuple_estimate(d);
    if (estimate > cfg.hua_tuple_bound)
        throw resource_error("hua_kac partition-tuple estimate " + std::to_string(estimate) +
                                 " exceeds bound " + std::to_string(cfg.hua_tuple_bound),
                             static_cast<double>(estimate));

    std::size_t nv = q.num_vertices();
    long long total = dv_total(d);
    long long cell_bound = 0;
    for (const Arrow& a : q.arrows())
        cell_bound += static_cast<long long>(d[static_cast<std::size_t>(a.src)]) *
                      d[static_cast<std::size_t>(a.tgt)];
    int floor0 = static_cast<int>(-2 * (total + 1) * (cell_bound + 2) - 8);

    long long chi = euler_form(q, d, d);
    for (int attempt = 0; attempt < 6; ++attempt, floor0 *= 2) {
        // Per vertex: partitions of every size up to d_i with conjugates,
        // self pairings and 1/b tails.
        struct PartData {
            const Partition* lam;
            Partition conj;
            long long self;
            TailSeries binv;
        };
        std::vector<std::vector<std::vector<PartData>>> pd(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            int di = d[i];
            pd[i].resize(static_cast<std::size_t>(di) + 1);
            for (int k = 0; k <= di; ++k)
                for (const Partition& lam : partitions_of(k)) {
                    PartData item{&lam, conjugate_partition(lam), partition_pairing(lam, lam),
                                  b_inverse_tail(lam, floor0)};
                    pd[i][static_cast<std::size_t>(k)].push_back(std::move(item));
                }
        }

        // Stack generating series P_e for all e <= d.
        TailMap P;
        for (const DimVector& e : dim_vectors_below(d)) {
            TailSeries sum = tail_zero();
            std::vector<std::size_t> choice(nv, 0);
            for (;;) {
                std::vector<const PartData*> tuple(nv);
                for (std::size_t i = 0; i < nv; ++i)
                    tuple[i] = &pd[i][static_cast<std::size_t>(e[i])][choice[i]];
                long long expo = 0;
                for (const Arrow& a : q.arrows()) {
                    const Partition& cs = tuple[static_cast<std::size_t>(a.src)]->conj;
                    const Partition& ct = tuple[static_cast<std::size_t>(a.tgt)]->conj;
                    std::size_t n = std::min(cs.size(), ct.size());
                    for (std::size_t k = 0; k < n; ++k)
                        expo += static_cast<long long>(cs[k]) * ct[k];
                }
                for (std::size_t i = 0; i < nv; ++i) expo -= tuple[i]->self;
                TailSeries term(HalfLaurent::monomial(static_cast<int>(2 * expo), 1), floor0);
                for (std::size_t i = 0; i < nv; ++i) term = term * tuple[i]->binv;
                sum += term;
                // Odometer over the partition choices.
                std::size_t pos = 0;
                while (pos < nv) {
                    if (++choice[pos] < pd[pos][static_cast<std::size_t>(e[pos])].size()) break;
                    choice[pos] = 0;
                    ++pos;
                }
                if (pos == nv) break;
            }
            P.emplace(e, sum);
        }

        // log P = sum (-1)^(n+1) h^n / n with h = P - 1.
        DimVector zero(nv, 0);
        TailMap h = P;
        h.erase(zero);
        TailMap lg;
        TailMap pw;
        pw.emplace(zero, TailSeries(HalfLaurent::one(), floor0));
        for (int n = 1; n <= total && !pw.empty(); ++n) {
            pw = tail_mul(pw, h, d);
            for (const auto& [e, t] : pw) tail_add(lg, e, t.scaled(Rat(n % 2 ? 1 : -1, n)));
        }

        // Log P = sum_k mu(k)/k psi_k(log P).
        TailMap logP;
        for (int k = 1; k <= total; ++k) {
            int mu = moebius(k);
            if (mu == 0) continue;
            for (const auto& [e, t] : lg) {
                DimVector ke = dv_scale(k, e);
                if (!dv_leq(ke, d)) continue;
                tail_add(logP, ke, t.psi(k).scaled(Rat(mu, k)));
            }
        }

        auto it = logP.find(d);
        TailSeries a_tail = it == logP.end() ? tail_zero() : it->second;
        a_tail = a_tail * TailSeries(HalfLaurent::monomial(2, 1) - HalfLaurent::one(), floor0);

        if (a_tail.floor() != kZeroFloor && a_tail.floor() > -4) continue;  // deepen and retry

        // Exact strictly-negative terms cannot be floor junk: the tail must cancel.
        HalfLaurent below = a_tail.head() - a_tail.head().truncated_below(0);
        if (!below.is_zero())
            throw check_error("hua_kac: Laurent tail failed to cancel at " + dv_to_string(d));

        HalfLaurent poly = a_tail.head().truncated_below(0);
        if (!poly.all_integer_coeffs() || !poly.all_integer_exponents())
            throw check_error("hua_kac: non-integral count polynomial at " + dv_to_string(d));
        if (!poly.is_zero() && poly.max_exp() > 2 * (1 - chi))
            throw check_error("hua_kac: degree bound 1 - chi violated at " + dv_to_string(d));
        if (q.is_loop_free() && !poly.all_nonnegative_coeffs())
            throw check_error("hua_kac: negative coefficient for a loop-free quiver at " +
                              dv_to_string(d));
        if (poly.coeff(0) < 0)
            throw check_error("hua_kac: negative constant term at " + dv_to_string(d));

        if (cfg.cache) {
            cfg.cache->put(key, nlohmann::json{{"poly", poly_to_json(poly)}});
            cfg.cache->save();
        }
        return {q, d, NilpotencyClass::ALL, poly};
    }
    throw check_error("hua_kac: truncation floor did not converge at " + dv_to_string(d));
}

// ---------------------------------------------------------------------------
// Brute-force counting over a prime field.

namespace {

struct Cell {
    int arrow;
    int row;
    int col;
};

struct RepSpace {
    const Quiver* quiver;
    DimVector d;
    PrimeField F;
    std::vector<Cell> cells;
    std::vector<std::uint64_t> stride;  // p^k per cell
    std::uint64_t size;                 // p^(#cells)

    RepSpace(const Quiver& q, const DimVector& dim, int p) : quiver(&q), d(dim), F(p) {
        for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
            const Arrow& a = q.arrows()[ai];
            int rows = d[static_cast<std::size_t>(a.tgt)];
            int cols = d[static_cast<std::size_t>(a.src)];
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) cells.push_back({static_cast<int>(ai), r, c});
        }
        std::uint64_t s = 1;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            stride.push_back(s);
            s *= static_cast<std::uint64_t>(p);
        }
        size = s;
    }

    std::vector<SmallMat> empty_mats() const {
        std::vector<SmallMat> mats;
        for (const Arrow& a : quiver->arrows())
            mats.push_back(SmallMat::zero(d[static_cast<std::size_t>(a.tgt)],
                                          d[static_cast<std::size_t>(a.src)]));
        return mats;
    }

    void decode(std::uint64_t idx, std::vector<SmallMat>& mats) const {
        auto p = static_cast<std::uint64_t>(F.p());
        for (const Cell& cell : cells) {
            mats[static_cast<std::size_t>(cell.arrow)].at(cell.row, cell.col) =
                static_cast<std::uint8_t>(idx % p);
            idx /= p;
        }
    }

    std::uint64_t encode(const std::vector<SmallMat>& mats) const {
        std::uint64_t idx = 0;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const Cell& cell = cells[k];
            idx += stride[k] *
                   mats[static_cast<std::size_t>(cell.arrow)].at(cell.row, cell.col);
        }
        return idx;
    }
};

// Per-vertex subspace chain: nilpotent iff the joint image chain hits zero.
bool jointly_nilpotent(const RepSpace& rs, const std::vector<SmallMat>& mats,
                       const std::vector<int>& arrow_subset) {
    const Quiver& q = *rs.quiver;
    std::size_t nv = q.num_vertices();
    // Current spanning sets per vertex; start with the standard basis.
    std::vector<std::vector<std::array<std::uint8_t, kMaxMatDim>>> span(nv);
    int total = 0;
    for (std::size_t i = 0; i < nv; ++i)
        for (int k = 0; k < rs.d[i]; ++k) {
            std::array<std::uint8_t, kMaxMatDim> v{};
            v[static_cast<std::size_t>(k)] = 1;
            span[i].push_back(v);
            ++total;
        }
    while (total > 0) {
        std::vector<EchelonSpan> next;
        next.reserve(nv);
        for (std::size_t i = 0; i < nv; ++i) next.emplace_back(&rs.F, rs.d[i]);
        for (int ai : arrow_subset) {
            const Arrow& a = q.arrows()[static_cast<std::size_t>(ai)];
            const SmallMat& m = mats[static_cast<std::size_t>(ai)];
            for (const auto& v : span[static_cast<std::size_t>(a.src)]) {
                std::array<std::uint8_t, kMaxMatDim> w{};
                for (int r = 0; r < m.rows; ++r) {
                    std::uint8_t acc = 0;
                    for (int c = 0; c < m.cols; ++c)
                        acc = rs.F.add(acc, rs.F.mul(m.at(r, c), v[static_cast<std::size_t>(c)]));
                    w[static_cast<std::size_t>(r)] = acc;
                }
                next[static_cast<std::size_t>(a.tgt)].add(w);
            }
        }
        int new_total = 0;
        for (std::size_t i = 0; i < nv; ++i) new_total += next[i].rank();
        if (new_total == 0) return true;
        if (new_total >= total) return false;  // chain stalled above zero
        total = new_total;
        for (std::size_t i = 0; i < nv; ++i) span[i].assign(next[i].rows().begin(), next[i].rows().end());
    }
    return true;
}

bool rep_in_class_impl(const RepSpace& rs, const std::vector<SmallMat>& mats,
                       NilpotencyClass cls) {
    const Quiver& q = *rs.quiver;
    switch (cls) {
        case NilpotencyClass::ALL: return true;
        case NilpotencyClass::N:
        case NilpotencyClass::SSN: {
            std::vector<int> all;
            for (std::size_t ai = 0; ai < q.arrows().size(); ++ai)
                all.push_back(static_cast<int>(ai));
            return jointly_nilpotent(rs, mats, all);
        }
        case NilpotencyClass::SN: {
            for (std::size_t i = 0; i < q.num_vertices(); ++i) {
                std::vector<int> loops;
                for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
                    const Arrow& a = q.arrows()[ai];
                    if (a.src == static_cast<int>(i) && a.tgt == static_cast<int>(i))
                        loops.push_back(static_cast<int>(ai));
                }
                if (!loops.empty() && !jointly_nilpotent(rs, mats, loops)) return false;
            }
            return true;
        }
    }
    throw check_error("unreachable nilpotency class");
}

struct OrbitVerdict {
    bool abs_indec = false;
    bool indec = false;
};

// Endomorphism-algebra decision for one isomorphism class: enumerate
// E = End(rho), classify every x by the radical membership test
// "x in J(E) iff 1 - yx is invertible for all y in E", and read off
// absolute indecomposability as dim E - dim J(E) = 1 and plain
// indecomposability as locality (noninvertibles = J(E)).
OrbitVerdict decide_orbit(const RepSpace& rs, const std::vector<SmallMat>& mats) {
    const Quiver& q = *rs.quiver;
    std::size_t nv = q.num_vertices();
    std::vector<int> offset(nv + 1, 0);
    for (std::size_t i = 0; i < nv; ++i)
        offset[i + 1] = offset[i] + rs.d[i] * rs.d[i];
    int unknowns = offset[nv];

    // f_t rho(a) - rho(a) f_s = 0, one row per matrix entry of each arrow.
    std::vector<std::vector<std::uint8_t>> rows;
    for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const Arrow& a = q.arrows()[ai];
        const SmallMat& m = mats[ai];
        int dt = rs.d[static_cast<std::size_t>(a.tgt)];
        int ds = rs.d[static_cast<std::size_t>(a.src)];
        for (int r = 0; r < dt; ++r)
            for (int c = 0; c < ds; ++c) {
                std::vector<std::uint8_t> row(static_cast<std::size_t>(unknowns), 0);
                for (int k = 0; k < dt; ++k) {
                    std::size_t u = static_cast<std::size_t>(offset[static_cast<std::size_t>(a.tgt)] + r * dt + k);
                    row[u] = rs.F.add(row[u], m.at(k, c));
                }
                for (int k = 0; k < ds; ++k) {
                    std::size_t u = static_cast<std::size_t>(offset[static_cast<std::size_t>(a.src)] + k * ds + c);
                    row[u] = rs.F.sub(row[u], m.at(r, k));
                }
                rows.push_back(std::move(row));
            }
    }
    std::vector<std::vector<std::uint8_t>> basis = nullspace_basis(rs.F, std::move(rows), unknowns);
    int dim_e = static_cast<int>(basis.size());

    double log2_size = dim_e * std::log2(static_cast<double>(rs.F.p()));
    if (log2_size > 20.0)
        throw resource_error("endomorphism algebra too large to enumerate: p^" +
                                 std::to_string(dim_e),
                             std::pow(static_cast<double>(rs.F.p()), dim_e));

    // Materialize E as per-vertex matrix tuples.
    struct Elem {
        std::vector<SmallMat> f;
        bool invertible;
    };
    auto unpack = [&](const std::vector<std::uint8_t>& coords) {
        std::vector<SmallMat> f;
        for (std::size_t i = 0; i < nv; ++i) {
            SmallMat m = SmallMat::zero(rs.d[i], rs.d[i]);
            for (int r = 0; r < rs.d[i]; ++r)
                for (int c = 0; c < rs.d[i]; ++c)
                    m.at(r, c) = coords[static_cast<std::size_t>(offset[i] + r * rs.d[i] + c)];
            f.push_back(m);
        }
        return f;
    };

    std::uint64_t count = 1;
    for (int i = 0; i < dim_e; ++i) count *= static_cast<std::uint64_t>(rs.F.p());
    std::vector<Elem> elems;
    elems.reserve(count);
    std::vector<std::uint8_t> digits(static_cast<std::size_t>(std::max(dim_e, 1)), 0);
    std::vector<std::uint8_t> coords(static_cast<std::size_t>(unknowns), 0);
    for (std::uint64_t n = 0; n < count; ++n) {
        std::fill(coords.begin(), coords.end(), 0);
        for (int b = 0; b < dim_e; ++b) {
            std::uint8_t c = digits[static_cast<std::size_t>(b)];
            if (c == 0) continue;
            for (int u = 0; u < unknowns; ++u)
                coords[static_cast<std::size_t>(u)] = rs.F.add(
                    coords[static_cast<std::size_t>(u)],
                    rs.F.mul(c, basis[static_cast<std::size_t>(b)][static_cast<std::size_t>(u)]));
        }
        Elem e{unpack(coords), true};
        for (std::size_t i = 0; i < nv && e.invertible; ++i)
            if (rs.d[i] > 0 && !fmat_invertible(rs.F, e.f[i])) e.invertible = false;
        elems.push_back(std::move(e));
        for (int b = 0; b < dim_e; ++b) {
            if (++digits[static_cast<std::size_t>(b)] < rs.F.p()) break;
            digits[static_cast<std::size_t>(b)] = 0;
        }
    }

    // Radical membership scan.
    std::uint64_t j_count = 0;
    std::uint64_t noninv = 0;
    for (const Elem& x : elems) {
        if (x.invertible) continue;  // units are never in J: y = x^(-1) witnesses
        ++noninv;
        bool in_j = true;
        for (const Elem& y : elems) {
            bool inv = true;
            for (std::size_t i = 0; i < nv && inv; ++i) {
                if (rs.d[i] == 0) continue;
                SmallMat m = fmat_mul(rs.F, y.f[i], x.f[i]);
                for (int r = 0; r < m.rows; ++r)
                    for (int c = 0; c < m.cols; ++c) {
                        std::uint8_t id = r == c ? 1 : 0;
                        m.at(r, c) = rs.F.sub(id, m.at(r, c));
                    }
                if (!fmat_invertible(rs.F, m)) inv = false;
            }
            if (!inv) {
                in_j = false;
                break;
            }
        }
        if (in_j) ++j_count;
    }

    int dim_j = 0;
    {
        std::uint64_t t = j_count;
        while (t > 1) {
            if (t % static_cast<std::uint64_t>(rs.F.p()) != 0)
                throw check_error("radical size is not a power of p: counting bug");
            t /= static_cast<std::uint64_t>(rs.F.p());
            ++dim_j;
        }
        if (j_count == 0) throw check_error("radical lost the zero element: counting bug");
    }

    OrbitVerdict v;
    v.abs_indec = (dim_e - dim_j == 1);
    v.indec = (noninv == j_count);  // E local: every non-unit lies in J(E)
    return v;
}

// Seed enumeration: every class member is conjugate to a seed.
//   ALL: the whole space.
//   SSN/N: for each interleaving of the vertices' basis slots, matrices strictly
//          triangular with respect to it (complete flags suffice: any strict
//          flag refines to a complete one without losing strictness).
//   SN: entries free except loop cells, which are strictly upper triangular.
void for_each_seed(const RepSpace& rs, NilpotencyClass cls,
                   const std::function<void(std::uint64_t)>& visit) {
    const Quiver& q = *rs.quiver;
    if (cls == NilpotencyClass::ALL) {
        for (std::uint64_t s = 0; s < rs.size; ++s) visit(s);
        return;
    }
    auto enumerate_allowed = [&](const std::vector<std::size_t>& allowed) {
        std::uint64_t n = 1;
        for (std::size_t k = 0; k < allowed.size(); ++k) n *= static_cast<std::uint64_t>(rs.F.p());
        std::vector<std::uint8_t> digit(allowed.size(), 0);
        for (std::uint64_t it = 0; it < n; ++it) {
            std::uint64_t idx = 0;
            for (std::size_t k = 0; k < allowed.size(); ++k)
                idx += rs.stride[allowed[k]] * digit[k];
            visit(idx);
            for (std::size_t k = 0; k < allowed.size(); ++k) {
                if (++digit[k] < rs.F.p()) break;
                digit[k] = 0;
            }
        }
    };
    if (cls == NilpotencyClass::SN) {
        std::vector<std::size_t> allowed;
        for (std::size_t k = 0; k < rs.cells.size(); ++k) {
            const Cell& cell = rs.cells[k];
            const Arrow& a = q.arrows()[static_cast<std::size_t>(cell.arrow)];
            bool loop = a.src == a.tgt;
            if (!loop || cell.row < cell.col) allowed.push_back(k);
        }
        enumerate_allowed(allowed);
        return;
    }
    // SSN / N: all interleavings of the slot multiset.
    std::vector<int> word;
    for (std::size_t i = 0; i < q.num_vertices(); ++i)
        for (int k = 0; k < rs.d[i]; ++k) word.push_back(static_cast<int>(i));
    std::sort(word.begin(), word.end());
    do {
        // Position of each (vertex, slot) pair in the interleaving.
        std::vector<std::vector<int>> pos(q.num_vertices());
        for (std::size_t w = 0; w < word.size(); ++w)
            pos[static_cast<std::size_t>(word[w])].push_back(static_cast<int>(w));
        std::vector<std::size_t> allowed;
        for (std::size_t k = 0; k < rs.cells.size(); ++k) {
            const Cell& cell = rs.cells[k];
            const Arrow& a = q.arrows()[static_cast<std::size_t>(cell.arrow)];
            int pt = pos[static_cast<std::size_t>(a.tgt)][static_cast<std::size_t>(cell.row)];
            int ps = pos[static_cast<std::size_t>(a.src)][static_cast<std::size_t>(cell.col)];
            if (pt < ps) allowed.push_back(k);
        }
        enumerate_allowed(allowed);
    } while (std::next_permutation(word.begin(), word.end()));
}

}  // namespace

BruteCounts brute_counts(const Quiver& q, const DimVector& d, int p, NilpotencyClass cls,
                         const CountingConfig& cfg) {
    q.check_dim(d, "brute_counts");
    if (dv_is_zero(d)) throw usage_error("brute_counts needs a nonzero dimension vector");
    if (!is_prime(p)) throw usage_error("brute_counts needs a prime field order, got " +
                                        std::to_string(p));
    for (int di : d)
        if (di > kMaxMatDim)
            throw resource_error("vertex dimension exceeds matrix bound " +
                                     std::to_string(kMaxMatDim),
                                 static_cast<double>(di));

    std::string key = cache_key(q.canonical_hash(), dv_to_string(d), nilpotency_class_name(cls),
                                "brute", "p=" + std::to_string(p));
    if (cfg.cache) {
        if (auto hit = cfg.cache->get(key)) {
            BruteCounts out;
            out.abs_indec = Int(hit->at("abs_indec").get<std::string>());
            out.indec = Int(hit->at("indec").get<std::string>());
            out.orbits = Int(hit->at("orbits").get<std::string>());
            out.locus = Int(hit->at("locus").get<std::string>());
            return out;
        }
    }

    long long ncells = 0;
    for (const Arrow& a : q.arrows())
        ncells += static_cast<long long>(d[static_cast<std::size_t>(a.src)]) *
                  d[static_cast<std::size_t>(a.tgt)];
    Int space = int_pow(Int(p), static_cast<unsigned>(ncells));
    if (space > cfg.cap)
        throw resource_error("representation space p^" + std::to_string(ncells) + " = " +
                                 space.str() + " exceeds cap " + std::to_string(cfg.cap),
                             space.convert_to<double>());

    RepSpace rs(q, d, p);

    // Orbit traversal generators: one block per vertex.
    struct VertexGen {
        std::size_t vertex;
        GLGenerator gen;
    };
    std::vector<VertexGen> gens;
    for (std::size_t i = 0; i < q.num_vertices(); ++i)
        if (d[i] > 0)
            for (const GLGenerator& g : gl_generators(rs.F, d[i])) gens.push_back({i, g});

    std::vector<std::uint64_t> visited((rs.size + 63) / 64, 0);
    auto test_and_set = [&](std::uint64_t idx) {
        std::uint64_t& w = visited[idx >> 6];
        std::uint64_t bit = 1ULL << (idx & 63);
        bool was = w & bit;
        w |= bit;
        return was;
    };

    std::vector<std::uint64_t> orbit_mins;
    std::vector<std::uint64_t> stack;
    std::vector<SmallMat> mats = rs.empty_mats();
    std::vector<SmallMat> moved = rs.empty_mats();

    auto traverse = [&](std::uint64_t start) {
        std::uint64_t min_idx = start;
        stack.clear();
        stack.push_back(start);
        while (!stack.empty()) {
            std::uint64_t cur = stack.back();
            stack.pop_back();
            min_idx = std::min(min_idx, cur);
            rs.decode(cur, mats);
            for (const VertexGen& vg : gens) {
                for (std::size_t ai = 0; ai < mats.size(); ++ai) {
                    const Arrow& a = q.arrows()[ai];
                    moved[ai] = mats[ai];
                    if (static_cast<std::size_t>(a.tgt) == vg.vertex)
                        moved[ai] = fmat_mul(rs.F, vg.gen.g, moved[ai]);
                    if (static_cast<std::size_t>(a.src) == vg.vertex)
                        moved[ai] = fmat_mul(rs.F, moved[ai], vg.gen.g_inv);
                }
                std::uint64_t nxt = rs.encode(moved);
                if (!test_and_set(nxt)) stack.push_back(nxt);
            }
        }
        orbit_mins.push_back(min_idx);
    };

    for_each_seed(rs, cls, [&](std::uint64_t s) {
        if (!test_and_set(s)) traverse(s);
    });

    std::sort(orbit_mins.begin(), orbit_mins.end());

    std::vector<OrbitVerdict> verdicts =
        parallel_map(orbit_mins, cfg.jobs, [&](std::uint64_t idx) {
            std::vector<SmallMat> m = rs.empty_mats();
            rs.decode(idx, m);
            return decide_orbit(rs, m);
        });

    BruteCounts out;
    out.orbits = static_cast<long long>(orbit_mins.size());
    for (const OrbitVerdict& v : verdicts) {
        if (v.abs_indec) out.abs_indec += 1;
        if (v.indec) out.indec += 1;
    }
    std::uint64_t marked = 0;
    for (std::uint64_t w : visited) marked += static_cast<std::uint64_t>(std::popcount(w));
    out.locus = marked;

    if (cfg.cache) {
        cfg.cache->put(key, nlohmann::json{{"abs_indec", out.abs_indec.str()},
                                           {"indec", out.indec.str()},
                                           {"orbits", out.orbits.str()},
                                           {"locus", out.locus.str()}});
        cfg.cache->save();
    }
    return out;
}

Int brute_count_abs_indec(const Quiver& q, const DimVector& d, int p, NilpotencyClass cls,
                          const CountingConfig& cfg) {
    return brute_counts(q, d, p, cls, cfg).abs_indec;
}

Int class_locus_size(const Quiver& q, const DimVector& d, int p, NilpotencyClass cls,
                     const CountingConfig& cfg) {
    q.check_dim(d, "class_locus_size");
    if (!is_prime(p)) throw usage_error("class_locus_size needs a prime field order, got " +
                                        std::to_string(p));
    long long ncells = 0;
    for (const Arrow& a : q.arrows())
        ncells += static_cast<long long>(d[static_cast<std::size_t>(a.src)]) *
                  d[static_cast<std::size_t>(a.tgt)];
    Int space = int_pow(Int(p), static_cast<unsigned>(ncells));
    if (space > cfg.cap)
        throw resource_error("representation space p^" + std::to_string(ncells) + " = " +
                                 space.str() + " exceeds cap " + std::to_string(cfg.cap),
                             space.convert_to<double>());
    RepSpace rs(q, d, p);
    std::vector<SmallMat> mats = rs.empty_mats();
    std::uint64_t n = 0;
    for (std::uint64_t idx = 0; idx < rs.size; ++idx) {
        rs.decode(idx, mats);
        if (rep_in_class_impl(rs, mats, cls)) ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Interpolation.

namespace {

struct Node {
    int p;
    Int value;
};

std::vector<Node> gather_nodes(const Quiver& q, const DimVector& d, NilpotencyClass cls,
                               const CountingConfig& cfg) {
    long long ncells = 0;
    for (const Arrow& a : q.arrows())
        ncells += static_cast<long long>(d[static_cast<std::size_t>(a.src)]) *
                  d[static_cast<std::size_t>(a.tgt)];
    std::vector<Node> nodes;
    std::vector<int> primes = cfg.primes;
    std::sort(primes.begin(), primes.end());
    for (int p : primes) {
        if (!is_prime(p)) throw usage_error("configured prime list contains " + std::to_string(p));
        if (int_pow(Int(p), static_cast<unsigned>(ncells)) > cfg.cap) continue;
        try {
            nodes.push_back({p, brute_count_abs_indec(q, d, p, cls, cfg)});
        } catch (const resource_error&) {
            // Feasible space but some orbit decision blew its budget (e.g. an
            // endomorphism algebra too large to enumerate): skip this prime.
        }
    }
    return nodes;
}

// Largest j with p^j <= v (v >= 1).
int floor_log(int p, const Int& v) {
    int j = 0;
    Int power = p;
    while (power <= v) {
        power *= p;
        ++j;
    }
    return j;
}

HalfLaurent lagrange_polynomial(const std::vector<Node>& nodes) {
    std::size_t n = nodes.size();
    std::vector<Rat> coeff(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        // Basis polynomial prod_{j != i} (x - p_j) / (p_i - p_j), times v_i.
        std::vector<Rat> basis{Rat(1)};
        Rat denom(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * nodes[j].p;
            }
            basis = std::move(next);
            denom *= Rat(nodes[i].p - nodes[j].p);
        }
        Rat scale = Rat(nodes[i].value) / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) coeff[k] += basis[k] * scale;
    }
    HalfLaurent out;
    for (std::size_t k = 0; k < coeff.size(); ++k)
        out.add_coeff(static_cast<int>(2 * k), coeff[k]);
    return out;
}

}  // namespace

KacPolynomial interpolate_kac(const Quiver& q, const DimVector& d, NilpotencyClass cls,
                              const CountingConfig& cfg) {
    q.check_dim(d, "interpolate_kac");
    if (dv_is_zero(d)) throw usage_error("interpolate_kac needs a nonzero dimension vector");

    std::string key =
        cache_key(q.canonical_hash(), dv_to_string(d), nilpotency_class_name(cls), "interp");
    if (cfg.cache) {
        if (auto hit = cfg.cache->get(key))
            return {q, d, cls, poly_from_triples(hit->at("poly"))};
    }

    std::vector<Node> nodes = gather_nodes(q, d, cls, cfg);
    if (nodes.empty())
        throw resource_error("no prime is feasible under the enumeration cap for " +
                                 dv_to_string(d),
                             0.0);

    auto finish = [&](const HalfLaurent& poly) {
        if (cls == NilpotencyClass::ALL) {
            KacPolynomial reference = hua_kac(q, d, cfg);
            if (!(reference.poly == poly))
                throw check_error("interpolated polynomial disagrees with the partition-sum count at " +
                                  dv_to_string(d));
        }
        if (cfg.cache) {
            cfg.cache->put(key, nlohmann::json{{"poly", poly_to_json(poly)}});
            cfg.cache->save();
        }
        return KacPolynomial{q, d, cls, poly};
    };

    // A single zero value kills every coefficient (they are nonnegative).
    for (const Node& n : nodes)
        if (n.value == 0) {
            for (const Node& m : nodes)
                if (m.value != 0)
                    throw check_error("counts are zero at one prime but not another at " +
                                      dv_to_string(d));
            return finish(HalfLaurent());
        }

    long long chi = euler_form(q, d, d);
    int degree_bound = static_cast<int>(std::max<long long>(1 - chi, 0));
    int effective = degree_bound;
    for (const Node& n : nodes) effective = std::min(effective, floor_log(n.p, n.value));

    if (static_cast<int>(nodes.size()) < effective + 1)
        throw resource_error("interpolation needs " + std::to_string(effective + 1) +
                                 " sample primes under the cap, only " +
                                 std::to_string(nodes.size()) + " are feasible for " +
                                 dv_to_string(d),
                             static_cast<double>(effective + 1));

    std::vector<Node> used(nodes.begin(), nodes.begin() + effective + 1);
    HalfLaurent poly = lagrange_polynomial(used);
    if (!poly.all_integer_coeffs())
        throw check_error("interpolant has non-integer coefficients at " + dv_to_string(d) +
                          ": wrong degree bound or a counting bug");
    if (!poly.all_nonnegative_coeffs())
        throw check_error("interpolant has a negative coefficient at " + dv_to_string(d));
    for (std::size_t i = static_cast<std::size_t>(effective) + 1; i < nodes.size(); ++i)
        if (poly.eval_at(nodes[i].p) != nodes[i].value)
            throw check_error("interpolant fails at held-out prime " +
                              std::to_string(nodes[i].p) + " for " + dv_to_string(d));
    return finish(poly);
}

Int kac_constant_term(const Quiver& q, const DimVector& d, NilpotencyClass cls,
                      const CountingConfig& cfg) {
    try {
        return to_integer(interpolate_kac(q, d, cls, cfg).poly.coeff(0));
    } catch (const resource_error&) {
        // Fall through to the consistency sieve on whatever nodes exist.
    }
    std::vector<Node> nodes = gather_nodes(q, d, cls, cfg);
    if (nodes.empty())
        throw resource_error("no prime is feasible under the enumeration cap for " +
                                 dv_to_string(d),
                             0.0);
    for (const Node& n : nodes)
        if (n.value == 0) return 0;

    long long chi = euler_form(q, d, d);
    int degree_bound = static_cast<int>(std::max<long long>(1 - chi, 0));
    int effective = degree_bound;
    for (const Node& n : nodes) effective = std::min(effective, floor_log(n.p, n.value));

    // Candidate constant terms c0 admitting nonnegative integers c_1..c_eff
    // with sum c_j p^j = a(p) - c0 at every sampled prime simultaneously.
    Int vmin = nodes[0].value;
    for (const Node& n : nodes) vmin = std::min(vmin, n.value);

    std::function<bool(int, std::vector<Int>&)> feasible = [&](int j, std::vector<Int>& res) {
        bool all_zero = true;
        for (const Int& r : res)
            if (r != 0) all_zero = false;
        if (all_zero) return true;
        if (j == 0) return false;
        // Residuals must stay divisible by every prime: all remaining terms are.
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (res[i] % nodes[i].p != 0) return false;
        Int cmax = -1;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            Int pj = int_pow(Int(nodes[i].p), static_cast<unsigned>(j));
            Int m = res[i] / pj;
            if (cmax < 0 || m < cmax) cmax = m;
        }
        for (Int c = 0; c <= cmax; ++c) {
            std::vector<Int> next(res);
            for (std::size_t i = 0; i < nodes.size(); ++i)
                next[i] -= c * int_pow(Int(nodes[i].p), static_cast<unsigned>(j));
            if (feasible(j - 1, next)) return true;
        }
        return false;
    };

    std::vector<Int> candidates;
    for (Int c0 = 0; c0 <= vmin; ++c0) {
        bool ok = true;
        for (const Node& n : nodes)
            if ((n.value - c0) % n.p != 0) ok = false;
        if (!ok) continue;
        std::vector<Int> res;
        for (const Node& n : nodes) res.push_back(n.value - c0);
        if (feasible(effective, res)) candidates.push_back(c0);
    }
    if (candidates.size() == 1) return candidates[0];
    if (candidates.empty())
        throw check_error("no constant term is consistent with the sampled counts at " +
                          dv_to_string(d));
    std::string list;
    for (const Int& c : candidates) list += (list.empty() ? "" : ", ") + c.str();
    throw resource_error("constant term undetermined from feasible primes at " +
                             dv_to_string(d) + ": candidates " + list,
                         static_cast<double>(candidates.size()));
}

// ---------------------------------------------------------------------------
// Galois inversion.

bool galois_inversion_check(const Quiver& q, const DimVector& d, int p,
                            const CountingConfig& cfg) {
    q.check_dim(d, "galois_inversion_check");
    if (dv_is_zero(d)) throw usage_error("galois_inversion_check needs a nonzero dimension vector");
    Int lhs = brute_counts(q, d, p, NilpotencyClass::ALL, cfg).indec;

    int g = 0;
    for (int di : d) g = std::gcd(g, di);
    Rat rhs(0);
    for (int r = 1; r <= g; ++r) {
        if (g % r != 0) continue;
        Rat inner(0);
        KacPolynomial a = hua_kac(q, dv_div(d, r), cfg);
        for (int s = 1; s <= r; ++s) {
            if (r % s != 0) continue;
            inner += Rat(moebius(r / s)) * Rat(a.poly.eval_at(int_pow(Int(p), static_cast<unsigned>(s))));
        }
        rhs += inner / r;
    }
    if (!is_integer(rhs))
        throw check_error("Galois inversion sum is not an integer at " + dv_to_string(d));
    return to_integer(rhs) == lhs;
}

}  // namespace qbps
