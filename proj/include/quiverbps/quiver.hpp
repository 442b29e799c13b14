#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quiverbps/rational.hpp"

namespace qbps {

// Dimension vector over the vertex set of a fixed quiver, componentwise >= 0.
using DimVector = std::vector<int>;

long long dv_total(const DimVector& d);
bool dv_is_zero(const DimVector& d);
bool dv_leq(const DimVector& a, const DimVector& b);  // componentwise
DimVector dv_add(const DimVector& a, const DimVector& b);
DimVector dv_sub(const DimVector& a, const DimVector& b);
DimVector dv_scale(int k, const DimVector& d);
bool dv_divisible(const DimVector& d, int k);
DimVector dv_div(const DimVector& d, int k);
DimVector dv_unit(std::size_t n, std::size_t i);
std::string dv_to_string(const DimVector& d);
// All dimension vectors 0 <= d <= box, in (total, lex) order; includes 0.
std::vector<DimVector> dim_vectors_below(const DimVector& box);

struct Arrow {
    int src = 0;
    int tgt = 0;
};

enum class VertexClass { Real, Isotropic, Hyperbolic };

// Finite quiver: vertices are identified by declaration order; arrows are a
// flat list so that doubling can pair each arrow with its reversal by position.
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertex_names, std::vector<Arrow> arrows);

    std::size_t num_vertices() const { return names_.size(); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& vertex_name(std::size_t i) const { return names_.at(i); }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    int loops_at(std::size_t i) const;
    VertexClass vertex_class(std::size_t i) const;
    bool is_loop_free() const;

    void check_dim(const DimVector& d, const char* where) const;

    // Canonical text form (declaration order preserved) and its FNV-1a hash.
    std::string canonical_string() const;
    std::uint64_t canonical_hash() const;

private:
    std::vector<std::string> names_;
    std::vector<Arrow> arrows_;
};

// chi(a, b) = sum_i a_i b_i - sum_{arrows} a_src b_tgt  (non-symmetric Euler form).
long long euler_form(const Quiver& q, const DimVector& a, const DimVector& b);

// (a, b) = chi(a, b) + chi(b, a).
long long symmetrized_form(const Quiver& q, const DimVector& a, const DimVector& b);

// Doubled quiver: original arrows first, then their reversals in the same order.
Quiver doubled(const Quiver& q);

// Tripled quiver: double plus one loop per vertex, loops appended in vertex order.
Quiver tripled(const Quiver& q);

// (zeta . d) / (sum_i d_i); requires d != 0.
Rat slope(const std::vector<Rat>& zeta, const DimVector& d);

// Membership test for {d != 0 : slope(d) = theta} together with 0.
struct SlopeSublattice {
    std::vector<Rat> zeta;
    Rat theta;
    bool contains(const DimVector& d) const;
};
SlopeSublattice slope_sublattice(std::vector<Rat> zeta, Rat theta);

// Dimension 2 f.d - 2 chi(d, d) of the framed moduli space, and its Lagrangian
// half f.d - chi(d, d).
struct NakajimaDims {
    long long full = 0;
    long long lagrangian_half = 0;
};
NakajimaDims nakajima_dim(const Quiver& q, const DimVector& f, const DimVector& d);

// Full subquiver on the loop-free vertices; `vertex_map[k]` is the index in `q`
// of the k-th kept vertex.
struct RealSubquiver {
    Quiver quiver;
    std::vector<int> vertex_map;
};
RealSubquiver real_subquiver(const Quiver& q);

// Borcherds-Bozec generator: level 1 at loop-free vertices, all levels n >= 1
// at vertices with loops; the generator sits in dimension-vector degree n*1_i.
struct BozecGenerator {
    int vertex = 0;
    int level = 1;
};

// All generators whose degree n*1_i fits under `box`, sorted by (vertex, level).
std::vector<BozecGenerator> bozec_generators(const Quiver& q, const DimVector& box);

// Symmetrized pairing ((i,n),(j,m)) = n*m*(1_i, 1_j).
long long bozec_pairing(const Quiver& q, const BozecGenerator& a, const BozecGenerator& b);

// JSON I/O.  Schema: {"vertices": ["i", ...], "arrows": [{"src": "i", "tgt": "j"}, ...]}.
// Parse errors and unknown endpoints raise usage_error with a position.
Quiver quiver_from_json_text(const std::string& text);
Quiver quiver_from_json_file(const std::string& path);
std::string quiver_to_json_text(const Quiver& q);

}  // namespace qbps
