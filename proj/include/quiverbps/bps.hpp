#pragma once

#include <string>
#include <vector>

#include "quiverbps/graded_series.hpp"
#include "quiverbps/kac.hpp"
#include "quiverbps/lie.hpp"
#include "quiverbps/quiver.hpp"

namespace qbps {

// Character of the BPS Lie algebra per dimension vector.  Convention: for the
// full class the value at d is a_d(q^{-1}) (nonpositive exponents, dimensions
// in nonpositive cohomological degrees); for the nilpotent classes it is the
// nilpotent count polynomial in q with no inversion.
struct BPSCharacter {
    Quiver quiver;
    NilpotencyClass cls = NilpotencyClass::ALL;
    GradedDims values;  // missing key = zero character
};

BPSCharacter bps_character(const Quiver& q, NilpotencyClass cls, const DimVector& box,
                           const CountingConfig& cfg = {});

// Exp(sum_{d != 0} a_d(q^{-1}) (1-q)^{-1} T^d), the PBW factorization of the
// full algebra character; the (1-q)^{-1} factor makes every coefficient an
// infinite series, truncated to [win_lo, win_hi] (doubled exponents).  With
// `tate_twisted` each summand also carries q^{-chi(d,d)}.  Interior arithmetic
// runs on an extended window so the returned coefficients are exact.
GradedSeries coha_character(const Quiver& q, const DimVector& box, int win_lo, int win_hi,
                            bool tate_twisted = false, const CountingConfig& cfg = {});

// The same coefficient assembled independently: sum over multiset
// decompositions d = sum m_e * e of products of graded symmetric powers.
HalfLaurent coha_coefficient_by_enumeration(const Quiver& q, const DimVector& d, int win_lo,
                                            int win_hi, bool tate_twisted = false,
                                            const CountingConfig& cfg = {});

// Graded dimensions of the enveloping algebra of the negative half attached to
// the loop-free subquiver, extended by zero on dimension vectors supported at
// loop vertices.
GradedDims zeroth_piece_character(const Quiver& q, const DimVector& box);

// Closed-form character for quivers whose symmetrized form is positive
// semidefinite with one-dimensional kernel spanned by a positive delta:
// 1 at positive real roots, q^{-1} + (|Q_0|-1) at multiples of delta, 0
// elsewhere.  Fails with the name of the violated spectral test otherwise.
struct AffineBPSCharacter {
    BPSCharacter character;
    DimVector delta;
    std::vector<DimVector> real_roots;  // within box, (total, lex) order
};
AffineBPSCharacter affine_bps_character(const Quiver& q, const DimVector& box);

// For every ordered pair of distinct vertices (i, j) with i loop-free, checks
// that the count polynomial vanishes at (e+1) 1_i + 1_j, where e is the number
// of arrows between i and j in the underlying graph.
struct SerreVanishingCheck {
    DimVector d;
    bool pass = false;
};
std::vector<SerreVanishingCheck> serre_vanishing_suite(const Quiver& q,
                                                       const CountingConfig& cfg = {});

// Degree-by-degree generator extraction: peel the full character against the
// quotient algebra on the generators found so far; a nonzero residual at d
// becomes a new generator multiplicity per cohomological degree.  Tags:
// real-simple (d = 1_i, i loop-free), isotropic-line ((d,d) = 0), otherwise
// hyperbolic-residual.  The nonnegativity verdict is a necessary consistency
// condition; negative residual coefficients are reported, never asserted away.
struct ExtractionEntry {
    DimVector d;
    HalfLaurent residual;
    std::string tag;
    bool nonnegative = true;
};
struct ExtractionReport {
    Quiver quiver;
    DimVector box;
    std::vector<ExtractionEntry> entries;  // nonzero residuals, (total, lex) order
    bool all_nonnegative = true;
};
ExtractionReport cuspidal_extract(const Quiver& q, const DimVector& box, int win_lo, int win_hi,
                                  const CountingConfig& cfg = {});

}  // namespace qbps
