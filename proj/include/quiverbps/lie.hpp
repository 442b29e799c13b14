#pragma once

#include <map>
#include <vector>

#include "quiverbps/graded_series.hpp"
#include "quiverbps/half_laurent.hpp"
#include "quiverbps/quiver.hpp"

namespace qbps {

// Generator of a graded (super) Lie algebra.  `coh` is the doubled
// cohomological exponent (the generator contributes q^(coh/2) to characters);
// its parity under the Koszul rule is the parity of `coh`.
struct LieGenerator {
    DimVector grading;     // nonzero dimension-vector degree
    int coh = 0;           // doubled cohomological degree
    int multiplicity = 1;  // >= 0
    bool real = false;     // eligible for ad-power relations in quotients
};
using LieGenerators = std::vector<LieGenerator>;

// Symmetric integer pairing between generator indices; drives which quotient
// relations apply (ad(e_i)^(1-<i,j>) e_j for real i != j, [e_i,e_j] if <i,j>=0).
struct GeneratorForm {
    std::vector<std::vector<long long>> pairing;
};

// Pairing induced by the symmetrized Euler form on the generators' gradings.
GeneratorForm euler_pairing_form(const Quiver& q, const LieGenerators& gens);

// Graded dimensions: per dimension vector, a Laurent polynomial whose
// coefficient at doubled exponent k is the (nonnegative) dimension in
// cohomological degree k.  Missing keys mean zero.
using GradedDims = std::map<DimVector, HalfLaurent>;

HalfLaurent dims_at(const GradedDims& dims, const DimVector& d);

// Signed character of a dimension table: coefficient at doubled exponent k
// gains the Koszul sign (-1)^k; and its inverse, which checks signs and
// nonnegativity.
GradedSeries series_from_graded_dims(const GradedDims& dims, const DimVector& box, int win_lo,
                                     int win_hi);
GradedDims graded_dims_from_series(const GradedSeries& s);

// Graded dimensions of the free Lie superalgebra on `gens`, truncated to the
// box.  Computed two ways that must agree: enumeration of the super-Lyndon
// basis (Lyndon words plus [w,w] for odd-parity Lyndon w) and plethystic-log
// extraction from the tensor-algebra character.
GradedDims free_lie_dims(const LieGenerators& gens, const DimVector& box);

// Free Lie superalgebra modulo the ideal generated by ad(e_i)^(1-<i,j>)(e_j)
// for real i != j and [e_i, e_j] whenever <i,j> = 0.  The ideal is closed
// degree by degree under bracketing with the free basis; quotient dimensions
// by exact rank computation.
GradedDims serre_quotient_dims(const LieGenerators& gens, const GeneratorForm& form,
                               const DimVector& box);

// Positive half of the Borcherds-Bozec algebra of the quiver: one generator
// per loop-free vertex, one per level n >= 1 at each looped vertex, with the
// level-scaled symmetrized Euler pairing, quotiented by the relations above.
GradedDims borcherds_bozec_dims(const Quiver& q, const DimVector& box);

// Root multiplicities of the Kac-Moody algebra attached to a loop-free quiver
// (Cartan matrix = symmetrized Euler form on unit vectors), via the
// Peterson-style recursion on c_d = sum_{k|d} mult(d/k)/k.  Independent of
// the presentation route; a vanishing denominator forces multiplicity 0.
GradedDims km_root_mult_recursion(const Quiver& q, const DimVector& box);

// Graded dimensions of the universal enveloping algebra: plethystic exp of
// the signed character of `dims` (PBW).  Includes the unit at degree 0.
GradedDims uea_dims(const GradedDims& dims, const DimVector& box);

}  // namespace qbps
