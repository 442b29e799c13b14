#pragma once

#include <string>
#include <vector>

#include "quiverbps/cache.hpp"
#include "quiverbps/half_laurent.hpp"
#include "quiverbps/quiver.hpp"

namespace qbps {

// Serre-subcategory selector.  For counting representations of a plain quiver:
// ALL imposes nothing, SN asks each vertex's edge-loop family to act jointly
// nilpotently (1-nilpotent), and SSN (equivalently N: over a plain quiver a
// strict graded flag can always be refined to one with vertex-supported
// subquotients) asks all arrows together to act nilpotently.
enum class NilpotencyClass { ALL, N, SN, SSN };

std::string nilpotency_class_name(NilpotencyClass cls);
NilpotencyClass nilpotency_class_from_name(const std::string& name);  // usage_error

// Partitions as weakly decreasing positive parts; () is the partition of 0.
using Partition = std::vector<int>;
const std::vector<Partition>& partitions_of(int n);  // memoized, lex-descending order
Partition conjugate_partition(const Partition& p);
// <lambda, mu> = sum_k lambda'_k mu'_k over conjugate parts.
long long partition_pairing(const Partition& a, const Partition& b);

// Laurent series in q^(1/2) whose coefficients are exact at doubled exponents
// strictly above `floor`; anything at or below the floor has been discarded.
// Multiplication pushes the floor up by the partner's top exponent, which is
// how truncation error is tracked through Hua-style manipulations.
class TailSeries {
public:
    TailSeries() = default;
    TailSeries(HalfLaurent head, int floor);

    static TailSeries zero(int floor) { return TailSeries(HalfLaurent(), floor); }

    const HalfLaurent& head() const { return head_; }
    int floor() const { return floor_; }

    TailSeries operator-() const;
    TailSeries& operator+=(const TailSeries& o);
    friend TailSeries operator+(TailSeries a, const TailSeries& b) { return a += b; }
    friend TailSeries operator-(TailSeries a, const TailSeries& b) { return a += -b; }
    friend TailSeries operator*(const TailSeries& a, const TailSeries& b);

    TailSeries scaled(const Rat& c) const;
    TailSeries psi(int k) const;  // q -> q^k; floor scales too

private:
    int top_or_floor() const { return head_.is_zero() ? floor_ : head_.max_exp(); }
    HalfLaurent head_;
    int floor_ = 0;
};

struct KacPolynomial {
    Quiver quiver;
    DimVector d;
    NilpotencyClass cls = NilpotencyClass::ALL;
    HalfLaurent poly;  // integer exponents >= 0, integer coefficients
};

struct CountingConfig {
    long long cap = 10'000'000;               // enumeration cap on p^(#matrix cells)
    std::vector<int> primes{2, 3, 5, 7, 11, 13};
    long long hua_tuple_bound = 4'000'000;    // partition-tuple budget for hua_kac
    int jobs = 1;
    ResultCache* cache = nullptr;
};

struct BruteCounts {
    Int abs_indec = 0;  // orbits with dim E - dim J(E) = 1
    Int indec = 0;      // orbits with E local
    Int orbits = 0;     // all isomorphism classes in the chosen class
    Int locus = 0;      // representations in the chosen class (union of the orbits)
};

// Exhaustive orbit count over F_p.  Enumerates the representation space (for
// ALL) or the strict-triangular seed spaces of the chosen nilpotency class,
// deduplicates by orbit traversal under GL generators, and decides each orbit
// by the endomorphism-algebra radical test (full enumeration of E, membership
// x in J(E) iff 1 - yx is invertible for every y).
BruteCounts brute_counts(const Quiver& q, const DimVector& d, int p, NilpotencyClass cls,
                         const CountingConfig& cfg = {});
Int brute_count_abs_indec(const Quiver& q, const DimVector& d, int p, NilpotencyClass cls,
                          const CountingConfig& cfg = {});

// Independent membership scan: walks the whole representation space and counts
// points satisfying the class predicate directly.  Cross-checks the seeded
// orbit traversal (which must mark exactly this locus).
Int class_locus_size(const Quiver& q, const DimVector& d, int p, NilpotencyClass cls,
                     const CountingConfig& cfg = {});

// Count of absolutely indecomposable d-dimensional representations as a
// polynomial in q, via the partition generating function and plethystic log.
KacPolynomial hua_kac(const Quiver& q, const DimVector& d, const CountingConfig& cfg = {});

// Lagrange interpolation through brute counts at the feasible primes.  The
// degree bound 1 - chi(d,d) is tightened using coefficient nonnegativity:
// 0 <= c_j <= a(p)/p^j forces c_j = 0 once p^j exceeds a(p).  The interpolant
// is verified on held-out nodes and, for ALL, against hua_kac.
KacPolynomial interpolate_kac(const Quiver& q, const DimVector& d, NilpotencyClass cls,
                              const CountingConfig& cfg = {});

// Constant term a(0).  Uses interpolate_kac when enough nodes exist; otherwise
// sieves all constant terms consistent with the sampled values under
// nonnegative integer coefficients and the degree bound, succeeding only if
// exactly one candidate survives.
Int kac_constant_term(const Quiver& q, const DimVector& d, NilpotencyClass cls,
                      const CountingConfig& cfg = {});

// Checks I_d(p) = sum_{r | d} (1/r) sum_{s|r} mu(r/s) A_{d/r}(p^s), where the
// left side counts plain indecomposables by enumeration and A comes from
// hua_kac.  Exercises the Galois-descent relation between the two counts.
bool galois_inversion_check(const Quiver& q, const DimVector& d, int p,
                            const CountingConfig& cfg = {});

}  // namespace qbps
