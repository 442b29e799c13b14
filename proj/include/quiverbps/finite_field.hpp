#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qbps {

inline constexpr int kMaxPrime = 61;
inline constexpr int kMaxMatDim = 8;

bool is_prime(int n);
int primitive_root(int p);  // smallest generator of the multiplicative group

// Table-based arithmetic for the prime field F_p, p <= kMaxPrime.
class PrimeField {
public:
    explicit PrimeField(int p);  // usage_error unless p is a small prime

    int p() const { return p_; }
    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[idx(a, b)]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[idx(a, neg_[b])]; }
    std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[idx(a, b)]; }
    std::uint8_t inv(std::uint8_t a) const;  // check_error on 0

private:
    std::size_t idx(std::uint8_t a, std::uint8_t b) const {
        return static_cast<std::size_t>(a) * (kMaxPrime + 1) + b;
    }
    int p_;
    std::array<std::uint8_t, (kMaxPrime + 1) * (kMaxPrime + 1)> add_{};
    std::array<std::uint8_t, (kMaxPrime + 1) * (kMaxPrime + 1)> mul_{};
    std::array<std::uint8_t, kMaxPrime + 1> neg_{};
    std::array<std::uint8_t, kMaxPrime + 1> inv_{};
};

// Dense matrix over F_p with inline storage, dimensions <= kMaxMatDim.
struct SmallMat {
    int rows = 0;
    int cols = 0;
    std::array<std::uint8_t, kMaxMatDim * kMaxMatDim> a{};

    static SmallMat zero(int r, int c);
    static SmallMat identity(int n);

    std::uint8_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    std::uint8_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
    bool operator==(const SmallMat& o) const;
};

SmallMat fmat_mul(const PrimeField& F, const SmallMat& A, const SmallMat& B);
int fmat_rank(const PrimeField& F, SmallMat A);
bool fmat_invertible(const PrimeField& F, const SmallMat& A);
SmallMat fmat_inverse(const PrimeField& F, const SmallMat& A);  // check_error if singular

// Generator of GL_n(F_p) paired with its inverse, for orbit traversal.
struct GLGenerator {
    SmallMat g;
    SmallMat g_inv;
};

// A set generating GL_n(F_p): n-cycle permutation, elementary transvection
// E_12(1), and diag(primitive root, 1, ..., 1); degenerate cases pruned.
std::vector<GLGenerator> gl_generators(const PrimeField& F, int n);

// Row-echelon accumulator for spans of F_p-vectors of length dim.
class EchelonSpan {
public:
    EchelonSpan(const PrimeField* F, int dim);
    // Reduce v against the basis; if nonzero remains, absorb it and return true.
    bool add(std::array<std::uint8_t, kMaxMatDim> v);
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::array<std::uint8_t, kMaxMatDim>>& rows() const { return rows_; }

private:
    const PrimeField* F_;
    int dim_;
    std::vector<std::array<std::uint8_t, kMaxMatDim>> rows_;  // kept reduced, pivots descending
    std::vector<int> pivots_;
};

// Basis of {x : M x = 0} for a dynamically sized system over F_p; each row of
// `rows` has `ncols` entries.
std::vector<std::vector<std::uint8_t>> nullspace_basis(const PrimeField& F,
                                                       std::vector<std::vector<std::uint8_t>> rows,
                                                       int ncols);

}  // namespace qbps
