#include "quiverbps/finite_field.hpp"

#include <string>
#include <utility>

#include "quiverbps/errors.hpp"

namespace qbps {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int primitive_root(int p) {
    for (int g = 2; g < p; ++g) {
        int x = 1;
        int order = 0;
        do {
            x = x * g % p;
            ++order;
        } while (x != 1);
        if (order == p - 1) return g;
    }
    return 1;  // p = 2: the group is trivial
}

PrimeField::PrimeField(int p) : p_(p) {
    if (!is_prime(p) || p > kMaxPrime)
        throw usage_error("field order must be a prime <= " + std::to_string(kMaxPrime) +
                          ", got " + std::to_string(p));
    for (int a = 0; a < p; ++a) {
        neg_[a] = static_cast<std::uint8_t>((p - a) % p);
        for (int b = 0; b < p; ++b) {
            add_[idx(a, b)] = static_cast<std::uint8_t>((a + b) % p);
            mul_[idx(a, b)] = static_cast<std::uint8_t>(a * b % p);
        }
    }
    inv_[0] = 0;
    for (int a = 1; a < p; ++a)
        for (int b = 1; b < p; ++b)
            if (a * b % p == 1) inv_[a] = static_cast<std::uint8_t>(b);
}

std::uint8_t PrimeField::inv(std::uint8_t a) const {
    if (a == 0) throw check_error("division by zero in F_" + std::to_string(p_));
    return inv_[a];
}

SmallMat SmallMat::zero(int r, int c) {
    SmallMat m;
    m.rows = r;
    m.cols = c;
    return m;
}

SmallMat SmallMat::identity(int n) {
    SmallMat m = zero(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool SmallMat::operator==(const SmallMat& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (at(r, c) != o.at(r, c)) return false;
    return true;
}

SmallMat fmat_mul(const PrimeField& F, const SmallMat& A, const SmallMat& B) {
    SmallMat C = SmallMat::zero(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            std::uint8_t aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

int fmat_rank(const PrimeField& F, SmallMat A) {
    int rank = 0;
    for (int col = 0; col < A.cols && rank < A.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < A.rows; ++r)
            if (A.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int c = 0; c < A.cols; ++c) std::swap(A.at(pivot, c), A.at(rank, c));
        std::uint8_t s = F.inv(A.at(rank, col));
        for (int c = col; c < A.cols; ++c) A.at(rank, c) = F.mul(A.at(rank, c), s);
        for (int r = 0; r < A.rows; ++r) {
            if (r == rank || A.at(r, col) == 0) continue;
            std::uint8_t f = A.at(r, col);
            for (int c = col; c < A.cols; ++c)
                A.at(r, c) = F.sub(A.at(r, c), F.mul(f, A.at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

bool fmat_invertible(const PrimeField& F, const SmallMat& A) {
    return A.rows == A.cols && fmat_rank(F, A) == A.rows;
}

SmallMat fmat_inverse(const PrimeField& F, const SmallMat& A) {
    if (A.rows != A.cols) throw check_error("inverse of a non-square matrix");
    int n = A.rows;
    // Row-reduce [A | I] in a flat workspace of width 2n.
    std::array<std::uint8_t, kMaxMatDim * 2 * kMaxMatDim> w{};
    int width = 2 * n;
    auto W = [&](int r, int c) -> std::uint8_t& { return w[static_cast<std::size_t>(r) * width + c]; };
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) W(r, c) = A.at(r, c);
        W(r, n + r) = 1;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (W(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw check_error("inverse of a singular matrix");
        for (int c = 0; c < width; ++c) std::swap(W(pivot, c), W(col, c));
        std::uint8_t s = F.inv(W(col, col));
        for (int c = 0; c < width; ++c) W(col, c) = F.mul(W(col, c), s);
        for (int r = 0; r < n; ++r) {
            if (r == col || W(r, col) == 0) continue;
            std::uint8_t f = W(r, col);
            for (int c = 0; c < width; ++c) W(r, c) = F.sub(W(r, c), F.mul(f, W(col, c)));
        }
    }
    SmallMat R = SmallMat::zero(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) R.at(r, c) = W(r, n + c);
    return R;
}

std::vector<GLGenerator> gl_generators(const PrimeField& F, int n) {
    std::vector<GLGenerator> gens;
    if (n <= 0) return gens;
    auto push = [&](const SmallMat& g) { gens.push_back({g, fmat_inverse(F, g)}); };
    if (n >= 2) {
        SmallMat cyc = SmallMat::zero(n, n);
        for (int i = 0; i < n; ++i) cyc.at((i + 1) % n, i) = 1;
        push(cyc);
        SmallMat t = SmallMat::identity(n);
        t.at(0, 1) = 1;
        push(t);
    }
    if (F.p() > 2) {
        SmallMat d = SmallMat::identity(n);
        d.at(0, 0) = static_cast<std::uint8_t>(primitive_root(F.p()));
        push(d);
    }
    return gens;
}

EchelonSpan::EchelonSpan(const PrimeField* F, int dim) : F_(F), dim_(dim) {}

bool EchelonSpan::add(std::array<std::uint8_t, kMaxMatDim> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::uint8_t c = v[pivots_[i]];
        if (c == 0) continue;
        for (int j = 0; j < dim_; ++j) v[j] = F_->sub(v[j], F_->mul(c, rows_[i][j]));
    }
    int pivot = -1;
    for (int j = 0; j < dim_; ++j)
        if (v[j] != 0) {
            pivot = j;
            break;
        }
    if (pivot < 0) return false;
    std::uint8_t s = F_->inv(v[pivot]);
    for (int j = 0; j < dim_; ++j) v[j] = F_->mul(v[j], s);
    rows_.push_back(v);
    pivots_.push_back(pivot);
    return true;
}

std::vector<std::vector<std::uint8_t>> nullspace_basis(const PrimeField& F,
                                                       std::vector<std::vector<std::uint8_t>> rows,
                                                       int ncols) {
    int nrows = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < ncols && rank < nrows; ++col) {
        int pivot = -1;
        for (int r = rank; r < nrows; ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[pivot], rows[rank]);
        std::uint8_t s = F.inv(rows[rank][col]);
        for (int c = col; c < ncols; ++c) rows[rank][c] = F.mul(rows[rank][c], s);
        for (int r = 0; r < nrows; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            std::uint8_t f = rows[r][col];
            for (int c = col; c < ncols; ++c)
                rows[r][c] = F.sub(rows[r][c], F.mul(f, rows[rank][c]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<std::uint8_t> v(ncols, 0);
        v[free] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = F.neg(rows[r][free]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qbps
