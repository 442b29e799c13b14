#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quiverbps/rational.hpp"

namespace qbps {

// Laurent polynomial in q^(1/2) with exact rational coefficients.  Exponents
// are stored doubled (key k stands for q^(k/2)) so all keys are integers.
// Zero coefficients are never stored.  Arithmetic is exact; truncation happens
// only where a caller asks for it.
class HalfLaurent {
public:
    HalfLaurent() = default;

    static HalfLaurent constant(const Rat& c);
    static HalfLaurent one() { return constant(1); }
    // q^(doubled/2) with coefficient c.
    static HalfLaurent monomial(int doubled_exp, const Rat& c);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    const std::map<int, Rat>& terms() const { return coeffs_; }
    Rat coeff(int doubled_exp) const;
    void set_coeff(int doubled_exp, const Rat& c);
    void add_coeff(int doubled_exp, const Rat& c);

    int min_exp() const;  // doubled; requires nonzero
    int max_exp() const;  // doubled; requires nonzero

    HalfLaurent operator-() const;
    HalfLaurent& operator+=(const HalfLaurent& o);
    HalfLaurent& operator-=(const HalfLaurent& o);
    friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
    friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
    friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
    HalfLaurent& operator*=(const HalfLaurent& o) { return *this = *this * o; }
    bool operator==(const HalfLaurent& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const HalfLaurent& o) const { return !(*this == o); }

    HalfLaurent scaled(const Rat& c) const;

    // Adams operation on the variable: q^(e/2) -> q^(k e/2).
    HalfLaurent psi(int k) const;

    // Multiply by q^(doubled_delta/2).
    HalfLaurent shifted(int doubled_delta) const;

    // q -> q^(-1): negates every exponent.
    HalfLaurent inverted() const;

    // Drop terms with doubled exponent outside [lo, hi].
    HalfLaurent truncated(int lo, int hi) const;
    // Drop terms with doubled exponent < lo.
    HalfLaurent truncated_below(int lo) const;

    bool all_integer_coeffs() const;
    bool all_integer_exponents() const;  // all doubled exponents even
    bool all_nonnegative_coeffs() const;
    // Graded-dimension check: coefficient at doubled exponent k is an integer
    // with sign (-1)^k (dimensions in odd cohomological degree count negative).
    bool is_signed_dimension_series() const;

    // Evaluation at q = x for integer-exponent Laurent polynomials with
    // nonnegative exponents only (plain polynomials).
    Int eval_at(const Int& x) const;

    // Canonical ascending rendering, e.g. "q^(-1) + 1 + q^(1/2)".
    std::string to_string() const;

    // JSON triples [[doubled_exponent, numerator, denominator], ...], ascending.
    std::vector<std::vector<std::string>> json_triples() const;

private:
    std::map<int, Rat> coeffs_;
};

// Exact multiplication, then drop doubled exponents below `floor`.  Used by
// series engines that track a known-exact window.
HalfLaurent mul_truncated_below(const HalfLaurent& a, const HalfLaurent& b, int floor);

}  // namespace qbps
