#include "doctest.h"
#include "quiverbps/errors.hpp"
#include "quiverbps/graded_series.hpp"

using namespace qbps;

namespace {

HalfLaurent q_pow(int doubled) { return HalfLaurent::monomial(doubled, 1); }

GradedSeries linear_term(const DimVector& box, const HalfLaurent& c) {
    GradedSeries s(box, -64, 64);
    DimVector d(box.size(), 0);
    d[0] = 1;
    s.set_term(d, c);
    return s;
}

}  // namespace

TEST_CASE("term storage respects box and window") {
    GradedSeries s(DimVector{2, 2}, -4, 4);
    CHECK_THROWS_AS(s.set_term(DimVector{3, 0}, HalfLaurent::one()), check_error);
    CHECK_THROWS_AS(s.term(DimVector{0}), check_error);
    s.set_term(DimVector{1, 0}, q_pow(6) + q_pow(2));
    CHECK(s.term(DimVector{1, 0}) == q_pow(2));  // q^3 is outside the window
    s.add_term(DimVector{1, 0}, -q_pow(2));
    CHECK(s.terms().empty());
}

TEST_CASE("addition and equality") {
    GradedSeries a = GradedSeries::one(DimVector{1}, -64, 64);
    GradedSeries b = linear_term(DimVector{1}, q_pow(2));
    GradedSeries c = a + b;
    CHECK(c.term(DimVector{0}) == HalfLaurent::one());
    CHECK(c.term(DimVector{1}) == q_pow(2));
    CHECK((c - b) == a);
    GradedSeries other_shape(DimVector{1}, -2, 2);
    CHECK_THROWS_AS(c += other_shape, check_error);
}

TEST_CASE("series_mul convolves within the box") {
    // (1 + qT)^2 = 1 + 2qT + q^2 T^2 in box (2).
    GradedSeries f = GradedSeries::one(DimVector{2}, -64, 64);
    f.set_term(DimVector{1}, q_pow(2));
    GradedSeries p = series_mul(f, f);
    CHECK(p.term(DimVector{0}) == HalfLaurent::one());
    CHECK(p.term(DimVector{1}) == q_pow(2).scaled(2));
    CHECK(p.term(DimVector{2}) == q_pow(4));

    // Box truncation: in box (1) the T^2 term is dropped.
    GradedSeries g = GradedSeries::one(DimVector{1}, -64, 64);
    g.set_term(DimVector{1}, q_pow(2));
    GradedSeries p1 = series_mul(g, g);
    CHECK(p1.term(DimVector{1}) == q_pow(2).scaled(2));
}

TEST_CASE("plethystic_exp of a single even generator is a full symmetric tower") {
    // Exp(T) = 1/(1 - T): every coefficient 1.
    GradedSeries f = linear_term(DimVector{4}, HalfLaurent::one());
    GradedSeries e = plethystic_exp(f);
    for (int n = 0; n <= 4; ++n) CHECK(e.term(DimVector{n}) == HalfLaurent::one());

    // Exp(qT): coefficient q^n at T^n.
    GradedSeries fq = linear_term(DimVector{3}, q_pow(2));
    GradedSeries eq = plethystic_exp(fq);
    for (int n = 0; n <= 3; ++n) CHECK(eq.term(DimVector{n}) == q_pow(2 * n));
}

TEST_CASE("plethystic_exp of an odd generator is an exterior tower") {
    // Exp(-q^(1/2) T) = 1 - q^(1/2) T: squares vanish.
    GradedSeries f = linear_term(DimVector{3}, -q_pow(1));
    GradedSeries e = plethystic_exp(f);
    CHECK(e.term(DimVector{0}) == HalfLaurent::one());
    CHECK(e.term(DimVector{1}) == -q_pow(1));
    CHECK(e.term(DimVector{2}).is_zero());
    CHECK(e.term(DimVector{3}).is_zero());
}

TEST_CASE("plethystic_exp of a mixed odd pair") {
    // Two odd generators of weights q^(1/2), q^(-1/2): Exp gives the exterior algebra
    // 1 - (q^(1/2)+q^(-1/2))T + T^2.
    GradedSeries f = linear_term(DimVector{3}, -(q_pow(1) + q_pow(-1)));
    GradedSeries e = plethystic_exp(f);
    CHECK(e.term(DimVector{1}) == -(q_pow(1) + q_pow(-1)));
    CHECK(e.term(DimVector{2}) == HalfLaurent::one());
    CHECK(e.term(DimVector{3}).is_zero());
}

TEST_CASE("plethystic_exp requires zero constant term") {
    GradedSeries f = GradedSeries::one(DimVector{1}, -4, 4);
    CHECK_THROWS_AS(plethystic_exp(f), check_error);
}

TEST_CASE("plethystic_log inverts plethystic_exp") {
    GradedSeries f(DimVector{2, 2}, -8, 8);
    f.set_term(DimVector{1, 0}, q_pow(2) + HalfLaurent::one());
    f.set_term(DimVector{0, 1}, -q_pow(1));
    f.set_term(DimVector{1, 1}, q_pow(-2).scaled(2));
    CHECK(plethystic_log(plethystic_exp(f)) == f);

    GradedSeries g = GradedSeries::one(DimVector{2}, -8, 8);
    g.set_term(DimVector{1}, q_pow(2).scaled(3));
    g.set_term(DimVector{2}, q_pow(4).scaled(5));
    CHECK(plethystic_exp(plethystic_log(g)) == g);
    CHECK_THROWS_AS(plethystic_log(linear_term(DimVector{1}, q_pow(2))), check_error);
}

TEST_CASE("log of geometric series isolates prime-to-k content") {
    // Exp(T + T^2) in box (4) then Log recovers T + T^2 exactly.
    GradedSeries f(DimVector{4}, -4, 4);
    f.set_term(DimVector{1}, HalfLaurent::one());
    f.set_term(DimVector{2}, HalfLaurent::one());
    CHECK(plethystic_log(plethystic_exp(f)) == f);
}

TEST_CASE("symmetric_power_character on even spaces") {
    // Sym^2(q^(-1) + 1 + q) = q^(-2) + q^(-1) + 2 + q + q^2.
    HalfLaurent f = q_pow(-2) + HalfLaurent::one() + q_pow(2);
    HalfLaurent s2 = symmetric_power_character(f, 2);
    HalfLaurent expect =
        q_pow(-4) + q_pow(-2) + HalfLaurent::constant(2) + q_pow(2) + q_pow(4);
    CHECK(s2 == expect);
    CHECK(symmetric_power_character(f, 0) == HalfLaurent::one());
    CHECK(symmetric_power_character(f, 1) == f);
}

TEST_CASE("symmetric_power_character on odd spaces is exterior") {
    // Two odd lines q^(1/2), q^(3/2): Sym^2 = the single product q^2, Sym^3 = 0.
    HalfLaurent f = -(q_pow(1) + q_pow(3));
    CHECK(symmetric_power_character(f, 2) == q_pow(4));
    CHECK(symmetric_power_character(f, 3).is_zero());
    // One odd line squared vanishes.
    CHECK(symmetric_power_character(-q_pow(1), 2).is_zero());
}

TEST_CASE("symmetric_power_character multiplicity handling") {
    // 2-dim even space of weight q: Sym^2 has dimension 3.
    HalfLaurent f = q_pow(2).scaled(2);
    CHECK(symmetric_power_character(f, 2) == q_pow(4).scaled(3));
    // Mixed: (q - q^(1/2))^Sym2 = q^2 (even pair) - q^(3/2) (cross) + 0 (odd square).
    HalfLaurent m = q_pow(2) - q_pow(1);
    CHECK(symmetric_power_character(m, 2) == q_pow(4) - q_pow(3));
    CHECK_THROWS_AS(symmetric_power_character(q_pow(1), 2), check_error);
}

TEST_CASE("symmetric powers agree with plethystic_exp term by term") {
    // For f = c(q) T, Exp(f) has T^n coefficient Sym^n(c).
    HalfLaurent c = q_pow(2).scaled(2) - q_pow(1) + q_pow(-2);
    GradedSeries f = linear_term(DimVector{4}, c);
    GradedSeries e = plethystic_exp(f);
    for (int n = 0; n <= 4; ++n)
        CHECK(e.term(DimVector{n}) == symmetric_power_character(c, n));
}

TEST_CASE("window truncation happens once per public operation") {
    // With window [0, 2] the product (q + q^(-1))*(q + q^(-1)) keeps the constant 2
    // coming from q * q^(-1) even though q^(-1) itself survives in the inputs.
    GradedSeries a(DimVector{2}, -2, 2);
    a.set_term(DimVector{1}, q_pow(2) + q_pow(-2));
    GradedSeries p = series_mul(a, a);
    CHECK(p.term(DimVector{2}) == HalfLaurent::constant(2));
}

TEST_CASE("inverse_one_minus_q and moebius") {
    CHECK(inverse_one_minus_q(6) ==
          HalfLaurent::one() + q_pow(2) + q_pow(4) + q_pow(6));
    int mu[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
    for (int n = 1; n <= 10; ++n) CHECK(moebius(n) == mu[n - 1]);
    CHECK_THROWS_AS(moebius(0), check_error);
}
