#include <string>

#include "doctest.h"
#include "quiverbps/bps.hpp"
#include "quiverbps/errors.hpp"

using namespace qbps;

namespace {

Quiver jordan() { return Quiver({"x"}, {{0, 0}}); }
Quiver two_loop() { return Quiver({"x"}, {{0, 0}, {0, 0}}); }
Quiver a2() { return Quiver({"1", "2"}, {{0, 1}}); }
Quiver kronecker() { return Quiver({"1", "2"}, {{0, 1}, {0, 1}}); }
Quiver cyclic_triangle() { return Quiver({"1", "2", "3"}, {{0, 1}, {1, 2}, {2, 0}}); }
Quiver a2_loop() { return Quiver({"1", "2"}, {{0, 1}, {1, 1}}); }

HalfLaurent hl(std::initializer_list<std::pair<int, long long>> ps) {
    HalfLaurent h;
    for (const auto& [e, c] : ps) h.add_coeff(e, c);
    return h;
}

bool throws_usage_containing(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
    } catch (const usage_error& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("bps character: full class inverts the count polynomial") {
    const auto b = bps_character(kronecker(), NilpotencyClass::ALL, {2, 2});
    CHECK(b.values.size() == 6);
    CHECK(dims_at(b.values, {1, 0}) == HalfLaurent::one());
    CHECK(dims_at(b.values, {0, 1}) == HalfLaurent::one());
    CHECK(dims_at(b.values, {1, 1}) == hl({{-2, 1}, {0, 1}}));
    CHECK(dims_at(b.values, {2, 1}) == HalfLaurent::one());
    CHECK(dims_at(b.values, {2, 2}) == hl({{-2, 1}, {0, 1}}));
    CHECK(dims_at(b.values, {2, 0}).is_zero());

    const auto j = bps_character(jordan(), NilpotencyClass::ALL, {3});
    for (int n = 1; n <= 3; ++n) CHECK(dims_at(j.values, {n}) == hl({{-2, 1}}));

    const auto t = bps_character(two_loop(), NilpotencyClass::ALL, {2});
    CHECK(dims_at(t.values, {1}) == hl({{-4, 1}}));
    CHECK(dims_at(t.values, {2}) == hl({{-10, 1}, {-6, 1}}));

    const auto a = bps_character(a2(), NilpotencyClass::ALL, {2, 2});
    CHECK(a.values.size() == 3);
    CHECK(dims_at(a.values, {1, 1}) == HalfLaurent::one());
    CHECK(dims_at(a.values, {2, 1}).is_zero());
}

TEST_CASE("bps character: nilpotent classes stay in nonnegative exponents") {
    const auto j = bps_character(jordan(), NilpotencyClass::SSN, {3});
    for (int n = 1; n <= 3; ++n) CHECK(dims_at(j.values, {n}) == HalfLaurent::one());

    const auto s = bps_character(two_loop(), NilpotencyClass::SSN, {2});
    CHECK(dims_at(s.values, {1}) == HalfLaurent::one());
    CHECK(dims_at(s.values, {2}) == hl({{0, 1}, {2, 1}}));
    const auto sn = bps_character(two_loop(), NilpotencyClass::SN, {2});
    CHECK(sn.values == s.values);

    CHECK_THROWS_AS(bps_character(a2(), NilpotencyClass::ALL, {1}), usage_error);
}

TEST_CASE("coha character: PBW series over the box") {
    const auto s = coha_character(jordan(), {2}, -4, 4);
    CHECK(s.term({0}) == HalfLaurent::one());
    CHECK(s.term({1}) == hl({{-2, 1}, {0, 1}, {2, 1}, {4, 1}}));
    CHECK(s.term({2}) == hl({{-4, 1}, {-2, 2}, {0, 3}, {2, 3}, {4, 4}}));

    const auto k = coha_character(kronecker(), {1, 1}, -4, 4);
    CHECK(k.term({1, 0}) == hl({{0, 1}, {2, 1}, {4, 1}}));
    CHECK(k.term({1, 1}) == hl({{-2, 1}, {0, 3}, {2, 4}, {4, 5}}));

    const auto empty = coha_character(Quiver({}, {}), {}, -2, 2);
    CHECK(empty.terms().size() == 1);
    CHECK(empty.term({}) == HalfLaurent::one());
}

TEST_CASE("coha character: window validation") {
    CHECK_THROWS_AS(coha_character(jordan(), {1}, 2, 4), usage_error);
    CHECK_THROWS_AS(coha_character(jordan(), {1}, -4, -2), usage_error);
    CHECK_THROWS_AS(coha_character(jordan(), {1}, 4, -4), usage_error);
    // Characters reach q^{-1} but the window starts at 0.
    CHECK(throws_usage_containing([] { coha_character(jordan(), {1}, 0, 4); }, "too narrow"));
    CHECK(throws_usage_containing([] { coha_character(jordan(), {1}, -1, 0); }, "too narrow"));
    CHECK_NOTHROW(coha_character(jordan(), {1}, -2, 0));
}

TEST_CASE("coha character agrees with symmetric-power enumeration") {
    const auto sj = coha_character(jordan(), {3}, -6, 6);
    for (int n = 1; n <= 3; ++n) {
        CHECK(coha_coefficient_by_enumeration(jordan(), {n}, -6, 6) == sj.term({n}));
    }
    CHECK(sj.term({3}) ==
          hl({{-6, 1}, {-4, 2}, {-2, 5}, {0, 7}, {2, 9}, {4, 11}, {6, 14}}));

    const auto sk = coha_character(kronecker(), {2, 2}, -6, 6);
    for (DimVector d : {DimVector{1, 1}, DimVector{2, 1}, DimVector{2, 2}}) {
        CHECK(coha_coefficient_by_enumeration(kronecker(), d, -6, 6) == sk.term(d));
    }

    // Twisted variant: each factor carries q^{-chi(d,d)}.
    const auto st = coha_character(two_loop(), {2}, -8, 8, true);
    for (int n = 1; n <= 2; ++n) {
        CHECK(coha_coefficient_by_enumeration(two_loop(), {n}, -8, 8, true) == st.term({n}));
    }
    CHECK(st.term({1}) == hl({{-2, 1}, {0, 1}, {2, 1}, {4, 1}, {6, 1}, {8, 1}}));
}

TEST_CASE("zeroth piece: enveloping algebra of the loop-free part") {
    const auto z = zeroth_piece_character(a2(), {2, 2});
    CHECK(z.size() == 9);
    CHECK(dims_at(z, {0, 0}) == HalfLaurent::one());
    CHECK(dims_at(z, {1, 1}) == HalfLaurent::constant(2));
    CHECK(dims_at(z, {2, 1}) == HalfLaurent::constant(2));
    CHECK(dims_at(z, {2, 2}) == HalfLaurent::constant(3));

    const auto j = zeroth_piece_character(jordan(), {2});
    CHECK(j.size() == 1);
    CHECK(dims_at(j, {0}) == HalfLaurent::one());
    CHECK(dims_at(j, {1}).is_zero());

    const auto m = zeroth_piece_character(a2_loop(), {2, 2});
    CHECK(m.size() == 3);
    CHECK(dims_at(m, {2, 0}) == HalfLaurent::one());
    CHECK(dims_at(m, {1, 1}).is_zero());
}

TEST_CASE("zeroth piece matches the degree-zero part of the raw series in finite type") {
    const auto z = zeroth_piece_character(a2(), {2, 2});
    const auto s = coha_character(a2(), {2, 2}, -8, 8);
    for (const auto& [d, h] : s.terms()) {
        CAPTURE(dv_to_string(d));
        CHECK(h.coeff(0) == dims_at(z, d).coeff(0));
    }
}

TEST_CASE("affine closed form: Kronecker") {
    const auto a = affine_bps_character(kronecker(), {3, 3});
    CHECK(a.delta == DimVector{1, 1});
    CHECK(a.real_roots == std::vector<DimVector>{{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}});
    for (int n = 1; n <= 3; ++n) {
        CHECK(dims_at(a.character.values, {n, n}) == hl({{-2, 1}, {0, 1}}));
    }
    CHECK(dims_at(a.character.values, {2, 1}) == HalfLaurent::one());
    CHECK(dims_at(a.character.values, {3, 1}).is_zero());
    CHECK(dims_at(a.character.values, {2, 0}).is_zero());
}

TEST_CASE("affine closed form: one loop and the oriented triangle") {
    const auto j = affine_bps_character(jordan(), {3});
    CHECK(j.delta == DimVector{1});
    CHECK(j.real_roots.empty());
    for (int n = 1; n <= 3; ++n) CHECK(dims_at(j.character.values, {n}) == hl({{-2, 1}}));

    const auto t = affine_bps_character(cyclic_triangle(), {2, 2, 2});
    CHECK(t.delta == DimVector{1, 1, 1});
    CHECK(t.real_roots.size() == 12);
    CHECK(dims_at(t.character.values, {1, 1, 1}) == hl({{-2, 1}, {0, 2}}));
    CHECK(dims_at(t.character.values, {2, 2, 2}) == hl({{-2, 1}, {0, 2}}));
    CHECK(dims_at(t.character.values, {1, 1, 0}) == HalfLaurent::one());
    CHECK(dims_at(t.character.values, {2, 1, 0}).is_zero());
}

TEST_CASE("affine closed form: spectral preconditions rejected by name") {
    CHECK(throws_usage_containing([] { affine_bps_character(a2(), {1, 1}); },
                                  "kernel of the symmetrized form has dimension 0"));
    CHECK(throws_usage_containing([] { affine_bps_character(two_loop(), {1}); },
                                  "not positive semidefinite"));
    const Quiver disconnected({"1", "2", "3"}, {{0, 1}, {0, 1}});
    CHECK(throws_usage_containing([&] { affine_bps_character(disconnected, {1, 1, 1}); },
                                  "not positive"));
}

TEST_CASE("vanishing at one step beyond the arrow count") {
    const auto a = serre_vanishing_suite(a2());
    REQUIRE(a.size() == 2);
    CHECK(a[0].d == DimVector{2, 1});
    CHECK(a[1].d == DimVector{1, 2});
    CHECK(a[0].pass);
    CHECK(a[1].pass);

    const auto k = serre_vanishing_suite(kronecker());
    REQUIRE(k.size() == 2);
    CHECK(k[0].d == DimVector{3, 1});
    CHECK(k[1].d == DimVector{1, 3});
    CHECK(k[0].pass);
    CHECK(k[1].pass);

    CHECK(serre_vanishing_suite(jordan()).empty());

    // The loop vertex may appear as target but never as source.
    const auto m = serre_vanishing_suite(a2_loop());
    REQUIRE(m.size() == 1);
    CHECK(m[0].d == DimVector{2, 1});
    CHECK(m[0].pass);
}

TEST_CASE("extraction: Kronecker finds two real simples and one line per imaginary root") {
    const auto r = cuspidal_extract(kronecker(), {4, 4}, -10, 10);
    CHECK(r.all_nonnegative);
    REQUIRE(r.entries.size() == 6);
    CHECK(r.entries[0].d == DimVector{0, 1});
    CHECK(r.entries[0].tag == "real-simple");
    CHECK(r.entries[0].residual == HalfLaurent::one());
    CHECK(r.entries[1].d == DimVector{1, 0});
    CHECK(r.entries[1].tag == "real-simple");
    for (int n = 1; n <= 4; ++n) {
        const auto& e = r.entries[static_cast<std::size_t>(n + 1)];
        CHECK(e.d == dv_scale(n, {1, 1}));
        CHECK(e.tag == "isotropic-line");
        CHECK(e.residual == hl({{-2, 1}}));
        CHECK(e.nonnegative);
    }
}

TEST_CASE("extraction: finite type stops at the simple roots") {
    const auto r = cuspidal_extract(a2(), {2, 2}, -10, 10);
    CHECK(r.all_nonnegative);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].tag == "real-simple");
    CHECK(r.entries[1].tag == "real-simple");
}

TEST_CASE("extraction: one loop yields a line at every level") {
    const auto r = cuspidal_extract(jordan(), {3}, -10, 10);
    REQUIRE(r.entries.size() == 3);
    for (const auto& e : r.entries) {
        CHECK(e.tag == "isotropic-line");
        CHECK(e.residual == hl({{-2, 1}}));
    }
}

TEST_CASE("extraction: hyperbolic residuals are tagged and kept") {
    const auto r = cuspidal_extract(two_loop(), {2}, -10, 10);
    CHECK(r.all_nonnegative);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].d == DimVector{1});
    CHECK(r.entries[0].tag == "hyperbolic-residual");
    CHECK(r.entries[0].residual == hl({{-4, 1}}));
    CHECK(r.entries[1].residual == hl({{-10, 1}, {-6, 1}}));

    CHECK(throws_usage_containing([] { cuspidal_extract(two_loop(), {2}, -4, 0); },
                                  "too narrow"));
}

TEST_CASE("extraction: affine triangle peels the two-dimensional imaginary root") {
    const auto r = cuspidal_extract(cyclic_triangle(), {2, 2, 2}, -10, 10);
    CHECK(r.all_nonnegative);
    REQUIRE(r.entries.size() == 5);
    CHECK(r.entries[3].d == DimVector{1, 1, 1});
    CHECK(r.entries[3].tag == "isotropic-line");
    CHECK(r.entries[3].residual == hl({{-2, 1}}));
    CHECK(r.entries[4].d == DimVector{2, 2, 2});
    CHECK(r.entries[4].residual == hl({{-2, 1}}));
}
