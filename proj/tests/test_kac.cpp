#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "quiverbps/errors.hpp"
#include "quiverbps/kac.hpp"

using namespace qbps;

namespace {

Quiver jordan() { return Quiver({"0"}, {{0, 0}}); }
Quiver two_loop() { return Quiver({"0"}, {{0, 0}, {0, 0}}); }
Quiver a2() { return Quiver({"1", "2"}, {{0, 1}}); }
Quiver kronecker() { return Quiver({"1", "2"}, {{0, 1}, {0, 1}}); }
// Loop plus a 2-cycle through another vertex: the one-vertex-nilpotent and
// all-arrows-nilpotent classes differ here.
Quiver cyclic_loop() { return Quiver({"a", "b"}, {{0, 1}, {1, 0}, {0, 0}}); }
// Arrow into a looped vertex.
Quiver a2_loop() { return Quiver({"r", "l"}, {{0, 1}, {1, 1}}); }

HalfLaurent q_poly(std::vector<std::pair<int, int>> coeffs) {
    HalfLaurent h;
    for (auto [e, c] : coeffs) h.add_coeff(2 * e, c);
    return h;
}

}  // namespace

TEST_CASE("nilpotency class names round-trip") {
    for (NilpotencyClass cls : {NilpotencyClass::ALL, NilpotencyClass::N, NilpotencyClass::SN,
                                NilpotencyClass::SSN})
        CHECK(nilpotency_class_from_name(nilpotency_class_name(cls)) == cls);
    CHECK_THROWS_AS(nilpotency_class_from_name("nil"), usage_error);
}

TEST_CASE("partitions") {
    CHECK(partitions_of(0) == std::vector<Partition>{{}});
    CHECK(partitions_of(4) == std::vector<Partition>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
    CHECK(partitions_of(7).size() == 15);
    CHECK(conjugate_partition({4}) == Partition{1, 1, 1, 1});
    CHECK(conjugate_partition({2, 2}) == Partition{2, 2});
    CHECK(conjugate_partition({3, 1}) == Partition{2, 1, 1});
    CHECK(conjugate_partition({}) == Partition{});
    CHECK(partition_pairing({1, 1}, {1, 1}) == 4);
    CHECK(partition_pairing({2}, {2}) == 2);
    CHECK(partition_pairing({2}, {1, 1}) == 2);
    CHECK(partition_pairing({}, {3}) == 0);
}

TEST_CASE("tail series tracks exactness floors") {
    HalfLaurent raw;
    raw.add_coeff(-8, 1);
    raw.add_coeff(-2, 2);
    raw.add_coeff(0, 3);
    TailSeries t(raw, -4);
    CHECK(t.floor() == -4);
    CHECK(t.head().coeff(-8) == 0);  // below the floor: discarded
    CHECK(t.head().coeff(-2) == 2);

    TailSeries a(HalfLaurent::one() + HalfLaurent::monomial(-2, 1), -10);
    TailSeries b(HalfLaurent::monomial(2, 1), -6);
    TailSeries prod = a * b;
    // Junk below -10 in `a` meets the top exponent 2 of `b`: floor -6 wins.
    CHECK(prod.floor() == -6);
    CHECK(prod.head() == HalfLaurent::one() + HalfLaurent::monomial(2, 1));

    TailSeries sum = a + b;
    CHECK(sum.floor() == -6);

    TailSeries tw = a.psi(2);
    CHECK(tw.floor() == -20);
    CHECK(tw.head() == HalfLaurent::one() + HalfLaurent::monomial(-4, 1));

    CHECK(a.scaled(Rat(3)).head().coeff(0) == 3);
    CHECK((-a).head().coeff(0) == -1);
}

TEST_CASE("count polynomials for one-loop and loop-free quivers") {
    // Jordan quiver: one absolutely indecomposable per eigenvalue, any size.
    for (int n = 1; n <= 4; ++n)
        CHECK(hua_kac(jordan(), {n}).poly == q_poly({{1, 1}}));
    // Two loops, dimension 1: all of the q^2 matrix pairs, each a distinct class.
    CHECK(hua_kac(two_loop(), {1}).poly == q_poly({{2, 1}}));
    // A2: indecomposables exist only at the three positive roots.
    CHECK(hua_kac(a2(), {1, 1}).poly == q_poly({{0, 1}}));
    CHECK(hua_kac(a2(), {1, 0}).poly == q_poly({{0, 1}}));
    CHECK(hua_kac(a2(), {2, 1}).poly.is_zero());
    CHECK(hua_kac(a2(), {2, 2}).poly.is_zero());
    // Kronecker: the projective line at the imaginary root, 1 at real roots.
    CHECK(hua_kac(kronecker(), {1, 1}).poly == q_poly({{0, 1}, {1, 1}}));
    CHECK(hua_kac(kronecker(), {2, 1}).poly == q_poly({{0, 1}}));
    CHECK(hua_kac(kronecker(), {3, 2}).poly == q_poly({{0, 1}}));
    CHECK(hua_kac(kronecker(), {2, 2}).poly == q_poly({{0, 1}, {1, 1}}));
    CHECK(hua_kac(kronecker(), {3, 3}).poly == q_poly({{0, 1}, {1, 1}}));
}

TEST_CASE("count polynomial structure for a wild quiver") {
    KacPolynomial a = hua_kac(two_loop(), {2});
    long long chi = euler_form(two_loop(), {2}, {2});
    CHECK(a.poly.all_integer_coeffs());
    CHECK(a.poly.all_integer_exponents());
    CHECK(a.poly.max_exp() == 2 * (1 - chi));  // degree exactly 1 - chi
    CHECK(a.poly.coeff(a.poly.max_exp()) == 1);  // monic
}

TEST_CASE("hua_kac validates input and budget") {
    CHECK_THROWS_AS(hua_kac(jordan(), {0}), usage_error);
    CHECK_THROWS_AS(hua_kac(jordan(), {1, 1}), usage_error);
    CountingConfig tight;
    tight.hua_tuple_bound = 1;
    try {
        hua_kac(jordan(), {4}, tight);
        CHECK(false);
    } catch (const resource_error& e) {
        CHECK(e.estimate() > 1.0);
    }
}

TEST_CASE("exhaustive counts over small prime fields") {
    // Jordan, dimension 1: scalars, each its own class.
    BruteCounts c = brute_counts(jordan(), {1}, 2, NilpotencyClass::ALL);
    CHECK(c.abs_indec == 2);
    CHECK(c.indec == 2);
    CHECK(c.orbits == 2);
    CHECK(c.locus == 2);

    // Jordan, dimension 2, p = 2: 6 similarity classes of 2x2 matrices:
    // 2 scalar, 2 with one repeated eigenvalue (indecomposable, absolutely so),
    // 1 split semisimple, 1 with irreducible characteristic polynomial
    // (indecomposable over F_2 but splitting over F_4).
    c = brute_counts(jordan(), {2}, 2, NilpotencyClass::ALL);
    CHECK(c.abs_indec == 2);
    CHECK(c.indec == 3);
    CHECK(c.orbits == 6);
    CHECK(c.locus == 16);

    // Same, p = 3: 3 scalar, 3 Jordan, 3 split pairs, 3 irreducible quadratics.
    c = brute_counts(jordan(), {2}, 3, NilpotencyClass::ALL);
    CHECK(c.abs_indec == 3);
    CHECK(c.indec == 6);
    CHECK(c.orbits == 12);
    CHECK(c.locus == 81);

    // Jordan, dimension 3, p = 2: indecomposables are the two full Jordan
    // blocks and the two companions of irreducible cubics.
    c = brute_counts(jordan(), {3}, 2, NilpotencyClass::ALL);
    CHECK(c.abs_indec == 2);
    CHECK(c.indec == 4);
    CHECK(c.locus == 512);

    // A2, dimension (1,1): zero map and the isomorphism.
    c = brute_counts(a2(), {1, 1}, 2, NilpotencyClass::ALL);
    CHECK(c.abs_indec == 1);
    CHECK(c.indec == 1);
    CHECK(c.orbits == 2);
    CHECK(c.locus == 2);

    // A2, dimension (2,2): ranks 0, 1, 2; every class decomposes.
    c = brute_counts(a2(), {2, 2}, 2, NilpotencyClass::ALL);
    CHECK(c.abs_indec == 0);
    CHECK(c.indec == 0);
    CHECK(c.orbits == 3);
    CHECK(c.locus == 16);

    // Kronecker, dimension (1,1): zero and the projective line over F_2.
    c = brute_counts(kronecker(), {1, 1}, 2, NilpotencyClass::ALL);
    CHECK(c.abs_indec == 3);
    CHECK(c.indec == 3);
    CHECK(c.orbits == 4);
    CHECK(c.locus == 4);

    // Kronecker, dimension (2,2): three regular classes over F_2 plus one
    // that only splits over F_4.
    c = brute_counts(kronecker(), {2, 2}, 2, NilpotencyClass::ALL);
    CHECK(c.abs_indec == 3);
    CHECK(c.indec == 4);
    CHECK(c.locus == 256);

    // Two loops, dimension 1: every point is a distinct indecomposable class.
    for (int p : {2, 3}) {
        c = brute_counts(two_loop(), {1}, p, NilpotencyClass::ALL);
        CHECK(c.abs_indec == p * p);
        CHECK(c.orbits == p * p);
    }
}

TEST_CASE("exhaustive counts agree with the count polynomial") {
    struct Case {
        Quiver q;
        DimVector d;
    };
    std::vector<Case> cases{{jordan(), {2}},        {jordan(), {3}},   {a2(), {1, 1}},
                            {a2(), {2, 2}},         {kronecker(), {1, 1}},
                            {kronecker(), {2, 1}},  {kronecker(), {2, 2}},
                            {two_loop(), {1}},      {two_loop(), {2}},
                            {cyclic_loop(), {1, 1}}};
    for (const Case& t : cases) {
        KacPolynomial a = hua_kac(t.q, t.d);
        for (int p : {2, 3})
            CHECK(a.poly.eval_at(p) ==
                  brute_count_abs_indec(t.q, t.d, p, NilpotencyClass::ALL));
    }
}

TEST_CASE("nilpotent counting classes") {
    // Jordan: nilpotent matrices.  One indecomposable (the full block) at any size.
    for (int p : {2, 3, 5}) {
        BruteCounts c = brute_counts(jordan(), {2}, p, NilpotencyClass::SSN);
        CHECK(c.abs_indec == 1);
        CHECK(c.indec == 1);
        CHECK(c.orbits == 2);  // zero and the regular block
        CHECK(c.locus == p * p);
    }
    // p = 5 is out: the zero orbit's endomorphism algebra 5^9 would exceed the
    // enumeration guard, and gather-by-interpolation skips it for the same reason.
    for (int p : {2, 3}) {
        BruteCounts c = brute_counts(jordan(), {3}, p, NilpotencyClass::SSN);
        CHECK(c.abs_indec == 1);
        CHECK(c.indec == 1);
        CHECK(c.orbits == 3);  // one per partition of 3
        CHECK(c.locus == Int(p) * p * p * p * p * p);
    }
    CHECK_THROWS_AS(brute_counts(jordan(), {3}, 5, NilpotencyClass::SSN), resource_error);

    // For a quiver whose only cycles are loops, the one-vertex and all-arrows
    // classes agree; on the acyclic A2 both agree with no condition at all.
    for (NilpotencyClass cls : {NilpotencyClass::SN, NilpotencyClass::SSN, NilpotencyClass::N}) {
        BruteCounts c = brute_counts(a2(), {1, 1}, 3, cls);
        CHECK(c.abs_indec == 1);
        CHECK(c.locus == 3);
        c = brute_counts(a2_loop(), {1, 1}, 3, cls);
        CHECK(c.abs_indec == 1);
        CHECK(c.orbits == 2);
        CHECK(c.locus == 3);  // loop pinned to zero, arrow free
    }

    // Loop plus 2-cycle: the classes genuinely differ.  Killing the loop
    // leaves the cycle product xy as a free invariant for SN, while SSN also
    // forces xy = 0.
    for (int p : {2, 3}) {
        BruteCounts sn = brute_counts(cyclic_loop(), {1, 1}, p, NilpotencyClass::SN);
        CHECK(sn.locus == p * p);
        CHECK(sn.orbits == p + 2);       // x=y=0, x!=0=y, y!=0=x, xy = c != 0
        CHECK(sn.abs_indec == p + 1);
        BruteCounts ssn = brute_counts(cyclic_loop(), {1, 1}, p, NilpotencyClass::SSN);
        CHECK(ssn.locus == 2 * p - 1);
        CHECK(ssn.orbits == 3);
        CHECK(ssn.abs_indec == 2);
        BruteCounts n = brute_counts(cyclic_loop(), {1, 1}, p, NilpotencyClass::N);
        CHECK(n.abs_indec == ssn.abs_indec);
        CHECK(n.locus == ssn.locus);
        CHECK(n.orbits == ssn.orbits);
    }
}

TEST_CASE("orbit scan covers exactly the class locus") {
    struct Case {
        Quiver q;
        DimVector d;
        int p;
        NilpotencyClass cls;
    };
    std::vector<Case> cases{{jordan(), {2}, 3, NilpotencyClass::SSN},
                            {jordan(), {3}, 2, NilpotencyClass::SSN},
                            {two_loop(), {2}, 2, NilpotencyClass::SSN},
                            {cyclic_loop(), {1, 1}, 3, NilpotencyClass::SN},
                            {cyclic_loop(), {1, 1}, 3, NilpotencyClass::SSN},
                            {cyclic_loop(), {2, 1}, 2, NilpotencyClass::SSN},
                            {a2_loop(), {2, 1}, 2, NilpotencyClass::SN},
                            {a2_loop(), {1, 2}, 2, NilpotencyClass::SN},
                            {kronecker(), {2, 2}, 2, NilpotencyClass::SSN}};
    for (const Case& t : cases)
        CHECK(brute_counts(t.q, t.d, t.p, t.cls).locus == class_locus_size(t.q, t.d, t.p, t.cls));
}

TEST_CASE("brute counting validates input") {
    CHECK_THROWS_AS(brute_counts(jordan(), {1}, 4, NilpotencyClass::ALL), usage_error);
    CHECK_THROWS_AS(brute_counts(jordan(), {0}, 2, NilpotencyClass::ALL), usage_error);
    CountingConfig tiny;
    tiny.cap = 10;
    CHECK_THROWS_AS(brute_counts(jordan(), {2}, 2, NilpotencyClass::ALL, tiny), resource_error);
    CHECK_THROWS_AS(brute_counts(jordan(), {9}, 2, NilpotencyClass::SSN), resource_error);
}

TEST_CASE("deterministic under parallel orbit decisions") {
    BruteCounts serial = brute_counts(kronecker(), {2, 2}, 3, NilpotencyClass::ALL);
    CountingConfig par;
    par.jobs = 4;
    BruteCounts parallel = brute_counts(kronecker(), {2, 2}, 3, NilpotencyClass::ALL, par);
    CHECK(serial.abs_indec == parallel.abs_indec);
    CHECK(serial.indec == parallel.indec);
    CHECK(serial.orbits == parallel.orbits);
    CHECK(serial.locus == parallel.locus);
}

TEST_CASE("interpolation recovers count polynomials") {
    // Full class: checked internally against the partition-sum computation.
    CHECK(interpolate_kac(jordan(), {2}, NilpotencyClass::ALL).poly == q_poly({{1, 1}}));
    CHECK(interpolate_kac(kronecker(), {1, 1}, NilpotencyClass::ALL).poly ==
          q_poly({{0, 1}, {1, 1}}));
    CHECK(interpolate_kac(a2(), {2, 2}, NilpotencyClass::ALL).poly.is_zero());

    // Nilpotent classes: the unique nilpotent indecomposable of the Jordan
    // quiver gives the constant 1 at every size that fits under the cap.
    for (int n : {1, 2, 3})
        CHECK(interpolate_kac(jordan(), {n}, NilpotencyClass::SSN).poly == q_poly({{0, 1}}));

    // Two loops, dimension 2, nilpotent pairs: classes are pairs (aN, bN) with
    // N the regular block, up to scaling the common flag: 1 + q of them.
    CHECK(interpolate_kac(two_loop(), {2}, NilpotencyClass::SSN).poly == q_poly({{0, 1}, {1, 1}}));

    // Loop plus 2-cycle, one-vertex nilpotency: q + 1 classes.
    CHECK(interpolate_kac(cyclic_loop(), {1, 1}, NilpotencyClass::SN).poly ==
          q_poly({{0, 1}, {1, 1}}));
    // All-arrows nilpotency: the two one-sided classes, constant 2.
    CHECK(interpolate_kac(cyclic_loop(), {1, 1}, NilpotencyClass::SSN).poly == q_poly({{0, 2}}));
}

TEST_CASE("interpolation refuses when nodes cannot pin the polynomial") {
    // Two loops, dimension 3, nilpotent: only p = 2 fits under the default
    // cap and one value cannot determine a positive-degree polynomial.
    CHECK_THROWS_AS(interpolate_kac(two_loop(), {3}, NilpotencyClass::SSN), resource_error);
    // No feasible prime at all.
    CountingConfig tiny;
    tiny.cap = 1;
    CHECK_THROWS_AS(interpolate_kac(jordan(), {1}, NilpotencyClass::ALL, tiny), resource_error);
}

TEST_CASE("constant term extraction") {
    // Via interpolation.
    CHECK(kac_constant_term(jordan(), {2}, NilpotencyClass::SSN) == 1);
    CHECK(kac_constant_term(kronecker(), {1, 1}, NilpotencyClass::ALL) == 1);
    CHECK(kac_constant_term(two_loop(), {2}, NilpotencyClass::SSN) == 1);
    CHECK(kac_constant_term(a2(), {2, 1}, NilpotencyClass::ALL) == 0);

    // Via the consistency sieve: with only p = 2 and p = 3 available the
    // interpolation of q^2 (degree bound 2, three nodes needed) is impossible,
    // but a(2) = 4 and a(3) = 9 leave 0 as the only viable constant term.
    CountingConfig two_primes;
    two_primes.primes = {2, 3};
    CHECK(kac_constant_term(two_loop(), {1}, NilpotencyClass::ALL, two_primes) == 0);

    // A single prime cannot separate the candidates 1 and 3 for the nilpotent
    // two-loop count 1 + q at p = 2: refuse rather than guess.
    CountingConfig one_prime;
    one_prime.primes = {2};
    CHECK_THROWS_AS(kac_constant_term(two_loop(), {2}, NilpotencyClass::SSN, one_prime),
                    resource_error);
}

TEST_CASE("plain indecomposables satisfy Galois descent from the count polynomial") {
    CHECK(galois_inversion_check(jordan(), {2}, 2));
    CHECK(galois_inversion_check(jordan(), {2}, 3));
    CHECK(galois_inversion_check(jordan(), {3}, 2));
    CHECK(galois_inversion_check(kronecker(), {2, 2}, 2));
    CHECK(galois_inversion_check(a2(), {2, 2}, 2));
    CHECK(galois_inversion_check(two_loop(), {2}, 2));
}

TEST_CASE("result cache round-trips and survives corruption") {
    std::string path = "/tmp/qbps_test_cache.json";
    std::remove(path.c_str());
    {
        ResultCache cache(path);
        CountingConfig cfg;
        cfg.cache = &cache;
        BruteCounts first = brute_counts(jordan(), {2}, 3, NilpotencyClass::ALL, cfg);
        BruteCounts again = brute_counts(jordan(), {2}, 3, NilpotencyClass::ALL, cfg);
        CHECK(first.abs_indec == again.abs_indec);
        CHECK(first.orbits == again.orbits);
        KacPolynomial a = hua_kac(kronecker(), {2, 2}, cfg);
        CHECK(hua_kac(kronecker(), {2, 2}, cfg).poly == a.poly);
    }
    {
        // A fresh instance reads the same values back from disk.
        ResultCache cache(path);
        CountingConfig cfg;
        cfg.cache = &cache;
        CHECK(brute_counts(jordan(), {2}, 3, NilpotencyClass::ALL, cfg).abs_indec == 3);
        CHECK(hua_kac(kronecker(), {2, 2}, cfg).poly == q_poly({{0, 1}, {1, 1}}));
        CHECK(cache.get(cache_key(jordan().canonical_hash(), "(2)", "ALL", "brute", "p=3"))
                  .has_value());
    }
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    {
        // Corrupt file: treated as empty, recomputed, rewritten on save.
        ResultCache cache(path);
        CHECK(cache.dirty());
        CountingConfig cfg;
        cfg.cache = &cache;
        CHECK(brute_counts(jordan(), {2}, 3, NilpotencyClass::ALL, cfg).abs_indec == 3);
    }
    {
        ResultCache cache(path);
        CHECK(!cache.dirty());
        CHECK(cache.get(cache_key(jordan().canonical_hash(), "(2)", "ALL", "brute", "p=3"))
                  .has_value());
    }
    std::remove(path.c_str());
}
