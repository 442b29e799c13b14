#include "quiverbps/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "quiverbps/bps.hpp"
#include "quiverbps/errors.hpp"
#include "quiverbps/lie.hpp"
#include "quiverbps/render.hpp"

namespace qbps {

namespace {

const std::vector<std::string> kCorpusNames = {"jordan", "a2",       "a3",     "kronecker",
                                               "affine_a2", "two_loop", "a2_loop"};

const std::map<int, std::string> kCriterionTitles = {
    {1, "count polynomials match exhaustive finite-field counts"},
    {2, "affine closed-form character equals the counted character"},
    {3, "count polynomial vanishes one step beyond the arrow count"},
    {4, "constant terms equal root multiplicities"},
    {5, "presented algebra dimensions equal the multiplicity recursion"},
    {6, "series coefficients match symmetric-power enumeration"},
    {7, "nilpotent constant terms equal presented loop dimensions"},
    {8, "extraction finds real simples plus one line per imaginary root"},
    {9, "randomized property suites"},
};

struct Ctx {
    const VerifyOptions& opt;
    std::map<std::string, Quiver> corpus;
};

// Componentwise cap per coordinate, reduced by the user box on rank match.
DimVector capped_box(const Ctx& ctx, std::size_t rank, int per_entry) {
    DimVector box(rank, per_entry);
    if (ctx.opt.box && ctx.opt.box->size() == rank) {
        for (std::size_t i = 0; i < rank; ++i) box[i] = std::min(box[i], (*ctx.opt.box)[i]);
    }
    return box;
}

std::vector<DimVector> degrees_up_to(const Ctx& ctx, std::size_t rank, int sum_cap) {
    std::vector<DimVector> out;
    for (const auto& d : dim_vectors_below(capped_box(ctx, rank, sum_cap))) {
        const long long s = dv_total(d);
        if (s >= 1 && s <= sum_cap) out.push_back(d);
    }
    return out;
}

template <typename F>
void add_check(VerificationOutcome& out, int criterion, const std::string& name,
               const std::string& expected, F&& body) {
    VerificationCheck c;
    c.criterion = criterion;
    c.name = name;
    c.expected = expected;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto [ok, computed] = body();
        c.pass = ok;
        c.computed = std::move(computed);
    } catch (const qbps_error& e) {
        c.pass = false;
        c.computed = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.checks.push_back(std::move(c));
}

using CheckResult = std::pair<bool, std::string>;

// --- criterion 1: hua vs exhaustive counting over the corpus ---------------

void run_count_oracle(VerificationOutcome& out, const Ctx& ctx) {
    for (const auto& name : kCorpusNames) {
        const Quiver& q = ctx.corpus.at(name);
        add_check(out, 1, "count-oracle/" + name,
                  "exhaustive counts at p in {2,3} equal the count polynomial, sum(d) <= 3",
                  [&]() -> CheckResult {
                      int cells = 0;
                      for (const auto& d : degrees_up_to(ctx, q.num_vertices(), 3)) {
                          const HalfLaurent poly = hua_kac(q, d, ctx.opt.counting).poly;
                          for (int p : {2, 3}) {
                              const Int brute =
                                  brute_count_abs_indec(q, d, p, NilpotencyClass::ALL,
                                                        ctx.opt.counting);
                              if (poly.eval_at(p) != brute) {
                                  return {false, "mismatch at d=" + dv_to_string(d) +
                                                     ", p=" + std::to_string(p) + ": polynomial " +
                                                     poly.eval_at(p).str() + ", exhaustive " +
                                                     brute.str()};
                              }
                              ++cells;
                          }
                      }
                      return {true, std::to_string(cells) + " cells agree"};
                  });
    }
}

// --- criterion 2: affine closed form ---------------------------------------

void run_affine_closed_form(VerificationOutcome& out, const Ctx& ctx) {
    const std::vector<std::pair<std::string, int>> cases = {{"kronecker", 3}, {"affine_a2", 2}};
    for (const auto& [name, per_entry] : cases) {
        const Quiver& q = ctx.corpus.at(name);
        const DimVector box = capped_box(ctx, q.num_vertices(), per_entry);
        add_check(out, 2, "affine-closed-form/" + name,
                  "closed form equals the counted character at every degree in " +
                      dv_to_string(box),
                  [&]() -> CheckResult {
                      const auto affine = affine_bps_character(q, box);
                      const auto counted =
                          bps_character(q, NilpotencyClass::ALL, box, ctx.opt.counting);
                      for (const auto& d : dim_vectors_below(box)) {
                          if (dv_is_zero(d)) continue;
                          const HalfLaurent a = dims_at(affine.character.values, d);
                          const HalfLaurent b = dims_at(counted.values, d);
                          if (a != b) {
                              return {false, "mismatch at " + dv_to_string(d) + ": closed form " +
                                                 a.to_string() + ", counted " + b.to_string()};
                          }
                      }
                      return {true, std::to_string(dim_vectors_below(box).size() - 1) +
                                        " degrees agree"};
                  });
    }
}

// --- criterion 3: vanishing one step beyond the arrow count ----------------

void run_vanishing(VerificationOutcome& out, const Ctx& ctx) {
    const std::vector<std::pair<std::string, DimVector>> cases = {{"a2", {2, 1}},
                                                                  {"kronecker", {3, 1}}};
    for (const auto& [name, d] : cases) {
        const Quiver& q = ctx.corpus.at(name);
        add_check(out, 3, "vanishing-beyond-arrows/" + name,
                  "count polynomial at " + dv_to_string(d) + " is 0", [&]() -> CheckResult {
                      const HalfLaurent poly = hua_kac(q, d, ctx.opt.counting).poly;
                      return {poly.is_zero(), poly.is_zero() ? "0" : poly.to_string()};
                  });
    }
}

// --- criterion 4: constant term = root multiplicity ------------------------

void run_constant_terms(VerificationOutcome& out, const Ctx& ctx) {
    for (const std::string name : {"a2", "a3", "kronecker", "affine_a2"}) {
        const Quiver& q = ctx.corpus.at(name);
        add_check(out, 4, "constant-term-root-multiplicity/" + name,
                  "constant term of the count polynomial equals the recursion's multiplicity, "
                  "sum(d) <= 6",
                  [&]() -> CheckResult {
                      const auto degrees = degrees_up_to(ctx, q.num_vertices(), 6);
                      const GradedDims mult =
                          km_root_mult_recursion(q, capped_box(ctx, q.num_vertices(), 6));
                      for (const auto& d : degrees) {
                          const Rat a0 = hua_kac(q, d, ctx.opt.counting).poly.coeff(0);
                          const Rat m = dims_at(mult, d).coeff(0);
                          if (a0 != m) {
                              return {false, "mismatch at " + dv_to_string(d) +
                                                 ": constant term " + a0.str() +
                                                 ", multiplicity " + m.str()};
                          }
                      }
                      return {true, std::to_string(degrees.size()) + " degrees agree"};
                  });
    }
}

// --- criterion 5: presented dimensions = recursion -------------------------

void run_presentation_vs_recursion(VerificationOutcome& out, const Ctx& ctx) {
    for (const std::string name : {"a2", "a3", "kronecker", "affine_a2"}) {
        const Quiver& q = ctx.corpus.at(name);
        add_check(out, 5, "presentation-vs-recursion/" + name,
                  "quotient-algebra dimensions equal the recursion, sum(d) <= 5",
                  [&]() -> CheckResult {
                      const auto degrees = degrees_up_to(ctx, q.num_vertices(), 5);
                      const GradedDims mult =
                          km_root_mult_recursion(q, capped_box(ctx, q.num_vertices(), 5));
                      for (const auto& d : degrees) {
                          // Per-degree quotient call: the ideal closure at d only
                          // involves degrees <= d, so a box of exactly d suffices.
                          const GradedDims bb = borcherds_bozec_dims(q, d);
                          const HalfLaurent lhs = dims_at(bb, d);
                          const HalfLaurent rhs = dims_at(mult, d);
                          if (lhs != rhs) {
                              return {false, "mismatch at " + dv_to_string(d) + ": presented " +
                                                 lhs.to_string() + ", recursion " +
                                                 rhs.to_string()};
                          }
                      }
                      return {true, std::to_string(degrees.size()) + " degrees agree"};
                  });
    }
}

// --- criterion 6: PBW series vs symmetric-power enumeration ----------------

void run_pbw_enumeration(VerificationOutcome& out, const Ctx& ctx) {
    for (const auto& name : kCorpusNames) {
        const Quiver& q = ctx.corpus.at(name);
        add_check(out, 6, "pbw-enumeration/" + name,
                  "series coefficients equal the symmetric-power enumeration, sum(d) <= 3, "
                  "window [-10, 10]",
                  [&]() -> CheckResult {
                      int cells = 0;
                      for (const auto& d : degrees_up_to(ctx, q.num_vertices(), 3)) {
                          // The coefficient at T^d only involves parts <= d, so a
                          // box of exactly d gives the same exact value cheaply.
                          const HalfLaurent viaExp =
                              coha_character(q, d, -20, 20, false, ctx.opt.counting).term(d);
                          const HalfLaurent byEnum = coha_coefficient_by_enumeration(
                              q, d, -20, 20, false, ctx.opt.counting);
                          if (byEnum != viaExp) {
                              return {false, "mismatch at " + dv_to_string(d)};
                          }
                          ++cells;
                      }
                      return {true, std::to_string(cells) + " coefficients agree"};
                  });
    }
}

// --- criterion 7: nilpotent constant terms vs presented loop dimensions ----

void run_nilpotent_constant_terms(VerificationOutcome& out, const Ctx& ctx) {
    for (const std::string name : {"jordan", "two_loop"}) {
        const Quiver& q = ctx.corpus.at(name);
        add_check(out, 7, "nilpotent-constant-terms/" + name,
                  "constant term of the nilpotent count equals the presented dimension, n <= 3",
                  [&]() -> CheckResult {
                      const DimVector box = capped_box(ctx, 1, 3);
                      const GradedDims bb = borcherds_bozec_dims(q, box);
                      for (int n = 1; n <= box[0]; ++n) {
                          const Int c0 =
                              kac_constant_term(q, {n}, NilpotencyClass::SSN, ctx.opt.counting);
                          const Int dim = to_integer(dims_at(bb, {n}).coeff(0));
                          if (c0 != dim) {
                              return {false, "mismatch at n=" + std::to_string(n) +
                                                 ": constant term " + c0.str() + ", dimension " +
                                                 dim.str()};
                          }
                      }
                      return {true, std::to_string(box[0]) + " levels agree"};
                  });
    }
}

// --- criterion 8: extraction structure on the affine two-vertex quiver -----

void run_extraction_structure(VerificationOutcome& out, const Ctx& ctx) {
    const Quiver& q = ctx.corpus.at("kronecker");
    const DimVector box = capped_box(ctx, 2, 4);
    add_check(out, 8, "extraction-structure/kronecker",
              "exactly two degree-0 real generators plus one q^(-1) line per multiple of "
              "(1,1) in " +
                  dv_to_string(box) + ", all residuals nonnegative",
              [&]() -> CheckResult {
                  const auto r = cuspidal_extract(q, box, -20, 20, ctx.opt.counting);
                  if (!r.all_nonnegative) return {false, "negative residual present"};
                  const int n_max = std::min(box[0], box[1]);
                  std::size_t i = 0;
                  auto fail = [&](const std::string& msg) -> CheckResult {
                      return {false, msg};
                  };
                  if (r.entries.size() != 2 + static_cast<std::size_t>(n_max)) {
                      return fail("entry count " + std::to_string(r.entries.size()) +
                                  ", expected " + std::to_string(2 + n_max));
                  }
                  for (const DimVector& d : {DimVector{0, 1}, DimVector{1, 0}}) {
                      const auto& e = r.entries[i++];
                      if (e.d != d || e.tag != "real-simple" || e.residual != HalfLaurent::one()) {
                          return fail("unexpected entry at " + dv_to_string(e.d) + ": [" + e.tag +
                                      "] " + e.residual.to_string());
                      }
                  }
                  for (int n = 1; n <= n_max; ++n) {
                      const auto& e = r.entries[i++];
                      if (e.d != dv_scale(n, {1, 1}) || e.tag != "isotropic-line" ||
                          e.residual != HalfLaurent::monomial(-2, 1)) {
                          return fail("unexpected entry at " + dv_to_string(e.d) + ": [" + e.tag +
                                      "] " + e.residual.to_string());
                      }
                  }
                  return {true, std::to_string(r.entries.size()) + " entries as expected"};
              });
}

// --- criterion 9: randomized property suites --------------------------------

void run_exp_log_round_trip(VerificationOutcome& out, const Ctx& ctx) {
    (void)ctx;
    add_check(out, 9, "property/exp-log-round-trip",
              "Log(Exp(f)) == f for 100 random signed series on exactness-wide windows",
              [&]() -> CheckResult {
                  std::mt19937 rng(20260814);
                  std::uniform_int_distribution<int> rank_dist(1, 2);
                  std::uniform_int_distribution<int> entry_dist(1, 2);
                  std::uniform_int_distribution<int> slo_dist(-3, 0);
                  std::uniform_int_distribution<int> shi_dist(0, 3);
                  std::uniform_int_distribution<int> mag(1, 3);
                  std::uniform_int_distribution<int> keep(0, 99);
                  for (int trial = 0; trial < 100; ++trial) {
                      const std::size_t rank = static_cast<std::size_t>(rank_dist(rng));
                      DimVector box(rank, 0);
                      for (auto& x : box) x = entry_dist(rng);
                      // Exp(f) lives within L-fold sums of f's support; a window
                      // that wide keeps the pair exact inverses.
                      const int slo = slo_dist(rng);
                      const int shi = shi_dist(rng);
                      const int len = static_cast<int>(dv_total(box));
                      GradedSeries f(box, len * slo, len * shi);
                      for (const auto& d : dim_vectors_below(box)) {
                          if (dv_is_zero(d)) continue;
                          HalfLaurent h;
                          for (int e = slo; e <= shi; ++e) {
                              if (keep(rng) < 35) {
                                  const int sign = (((e % 2) + 2) % 2 == 0) ? 1 : -1;
                                  h.set_coeff(e, Rat(sign * mag(rng)));
                              }
                          }
                          if (!h.is_zero()) f.set_term(d, h);
                      }
                      const GradedSeries g = plethystic_exp(f);
                      const GradedSeries back = plethystic_log(g);
                      if (!(back == f)) {
                          return {false, "round trip failed on trial " + std::to_string(trial)};
                      }
                  }
                  return {true, "100 round trips exact"};
              });
}

void run_lyndon_vs_witt(VerificationOutcome& out, const Ctx& ctx) {
    (void)ctx;
    add_check(out, 9, "property/lyndon-vs-witt",
              "basis count equals the plethystic route on 20 random generator sets",
              [&]() -> CheckResult {
                  std::mt19937 rng(20260815);
                  std::uniform_int_distribution<int> rank_dist(1, 2);
                  std::uniform_int_distribution<int> count_dist(1, 3);
                  std::uniform_int_distribution<int> coh_dist(-2, 2);
                  std::uniform_int_distribution<int> mult_dist(1, 2);
                  for (int trial = 0; trial < 20; ++trial) {
                      const std::size_t rank = static_cast<std::size_t>(rank_dist(rng));
                      const DimVector box(rank, rank == 1 ? 3 : 2);
                      std::uniform_int_distribution<int> entry_dist(0, rank == 1 ? 3 : 2);
                      LieGenerators gens;
                      const int count = count_dist(rng);
                      for (int k = 0; k < count; ++k) {
                          LieGenerator g;
                          g.grading.assign(rank, 0);
                          do {
                              for (auto& x : g.grading) x = entry_dist(rng);
                          } while (dv_is_zero(g.grading));
                          g.coh = coh_dist(rng);
                          g.multiplicity = mult_dist(rng);
                          gens.push_back(std::move(g));
                      }
                      // Disagreement between the basis count and the plethystic
                      // route throws from inside the call.
                      free_lie_dims(gens, box);
                  }
                  return {true, "20 generator sets agree"};
              });
}

void run_form_bilinearity(VerificationOutcome& out, const Ctx& ctx) {
    (void)ctx;
    add_check(out, 9, "property/form-bilinearity",
              "additivity in both slots, symmetry, and evenness of the symmetrized form",
              [&]() -> CheckResult {
                  std::mt19937 rng(20260816);
                  std::uniform_int_distribution<int> n_dist(1, 3);
                  std::uniform_int_distribution<int> arrows_dist(0, 4);
                  std::uniform_int_distribution<int> entry_dist(0, 4);
                  for (int trial = 0; trial < 200; ++trial) {
                      const int n = n_dist(rng);
                      std::vector<std::string> names;
                      for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
                      std::uniform_int_distribution<int> v_dist(0, n - 1);
                      std::vector<Arrow> arrows;
                      const int m = arrows_dist(rng);
                      for (int k = 0; k < m; ++k) arrows.push_back({v_dist(rng), v_dist(rng)});
                      const Quiver q(names, arrows);
                      auto rand_dv = [&] {
                          DimVector d(static_cast<std::size_t>(n), 0);
                          for (auto& x : d) x = entry_dist(rng);
                          return d;
                      };
                      const DimVector a = rand_dv(), b = rand_dv(), c = rand_dv();
                      if (euler_form(q, dv_add(a, b), c) !=
                              euler_form(q, a, c) + euler_form(q, b, c) ||
                          euler_form(q, c, dv_add(a, b)) !=
                              euler_form(q, c, a) + euler_form(q, c, b)) {
                          return {false, "additivity failed on trial " + std::to_string(trial)};
                      }
                      if (symmetrized_form(q, a, b) != symmetrized_form(q, b, a)) {
                          return {false, "symmetry failed on trial " + std::to_string(trial)};
                      }
                      if (symmetrized_form(q, a, a) != 2 * euler_form(q, a, a)) {
                          return {false, "evenness failed on trial " + std::to_string(trial)};
                      }
                  }
                  return {true, "200 random instances agree"};
              });
}

void run_orientation_independence(VerificationOutcome& out, const Ctx& ctx) {
    const Quiver& q = ctx.corpus.at("a2");
    add_check(out, 9, "property/orientation-independence",
              "count polynomials agree after reversing the arrow, sum(d) <= 4",
              [&]() -> CheckResult {
                  std::vector<Arrow> reversed;
                  for (const Arrow& a : q.arrows()) reversed.push_back({a.tgt, a.src});
                  const Quiver qr(q.vertex_names(), reversed);
                  for (const auto& d : degrees_up_to(ctx, q.num_vertices(), 4)) {
                      const HalfLaurent f = hua_kac(q, d, ctx.opt.counting).poly;
                      const HalfLaurent r = hua_kac(qr, d, ctx.opt.counting).poly;
                      if (f != r) {
                          return {false, "mismatch at " + dv_to_string(d) + ": " + f.to_string() +
                                             " vs " + r.to_string()};
                      }
                  }
                  return {true, "all degrees agree"};
              });
}

void run_determinism(VerificationOutcome& out, const Ctx& ctx) {
    add_check(out, 9, "property/worker-count-determinism",
              "byte-identical results with 1 and 4 workers", [&]() -> CheckResult {
                  CountingConfig cfg1 = ctx.opt.counting;
                  CountingConfig cfg4 = ctx.opt.counting;
                  cfg1.jobs = 1;
                  cfg4.jobs = 4;
                  const Quiver& two_loop = ctx.corpus.at("two_loop");
                  const Quiver& kron = ctx.corpus.at("kronecker");

                  const BruteCounts b1 = brute_counts(two_loop, {2}, 3, NilpotencyClass::ALL, cfg1);
                  const BruteCounts b4 = brute_counts(two_loop, {2}, 3, NilpotencyClass::ALL, cfg4);
                  if (b1.abs_indec != b4.abs_indec || b1.indec != b4.indec ||
                      b1.orbits != b4.orbits || b1.locus != b4.locus) {
                      return {false, "exhaustive counts differ between worker counts"};
                  }
                  if (interpolate_kac(two_loop, {2}, NilpotencyClass::SSN, cfg1).poly !=
                      interpolate_kac(two_loop, {2}, NilpotencyClass::SSN, cfg4).poly) {
                      return {false, "interpolated polynomials differ between worker counts"};
                  }
                  const auto render_run = [&](const CountingConfig& cfg) {
                      const auto bps = bps_character(kron, NilpotencyClass::ALL, {2, 2}, cfg);
                      const auto report = cuspidal_extract(kron, {3, 3}, -20, 20, cfg);
                      return render_graded(kron, convention_label(NilpotencyClass::ALL),
                                           bps.values, OutputFormat::JSON) +
                             render_extraction(report, bps.values,
                                               convention_label(NilpotencyClass::ALL),
                                               OutputFormat::TABLE);
                  };
                  if (render_run(cfg1) != render_run(cfg4)) {
                      return {false, "rendered reports differ between worker counts"};
                  }
                  return {true, "counts, polynomials, and rendered reports identical"};
              });
}

}  // namespace

bool VerificationOutcome::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerificationCheck& c) { return c.pass; });
}

VerificationOutcome run_verification(const std::string& suite, const VerifyOptions& opt) {
    const bool all = suite == "all";
    const bool kac = all || suite == "kac";
    const bool lie = all || suite == "lie";
    const bool bps = all || suite == "bps";
    if (!kac && !lie && !bps) {
        throw usage_error("unknown suite \"" + suite + "\" (expected all, kac, lie, or bps)");
    }
    if (opt.corpus_dir.empty()) throw usage_error("corpus directory not set");

    Ctx ctx{opt, {}};
    for (const auto& name : kCorpusNames) {
        ctx.corpus.emplace(name, quiver_from_json_file(opt.corpus_dir + "/" + name + ".json"));
    }

    VerificationOutcome out;
    if (kac) run_count_oracle(out, ctx);
    if (bps) run_affine_closed_form(out, ctx);
    if (bps) run_vanishing(out, ctx);
    if (kac) run_constant_terms(out, ctx);
    if (lie) run_presentation_vs_recursion(out, ctx);
    if (bps) run_pbw_enumeration(out, ctx);
    if (lie) run_nilpotent_constant_terms(out, ctx);
    if (bps) run_extraction_structure(out, ctx);
    if (bps) run_exp_log_round_trip(out, ctx);
    if (lie) run_lyndon_vs_witt(out, ctx);
    if (kac) run_form_bilinearity(out, ctx);
    if (kac) run_orientation_independence(out, ctx);
    if (kac) run_determinism(out, ctx);
    return out;
}

std::string render_verification(const VerificationOutcome& outcome) {
    std::ostringstream os;
    int passed = 0;
    for (const auto& c : outcome.checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.criterion << ' ' << c.name << " ("
           << std::fixed;
        os.precision(2);
        os << c.seconds << "s)\n";
        if (!c.pass) {
            os << "       expected: " << c.expected << "\n";
            os << "       computed: " << c.computed << "\n";
        }
        if (c.pass) ++passed;
    }
    os << passed << "/" << outcome.checks.size() << " checks passed\n";
    return os.str();
}

std::string render_criterion_summary(const VerificationOutcome& outcome) {
    std::map<int, std::pair<bool, double>> agg;
    for (const auto& c : outcome.checks) {
        auto [it, fresh] = agg.emplace(c.criterion, std::make_pair(true, 0.0));
        it->second.first = it->second.first && c.pass;
        it->second.second += c.seconds;
    }
    std::ostringstream os;
    for (const auto& [criterion, state] : agg) {
        os << (state.first ? "[PASS] " : "[FAIL] ") << criterion << ". "
           << kCriterionTitles.at(criterion) << " (" << std::fixed;
        os.precision(2);
        os << state.second << "s)\n";
    }
    return os.str();
}

}  // namespace qbps
