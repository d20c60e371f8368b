#include <cmath>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "progeny/canonical.hpp"
#include "progeny/enumerate.hpp"
#include "progeny/error.hpp"
#include "progeny/families.hpp"
#include "progeny/mechanisms.hpp"
#include "progeny/residual.hpp"

using namespace progeny;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidArgument;
}

std::vector<double> table_values(int n, double (*fn)(int)) {
  std::vector<double> v;
  for (int k = 1; k <= n; ++k) v.push_back(fn(k));
  return v;
}

}  // namespace

TEST_CASE("fair roots rule") {
  CHECK(mf_roots_rule(Forest::isolated(1)) == std::vector<double>{0.5});
  CHECK(mf_roots_rule(Forest::isolated(2)) == std::vector<double>{0.5, 0.0});

  // The top root of the candidate chain is c4 with progeny 10 over a child of 9.
  const Forest chain = build_family(parse_family("chains:4,2,1,1,1,1;5"));
  const auto rule = mf_roots_rule(chain);
  CHECK(rule[5] == doctest::Approx(0.5 * std::log2(10.0 / 9.0)).epsilon(1e-14));
  CHECK(rule[6] == 0.0);
}

TEST_CASE("fair mechanism follows its definition") {
  Evaluator eval(make_mf());
  for (const Forest& f : enumerate_forests_up_to(5)) {
    const Distribution d = eval.evaluate(f);
    for (Vertex x = 0; x < f.size(); ++x) REQUIRE(std::abs(d[x] - oracle::mf(f, x)) <= 1e-12);
  }
}

TEST_CASE("fair mechanism closed form, support and bounds") {
  Evaluator eval(make_mf());
  for (const Forest& f : enumerate_forests_up_to(6)) {
    const Distribution d = eval.evaluate(f);
    const Distribution closed = mf_closed_form(f);
    const auto path = candidate_set(f);
    const ProgenyTable t = progeny_table(f);
    REQUIRE(d.total <= 1.0 + 1e-12);
    for (Vertex x = 0; x < f.size(); ++x) {
      REQUIRE(std::abs(d[x] - closed[x]) <= 1e-12);
      const bool in_path = std::find(path.begin(), path.end(), x) != path.end();
      REQUIRE((d[x] > 0.0) == in_path);
    }
    const double first = d[path.front()];
    REQUIRE(first <= 0.5 + 1e-12);
    REQUIRE(first >= 0.5 * std::log2(2.0 * t.p(path.front()) / t.pstar) - 1e-12);
  }
}

TEST_CASE("fair mechanism on a three-vertex path and an empty forest") {
  const Forest path = new_forest(3, {1, 2, kNone});
  const Distribution d = evaluate(make_mf(), path);
  CHECK(candidate_set(path) == std::vector<Vertex>{1, 2});
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(0.5));
  CHECK(d[2] == doctest::Approx(0.5 * std::log2(3.0 / 2.0)));
  const Distribution e = mf_closed_form(Forest::isolated(4));
  CHECK(e.probs == std::vector<double>{0.5, 0, 0, 0});
}

TEST_CASE("epsilon mechanism") {
  // A 4-star and a 2-star: the centres differ by eps^2.
  const Forest f = build_family(parse_family("chains:4;2"));
  const auto rule = meps_roots_rule(f, 0.1);
  CHECK(rule[0] / rule[1] == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(rule[0] == mf_roots_rule(f)[0]);

  const Forest stars = build_family(parse_family("chains:4,3,2,1"));
  const Distribution mf = evaluate(make_mf(), stars);
  double previous = 1.0;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const Distribution me = evaluate(make_meps(eps), stars);
    double dist = 0.0;
    for (Vertex v = 0; v < stars.size(); ++v) dist = std::max(dist, std::abs(me[v] - mf[v]));
    CHECK(dist < previous);
    previous = dist;
  }
  CHECK(previous < 1e-5);

  CHECK(code_of([&] { meps_roots_rule(f, 1.0); }) == Errc::InvalidSpec);
  CHECK(code_of([&] { meps_roots_rule(f, 0.0); }) == Errc::InvalidSpec);
  CHECK(code_of([&] { make_meps(-1); }) == Errc::InvalidSpec);
  CHECK(code_of([&] { meps_roots_rule(f, 1e-200); }) == Errc::NumericalOverflow);
}

TEST_CASE("exact mechanism follows its definition") {
  Evaluator eval(make_mb());
  for (const Forest& f : enumerate_forests_up_to(5)) {
    const Distribution d = eval.evaluate(f);
    for (Vertex x = 0; x < f.size(); ++x) REQUIRE(std::abs(d[x] - oracle::mb(f, x)) <= 1e-12);
  }
}

TEST_CASE("exact mechanism properties up to six vertices") {
  Evaluator eval(make_mb());
  for (const Forest& f : enumerate_forests_up_to(6)) {
    const Distribution d = eval.evaluate(f);
    const ProgenyTable t = progeny_table(f);
    REQUIRE(std::abs(d.total - 1.0) <= 1e-9);
    for (Vertex x = 0; x < f.size(); ++x) {
      REQUIRE(d[x] >= -1e-9);
      if (3 * t.p(x) < t.pstar) REQUIRE(d[x] == 0.0);
    }
  }
}

TEST_CASE("exact mechanism on isolated vertices and a path") {
  for (int n = 1; n <= 7; ++n) {
    const Distribution d = evaluate(make_mb(), Forest::isolated(n));
    for (double p : d.probs) CHECK(p == doctest::Approx(1.0 / n).epsilon(1e-12));
  }
  const Forest path = new_forest(3, {1, 2, kNone});
  const Distribution d = evaluate(make_mb(), path);
  CHECK(d.total == doctest::Approx(1.0).epsilon(1e-12));
  const auto rule = mb_roots_rule(path);
  CHECK(rule[2] == doctest::Approx(d[2]));
  CHECK(rule[0] == 0.0);
}

TEST_CASE("interval share") {
  for (int n = 1; n <= 6; ++n) {
    const Distribution d = interval_share(Forest::isolated(n));
    for (double p : d.probs) CHECK(p == doctest::Approx(1.0 / n).epsilon(1e-12));
  }
  const Distribution star = interval_share(build_family(StarSpec{6}));
  CHECK(star[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (const Forest& f : enumerate_forests_up_to(6)) REQUIRE(std::abs(interval_share(f).total - 1.0) <= 1e-9);
}

TEST_CASE("function-generated mechanism") {
  const Distribution flat = function_generated(GeneratorTable::constant(5), Forest::isolated(5));
  for (double p : flat.probs) CHECK(p == doctest::Approx(0.2));
  CHECK(function_generated(GeneratorTable::pow2(3), Forest::isolated(1)).probs == std::vector<double>{1.0});

  const auto square = table_values(6, [](int k) { return double(k) * k; });
  const auto pow2 = table_values(6, [](int k) { return std::ldexp(1.0, k); });
  for (const auto* values : {&square, &pow2}) {
    const GeneratorTable f(*values);
    Evaluator shapes(make_function_generated(f));
    Evaluator labeled(make_function_generated(f), {.labeled_recursion = true});
    for (const Forest& forest : enumerate_forests_up_to(5)) {
      const Distribution a = shapes.evaluate(forest);
      const Distribution b = labeled.evaluate(forest);
      for (Vertex x = 0; x < forest.size(); ++x) {
        REQUIRE(std::abs(a[x] - b[x]) <= 1e-12);
        REQUIRE(std::abs(a[x] - oracle::fg(*values, forest, x)) <= 1e-12);
      }
      REQUIRE(std::abs(shapes.nonroot_mass(forest) - a.nonroot_mass) <= 1e-12);
    }
  }
}

TEST_CASE("function-generated engines agree on six-vertex forests") {
  const GeneratorTable f = GeneratorTable::linear(6);
  Evaluator shapes(make_function_generated(f));
  Evaluator labeled(make_function_generated(f), {.labeled_recursion = true});
  for (const Forest& forest : enumerate_forests(6)) {
    const Distribution a = shapes.evaluate(forest);
    const Distribution b = labeled.evaluate(forest);
    for (Vertex x = 0; x < forest.size(); ++x) REQUIRE(std::abs(a[x] - b[x]) <= 1e-12);
  }
}

TEST_CASE("function-generated mass on random larger forests") {
  std::mt19937_64 rng(5);
  const GeneratorTable f = GeneratorTable::square(40);
  Evaluator shapes(make_function_generated(f));
  Evaluator labeled(make_function_generated(f), {.labeled_recursion = true});
  for (int i = 0; i < 20; ++i) {
    const Forest forest = sample_forest(9, rng);
    REQUIRE(std::abs(shapes.nonroot_mass(forest) - labeled.nonroot_mass(forest)) <= 1e-12);
  }
}

TEST_CASE("generator extraction") {
  const GeneratorTable flat = extract_generator(make_uniform(), 6);
  CHECK(flat.size() == 5);
  for (double v : flat.values()) CHECK(v == doctest::Approx(1.0));

  CHECK(code_of([] { extract_generator(make_mf(), 4); }) == Errc::ZeroDenominator);

  const GeneratorTable square = extract_generator(make_function_generated(GeneratorTable::square(6)), 6);
  for (int k = 1; k <= 5; ++k) CHECK(square(k) == doctest::Approx(double(k) * k));
  CHECK(square.monotone_nondecreasing());
  CHECK_THROWS_AS(square(6), Error);
}

TEST_CASE("symmetrization") {
  const Distribution two = symmetrize(make_mf(), Forest::isolated(2));
  CHECK(two.probs == std::vector<double>{0.25, 0.25});

  Evaluator sym(make_symmetrized(make_mf()));
  Evaluator sym_mb(make_symmetrized(make_mb()));
  for (const Forest& f : enumerate_forests_up_to(5)) {
    const Distribution d = sym.evaluate(f);
    const CanonicalForm c = canonical_code(f);
    for (const auto& orbit : c.orbits()) {
      for (Vertex v : orbit) REQUIRE(d[v] == doctest::Approx(d[orbit.front()]).epsilon(1e-12));
    }
    for (Vertex x = 0; x < f.size(); ++x) {
      if (!f.is_root(x)) REQUIRE(std::abs(d[x] - sym.evaluate(f.without_out_edge(x))[x]) <= 1e-12);
    }
    REQUIRE(std::abs(sym_mb.evaluate(f).total - 1.0) <= 1e-12);
  }

  // Only the identity maps this forest to itself.
  const Forest asym = new_forest(4, {1, 2, kNone, kNone});
  REQUIRE(canonical_code(asym).orbit_count == 4);
  const MechanismSpec fg = make_function_generated(GeneratorTable::linear(8));
  const Distribution inner = evaluate(fg, asym);
  const Distribution outer = symmetrize(fg, asym);
  for (Vertex v = 0; v < asym.size(); ++v) CHECK(outer[v] == doctest::Approx(inner[v]).epsilon(1e-12));
  CHECK(code_of([] { symmetrize(make_mf(), Forest::isolated(9)); }) == Errc::CapExceeded);
}

TEST_CASE("baselines") {
  const Forest f = new_forest(4, {1, kNone, 1, kNone});
  CHECK(uniform(f).probs == std::vector<double>(4, 0.25));
  CHECK(uniform(f).total == 1.0);
  CHECK(empty(f).probs == std::vector<double>(4, 0.0));
  CHECK(empty(f).total == 0.0);
}

TEST_CASE("mechanism spec strings") {
  for (const char* text : {"mf", "mb", "mprime", "uniform", "empty", "sym:mf", "sym:sym:uniform", "fg:pow2", "fg:square"}) {
    CHECK(to_string(parse_mechanism(text)) == text);
  }
  CHECK(parse_mechanism("meps:0.01").is<mech::Meps>());
  CHECK(std::get<mech::Meps>(parse_mechanism("meps:0.25").kind).eps == 0.25);
  CHECK(code_of([] { parse_mechanism("meps:2"); }) == Errc::InvalidSpec);
  CHECK(code_of([] { parse_mechanism("meps:abc"); }) == Errc::InvalidSpec);
  CHECK(code_of([] { parse_mechanism("best"); }) == Errc::InvalidSpec);
  CHECK(code_of([] { parse_mechanism("fg:/no/such/file.json"); }) == Errc::InvalidSpec);
  CHECK(code_of([] { parse_generator_json("[1, 0, 2]"); }) == Errc::InvalidSpec);
  CHECK(code_of([] { parse_generator_json("[1, "); }) == Errc::SyntaxError);

  const GeneratorTable g = parse_generator_json(R"({"f": [1, 4, 9]})");
  CHECK(g.size() == 3);
  CHECK(g(3) == 9.0);
  CHECK(parse_generator_json("[2, 1]").monotone_nondecreasing() == false);

  const std::string path = "mechanisms_test_generator.json";
  std::ofstream(path) << R"({"f": [1, 2, 3]})";
  const MechanismSpec spec = parse_mechanism("fg:" + path);
  CHECK(std::get<mech::FunctionGenerated>(spec.kind).f->values() == std::vector<double>{1, 2, 3});
  std::remove(path.c_str());
}
