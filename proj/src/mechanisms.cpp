#include "progeny/mechanisms.hpp"

#include <cfloat>
#include <cmath>
#include <string>

#include "progeny/error.hpp"
#include "progeny/integral.hpp"

namespace progeny {

namespace {

std::vector<int> root_progenies(const ProgenyTable& table) {
  std::vector<int> out;
  out.reserve(table.roots.size());
  for (Vertex r : table.roots) out.push_back(table.p(r));
  return out;
}

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(Errc::InvalidSpec, "meps needs 0 < eps < 1, got " + std::to_string(eps));
  }
}

}  // namespace

double mf_top_value(const Forest& forest, const ProgenyTable& table) {
  if (candidate_set(forest, table).size() == 1) return 0.5;
  const Vertex r1 = table.top_root();
  return 0.5 * std::log2(static_cast<double>(table.p(r1)) / table.under(r1));
}

std::vector<double> mf_roots_rule(const Forest& forest) {
  std::vector<double> out(static_cast<std::size_t>(forest.size()), 0.0);
  if (forest.size() == 0) return out;
  const ProgenyTable table = progeny_table(forest);
  out[static_cast<std::size_t>(table.top_root())] = mf_top_value(forest, table);
  return out;
}

double meps_root_value(const Forest& forest, const ProgenyTable& table, double eps, Vertex root) {
  require_eps(eps);
  const int gap = table.pstar - table.p(root);
  const double scale = gap == 0 ? 1.0 : std::pow(eps, gap);
  if (!(scale >= DBL_MIN)) {
    throw Error(Errc::NumericalOverflow, "eps^" + std::to_string(gap) + " underflows for eps=" + std::to_string(eps));
  }
  return mf_top_value(forest, table) * scale;
}

std::vector<double> meps_roots_rule(const Forest& forest, double eps) {
  require_eps(eps);
  std::vector<double> out(static_cast<std::size_t>(forest.size()), 0.0);
  if (forest.size() == 0) return out;
  const ProgenyTable table = progeny_table(forest);
  for (Vertex r : table.roots) out[static_cast<std::size_t>(r)] = meps_root_value(forest, table, eps, r);
  return out;
}

double mb_root_share(const ProgenyTable& table, Vertex root) {
  const double half = 0.5 * table.pstar;
  const int p = table.p(root);
  if (!(p > half)) return 0.0;
  const double lo = std::max(half, static_cast<double>(table.under(root)));
  const auto progenies = root_progenies(table);
  return piecewise_integral(lo, p, progenies);
}

std::vector<double> mb_roots_rule(const Forest& forest) {
  std::vector<double> out(static_cast<std::size_t>(forest.size()), 0.0);
  Evaluator eval(make_mb());
  for (Vertex v = 0; v < forest.size(); ++v) {
    if (forest.is_root(v)) out[static_cast<std::size_t>(v)] = eval.probability(forest, v);
  }
  return out;
}

Distribution mf_closed_form(const Forest& forest) {
  std::vector<double> probs(static_cast<std::size_t>(forest.size()), 0.0);
  if (forest.size() > 0) {
    const ProgenyTable table = progeny_table(forest);
    const std::vector<Vertex> path = candidate_set(forest, table);
    const Forest first = forest.without_out_edge(path.front());
    probs[static_cast<std::size_t>(path.front())] = mf_top_value(first, progeny_table(first));
    for (std::size_t i = 1; i < path.size(); ++i) {
      probs[static_cast<std::size_t>(path[i])] =
          0.5 * std::log2(static_cast<double>(table.p(path[i])) / table.p(path[i - 1]));
    }
  }
  return make_distribution(forest, std::move(probs));
}

Distribution interval_share(const Forest& forest) {
  std::vector<double> probs(static_cast<std::size_t>(forest.size()), 0.0);
  if (forest.size() > 0) {
    const ProgenyTable table = progeny_table(forest);
    const auto progenies = root_progenies(table);
    const double half = 0.5 * table.pstar;
    for (Vertex x = 0; x < forest.size(); ++x) {
      if (!(table.p(x) > half)) continue;
      const double lo = std::max(half, static_cast<double>(table.under(x)));
      probs[static_cast<std::size_t>(x)] = piecewise_integral(lo, table.p(x), progenies);
    }
  }
  return make_distribution(forest, std::move(probs));
}

Distribution function_generated(const GeneratorTable& f, const Forest& forest) {
  return Evaluator(make_function_generated(f)).evaluate(forest);
}

GeneratorTable extract_generator(const MechanismSpec& spec, int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "generator extraction needs n >= 2");
  Evaluator eval(spec);
  std::vector<double> values{1.0};
  for (int k = 2; k <= n - 1; ++k) {
    // k-star on 0..k-1 with centre 0, isolated k..n-1.
    std::vector<Vertex> parent(static_cast<std::size_t>(n), kNone);
    for (int leaf = 1; leaf < k; ++leaf) parent[static_cast<std::size_t>(leaf)] = 0;
    const Forest star(std::move(parent));
    const double centre = eval.probability(star, 0);
    const double isolated = eval.probability(star, k);
    if (isolated == 0.0) {
      throw Error(Errc::ZeroDenominator, to_string(spec) + " gives an isolated vertex probability 0 next to a " +
                                             std::to_string(k) + "-star (n=" + std::to_string(n) + ")");
    }
    values.push_back(centre / isolated);
  }
  return GeneratorTable(std::move(values), "extracted:" + to_string(spec));
}

Distribution symmetrize(const MechanismSpec& inner, const Forest& forest) {
  return Evaluator(make_symmetrized(inner)).evaluate(forest);
}

Distribution uniform(const Forest& forest) {
  const int n = forest.size();
  return make_distribution(forest, std::vector<double>(static_cast<std::size_t>(n), n ? 1.0 / n : 0.0));
}

Distribution empty(const Forest& forest) {
  return make_distribution(forest, std::vector<double>(static_cast<std::size_t>(forest.size()), 0.0));
}

}  // namespace progeny
