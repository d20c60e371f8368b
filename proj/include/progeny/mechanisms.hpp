#pragma once

#include <memory>
#include <vector>

#include "progeny/distribution.hpp"
#include "progeny/forest.hpp"
#include "progeny/mechanism_spec.hpp"

namespace progeny {

struct EvaluatorOptions {
  /// Function-generated mechanisms normally share work across isomorphic
  /// sub-forests; this switches to the plain labeled recursion.
  bool labeled_recursion = false;
  /// Largest n accepted by the symmetrized wrapper (it averages n! labelings).
  int symmetrize_max_n = 8;
};

/// Evaluates one mechanism on many forests, caching sub-forest results.
///
/// Mechanisms defined by a roots rule are extended to non-roots by
/// M(x;F) = rule(F_x)(x). Not thread-safe; use one evaluator per thread.
class Evaluator {
 public:
  explicit Evaluator(MechanismSpec spec, EvaluatorOptions options = {});
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;

  const MechanismSpec& spec() const noexcept;

  Distribution evaluate(const Forest& forest);
  double probability(const Forest& forest, Vertex x);
  double nonroot_mass(const Forest& forest);

  void clear_cache();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Distribution evaluate(const MechanismSpec& spec, const Forest& forest);

/// Value of the fair roots rule at the top root: 1/2 when the candidate set is
/// a single vertex, otherwise (1/2) log2(P(r1) / max child progeny of r1).
double mf_top_value(const Forest& forest, const ProgenyTable& table);

/// Roots rules, indexed by vertex; non-root entries are 0.
std::vector<double> mf_roots_rule(const Forest& forest);
/// Throws Error{InvalidSpec} for eps outside (0,1) and
/// Error{NumericalOverflow} if eps^(P*-P(r)) underflows.
std::vector<double> meps_roots_rule(const Forest& forest, double eps);
double meps_root_value(const Forest& forest, const ProgenyTable& table, double eps, Vertex root);
std::vector<double> mb_roots_rule(const Forest& forest);

/// The integral share of a root other than the top root; 0 when its progeny
/// is at most half of P*.
double mb_root_share(const ProgenyTable& table, Vertex root);

/// Direct formula on the candidate path, without the IC recursion.
Distribution mf_closed_form(const Forest& forest);

/// Each vertex above P*/2 owns (max(P*/2, max child progeny), P(x)] and the
/// owners of a point split it evenly. Exact, but not incentive-compatible.
Distribution interval_share(const Forest& forest);

Distribution function_generated(const GeneratorTable& f, const Forest& forest);

/// f(1) = 1 and f(k) = M(c;S_k) / M(z;S_k), where S_k is a k-star with centre
/// c plus n-k isolated vertices and z is one of them. The table covers 1..n-1.
/// Throws Error{ZeroDenominator} if M(z;S_k) = 0.
GeneratorTable extract_generator(const MechanismSpec& spec, int n);

Distribution symmetrize(const MechanismSpec& inner, const Forest& forest);
Distribution uniform(const Forest& forest);
Distribution empty(const Forest& forest);

}  // namespace progeny
