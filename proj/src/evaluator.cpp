#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "progeny/error.hpp"
#include "progeny/mechanisms.hpp"
#include "progeny/residual.hpp"

namespace progeny {

namespace {

class Engine {
 public:
  virtual ~Engine() = default;
  virtual double probability(const Forest& forest, Vertex x) = 0;
  virtual Distribution evaluate(const Forest& forest) {
    std::vector<double> probs(static_cast<std::size_t>(forest.size()));
    for (Vertex v = 0; v < forest.size(); ++v) probs[static_cast<std::size_t>(v)] = probability(forest, v);
    return make_distribution(forest, std::move(probs));
  }
  virtual void clear() {}
};

// Roots rule plus the IC extension M(x;F) = rule(F_x)(x).
class RootsRuleEngine : public Engine {
 public:
  double probability(const Forest& forest, Vertex x) override {
    if (forest.is_root(x)) return root_value(forest, progeny_table(forest), x);
    const Forest fx = forest.without_out_edge(x);
    return root_value(fx, progeny_table(fx), x);
  }

 protected:
  virtual double root_value(const Forest& forest, const ProgenyTable& table, Vertex root) = 0;

  // Sum of M(v;F) over every vertex except `skip`.
  double mass_except(const Forest& forest, const ProgenyTable& table, Vertex skip) {
    double sum = 0.0;
    for (Vertex v = 0; v < forest.size(); ++v) {
      if (v == skip) continue;
      sum += forest.is_root(v) ? root_value(forest, table, v) : probability(forest, v);
    }
    return sum;
  }
};

class FairEngine final : public RootsRuleEngine {
 protected:
  double root_value(const Forest& forest, const ProgenyTable& table, Vertex root) override {
    return root == table.top_root() ? mf_top_value(forest, table) : 0.0;
  }
};

class EpsilonEngine final : public RootsRuleEngine {
 public:
  explicit EpsilonEngine(double eps) : eps_(eps) {}

 protected:
  double root_value(const Forest& forest, const ProgenyTable& table, Vertex root) override {
    return meps_root_value(forest, table, eps_, root);
  }

 private:
  double eps_;
};

class ExactEngine final : public RootsRuleEngine {
 public:
  void clear() override { top_.clear(); }

 protected:
  double root_value(const Forest& forest, const ProgenyTable& table, Vertex root) override {
    if (root != table.top_root()) return mb_root_share(table, root);
    auto key = forest.key();
    if (const auto it = top_.find(key); it != top_.end()) return it->second;
    const double value = 1.0 - mass_except(forest, table, root);
    top_.emplace(std::move(key), value);
    return value;
  }

 private:
  std::unordered_map<std::string, double> top_;
};

// Function-generated mechanism by the labeled recursion, memoized on the
// parent map.
class LabeledGeneratedEngine final : public RootsRuleEngine {
 public:
  explicit LabeledGeneratedEngine(std::shared_ptr<const GeneratorTable> f) : f_(std::move(f)) {}
  void clear() override { residual_.clear(); }

  double nonroot_mass(const Forest& forest) {
    auto key = forest.key();
    if (const auto it = residual_.find(key); it != residual_.end()) return it->second;
    double sum = 0.0;
    for (Vertex v = 0; v < forest.size(); ++v) {
      if (!forest.is_root(v)) sum += probability(forest, v);
    }
    residual_.emplace(std::move(key), sum);
    return sum;
  }

 protected:
  double root_value(const Forest& forest, const ProgenyTable& table, Vertex root) override {
    const double residual = 1.0 - nonroot_mass(forest);
    if (table.roots.size() == 1) return residual;
    double weight = 0.0;
    for (Vertex r : table.roots) weight += (*f_)(table.p(r));
    return (*f_)(table.p(root)) / weight * residual;
  }

 private:
  std::shared_ptr<const GeneratorTable> f_;
  std::unordered_map<std::string, double> residual_;
};

class GeneratedEngine final : public Engine {
 public:
  explicit GeneratedEngine(std::shared_ptr<const GeneratorTable> f) : residual_(std::move(f)) {}

  double probability(const Forest& forest, Vertex x) override { return residual_.probability(forest, x); }

  Distribution evaluate(const Forest& forest) override {
    const ProgenyTable table = progeny_table(forest);
    std::vector<double> probs(static_cast<std::size_t>(forest.size()));
    for (Vertex v = 0; v < forest.size(); ++v) {
      probs[static_cast<std::size_t>(v)] =
          forest.is_root(v) ? residual_.root_value(forest, table, v) : residual_.probability(forest, v);
    }
    return make_distribution(forest, std::move(probs));
  }

  double nonroot_mass(const Forest& forest) { return residual_.nonroot_mass(forest); }
  void clear() override { residual_.clear(); }

 private:
  ResidualEngine residual_;
};

// Mechanisms given directly as a whole distribution.
class DirectEngine final : public Engine {
 public:
  using Fn = Distribution (*)(const Forest&);
  explicit DirectEngine(Fn fn) : fn_(fn) {}
  double probability(const Forest& forest, Vertex x) override { return fn_(forest)[x]; }
  Distribution evaluate(const Forest& forest) override { return fn_(forest); }

 private:
  Fn fn_;
};

// Average of the inner mechanism over all relabelings of the forest.
class SymmetrizedEngine final : public Engine {
 public:
  SymmetrizedEngine(const MechanismSpec& inner, EvaluatorOptions options)
      : inner_(inner, options), max_n_(options.symmetrize_max_n) {}

  double probability(const Forest& forest, Vertex x) override { return evaluate(forest)[x]; }

  Distribution evaluate(const Forest& forest) override {
    const int n = forest.size();
    if (n > max_n_) {
      throw Error(Errc::CapExceeded, "symmetrization averages n! labelings; n=" + std::to_string(n) +
                                         " exceeds the limit " + std::to_string(max_n_));
    }
    auto key = forest.key();
    if (const auto it = outer_.find(key); it != outer_.end()) return it->second;

    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
    double count = 0.0;
    do {
      const Distribution& d = inner_distribution(forest.relabeled(perm));
      for (std::size_t v = 0; v < perm.size(); ++v) sum[v] += d.probs[static_cast<std::size_t>(perm[v])];
      count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (double& s : sum) s /= count;

    Distribution out = make_distribution(forest, std::move(sum));
    outer_.emplace(std::move(key), out);
    return out;
  }

  void clear() override {
    inner_.clear_cache();
    inner_cache_.clear();
    outer_.clear();
  }

 private:
  const Distribution& inner_distribution(const Forest& forest) {
    auto key = forest.key();
    if (const auto it = inner_cache_.find(key); it != inner_cache_.end()) return it->second;
    return inner_cache_.emplace(std::move(key), inner_.evaluate(forest)).first->second;
  }

  Evaluator inner_;
  int max_n_;
  std::unordered_map<std::string, Distribution> inner_cache_;
  std::unordered_map<std::string, Distribution> outer_;
};

std::unique_ptr<Engine> make_engine(const MechanismSpec& spec, const EvaluatorOptions& options) {
  struct Visitor {
    const EvaluatorOptions& options;
    std::unique_ptr<Engine> operator()(const mech::Mf&) const { return std::make_unique<FairEngine>(); }
    std::unique_ptr<Engine> operator()(const mech::Mb&) const { return std::make_unique<ExactEngine>(); }
    std::unique_ptr<Engine> operator()(const mech::Meps& m) const {
      if (!(m.eps > 0.0 && m.eps < 1.0)) throw Error(Errc::InvalidSpec, "meps needs 0 < eps < 1");
      return std::make_unique<EpsilonEngine>(m.eps);
    }
    std::unique_ptr<Engine> operator()(const mech::FunctionGenerated& m) const {
      if (!m.f) throw Error(Errc::InvalidSpec, "function-generated mechanism without a table");
      if (options.labeled_recursion) return std::make_unique<LabeledGeneratedEngine>(m.f);
      return std::make_unique<GeneratedEngine>(m.f);
    }
    std::unique_ptr<Engine> operator()(const mech::IntervalShareReference&) const {
      return std::make_unique<DirectEngine>(&interval_share);
    }
    std::unique_ptr<Engine> operator()(const mech::Uniform&) const { return std::make_unique<DirectEngine>(&uniform); }
    std::unique_ptr<Engine> operator()(const mech::Empty&) const { return std::make_unique<DirectEngine>(&empty); }
    std::unique_ptr<Engine> operator()(const mech::Symmetrized& m) const {
      if (!m.inner) throw Error(Errc::InvalidSpec, "symmetrized mechanism without an inner mechanism");
      return std::make_unique<SymmetrizedEngine>(*m.inner, options);
    }
  };
  return std::visit(Visitor{options}, spec.kind);
}

}  // namespace

struct Evaluator::Impl {
  MechanismSpec spec;
  std::unique_ptr<Engine> engine;
};

Evaluator::Evaluator(MechanismSpec spec, EvaluatorOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->engine = make_engine(spec, options);
  impl_->spec = std::move(spec);
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

const MechanismSpec& Evaluator::spec() const noexcept { return impl_->spec; }

Distribution Evaluator::evaluate(const Forest& forest) { return impl_->engine->evaluate(forest); }

double Evaluator::probability(const Forest& forest, Vertex x) {
  if (x < 0 || x >= forest.size()) throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(x));
  return impl_->engine->probability(forest, x);
}

double Evaluator::nonroot_mass(const Forest& forest) {
  if (auto* g = dynamic_cast<GeneratedEngine*>(impl_->engine.get())) return g->nonroot_mass(forest);
  if (auto* g = dynamic_cast<LabeledGeneratedEngine*>(impl_->engine.get())) return g->nonroot_mass(forest);
  return evaluate(forest).nonroot_mass;
}

void Evaluator::clear_cache() { impl_->engine->clear(); }

Distribution evaluate(const MechanismSpec& spec, const Forest& forest) {
  return Evaluator(spec).evaluate(forest);
}

}  // namespace progeny
