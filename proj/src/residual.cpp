#include "progeny/residual.hpp"

#include <map>

namespace progeny {

ResidualEngine::ResidualEngine(std::shared_ptr<const GeneratorTable> f) : f_(std::move(f)) {}

const std::vector<ResidualEngine::Split>& ResidualEngine::splits(ShapeId id) {
  const auto idx = static_cast<std::size_t>(id);
  if (idx < splits_ready_.size() && splits_ready_[idx]) return splits_[idx];

  // Copy: interning below may grow the shape table.
  const ShapeMultiset children = shapes_.shape(id).children;
  std::map<std::pair<ShapeId, ShapeId>, std::int64_t> acc;
  for (const auto& [child, mult] : children) {
    ShapeMultiset without = children;
    adjust_multiset(without, child, -1);
    acc[{shapes_.intern(without), child}] += mult;

    const std::vector<Split> inner = splits(child);
    for (const Split& s : inner) {
      ShapeMultiset replaced = without;
      adjust_multiset(replaced, s.remaining, +1);
      acc[{shapes_.intern(std::move(replaced)), s.detached}] += mult * s.count;
    }
  }
  if (splits_.size() <= idx) {
    splits_.resize(shapes_.count());
    splits_ready_.resize(shapes_.count(), 0);
  }
  auto& out = splits_[idx];
  out.clear();
  for (const auto& [key, count] : acc) out.push_back({key.first, key.second, count});
  splits_ready_[idx] = 1;
  return out;
}

double ResidualEngine::weight(const ShapeMultiset& roots) const {
  double w = 0.0;
  for (const auto& [id, mult] : roots) w += mult * (*f_)(shapes_.size(id));
  return w;
}

double ResidualEngine::nonroot_mass(const ShapeMultiset& roots) {
  if (const auto it = memo_.find(roots); it != memo_.end()) return it->second;
  double total = 0.0;
  for (const auto& [id, mult] : roots) {
    const std::size_t count = splits(id).size();
    for (std::size_t i = 0; i < count; ++i) {
      // Re-read each time: the recursion below may reallocate splits_.
      const Split s = splits_[static_cast<std::size_t>(id)][i];
      ShapeMultiset next = roots;
      adjust_multiset(next, id, -1);
      adjust_multiset(next, s.remaining, +1);
      adjust_multiset(next, s.detached, +1);
      const double share = (*f_)(shapes_.size(s.detached)) / weight(next);
      total += static_cast<double>(mult) * static_cast<double>(s.count) * share * (1.0 - nonroot_mass(next));
    }
  }
  memo_.emplace(roots, total);
  return total;
}

double ResidualEngine::nonroot_mass(const Forest& forest) { return nonroot_mass(shapes_.roots_of(forest)); }

double ResidualEngine::root_value(const Forest& forest, const ProgenyTable& table, Vertex root) {
  const ShapeMultiset roots = shapes_.roots_of(forest);
  const double residual = 1.0 - nonroot_mass(roots);
  if (table.roots.size() == 1) return residual;
  return (*f_)(table.p(root)) / weight(roots) * residual;
}

double ResidualEngine::probability(const Forest& forest, Vertex x) {
  if (forest.is_root(x)) return root_value(forest, progeny_table(forest), x);
  const Forest fx = forest.without_out_edge(x);
  return root_value(fx, progeny_table(fx), x);
}

}  // namespace progeny
