#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "progeny/canonical.hpp"
#include "progeny/forest.hpp"
#include "progeny/mechanism_spec.hpp"

namespace progeny {

/// Non-root mass of a function-generated mechanism, memoized on unlabeled
/// forest classes.
///
/// A function-generated mechanism is label-blind, so the mass Σ M(x;F) over
/// non-roots depends only on the multiset of root shapes. Deleting the
/// out-edge of a non-root vertex splits one root shape into a remainder and
/// a detached subtree; each shape keeps the list of such splits with their
/// multiplicities, which keeps forests of a few dozen vertices tractable.
class ResidualEngine {
 public:
  explicit ResidualEngine(std::shared_ptr<const GeneratorTable> f);

  double nonroot_mass(const Forest& forest);

  /// Probability of a root under the roots rule of `forest`.
  double root_value(const Forest& forest, const ProgenyTable& table, Vertex root);

  /// M(x;F): root_value in F_x when x is not a root.
  double probability(const Forest& forest, Vertex x);

  std::size_t classes_cached() const noexcept { return memo_.size(); }
  void clear() { memo_.clear(); }

 private:
  struct Split {
    ShapeId remaining;
    ShapeId detached;
    std::int64_t count;
  };
  struct Hash {
    std::size_t operator()(const ShapeMultiset& m) const noexcept { return hash_multiset(m); }
  };

  const std::vector<Split>& splits(ShapeId id);
  double weight(const ShapeMultiset& roots) const;
  double nonroot_mass(const ShapeMultiset& roots);

  std::shared_ptr<const GeneratorTable> f_;
  ShapeTable shapes_;
  std::vector<std::vector<Split>> splits_;
  std::vector<char> splits_ready_;
  std::unordered_map<ShapeMultiset, double, Hash> memo_;
};

}  // namespace progeny
