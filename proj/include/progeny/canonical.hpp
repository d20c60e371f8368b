#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "progeny/forest.hpp"

namespace progeny {

/// Canonical encoding of an unlabeled rooted forest plus the automorphism
/// orbits of its vertices.
///
/// `code` is the sorted concatenation of the AHU codes of the trees, where a
/// tree encodes as "(" + sorted child codes + ")". Two forests are isomorphic
/// iff their codes are equal. `orbit[v]` numbers orbits in order of their
/// smallest vertex.
struct CanonicalForm {
  std::string code;
  std::vector<int> orbit;
  int orbit_count = 0;

  std::vector<std::vector<Vertex>> orbits() const;
};

CanonicalForm canonical_code(const Forest& forest);

using ShapeId = std::int32_t;

/// Multiset of child shapes, stored as sorted (shape, multiplicity) pairs.
using ShapeMultiset = std::vector<std::pair<ShapeId, int>>;

struct Shape {
  ShapeMultiset children;
  int size = 1;
};

/// Hash-consing table for unlabeled rooted trees. Ids are only meaningful
/// inside one table, but within a table equal ids mean isomorphic trees.
class ShapeTable {
 public:
  ShapeTable();

  ShapeId leaf() const noexcept { return 0; }
  ShapeId intern(ShapeMultiset children);
  const Shape& shape(ShapeId id) const { return shapes_[static_cast<std::size_t>(id)]; }
  int size(ShapeId id) const { return shape(id).size; }
  std::size_t count() const noexcept { return shapes_.size(); }

  /// Shape id of the subtree rooted at every vertex.
  std::vector<ShapeId> shapes_of(const Forest& forest);

  /// The forest as a multiset of root shapes.
  ShapeMultiset roots_of(const Forest& forest);

 private:
  struct Hash {
    std::size_t operator()(const ShapeMultiset& m) const noexcept;
  };

  std::vector<Shape> shapes_;
  std::unordered_map<ShapeMultiset, ShapeId, Hash> index_;
};

/// Adds `delta` copies of `id` to a sorted multiset, dropping empty entries.
void adjust_multiset(ShapeMultiset& m, ShapeId id, int delta);

std::size_t hash_multiset(const ShapeMultiset& m) noexcept;

}  // namespace progeny
