#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace progeny {

using Vertex = std::int32_t;
inline constexpr Vertex kNone = -1;

/// A labeled directed forest on vertices 0..n-1, stored as a parent map.
///
/// The out-edge of `v` points at `parent(v)`; roots have `kNone`. Because the
/// parent map is a function, out-degree is at most one by construction and
/// validation only has to rule out cycles and bad indices. Forests are
/// immutable values: edge removal and relabeling return new forests.
class Forest {
 public:
  Forest() = default;

  /// Throws Error{IndexOutOfRange} or Error{CycleDetected}.
  explicit Forest(std::vector<Vertex> parent);

  /// n isolated vertices.
  static Forest isolated(int n);

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  Vertex parent(Vertex v) const { return parent_[static_cast<std::size_t>(v)]; }
  bool is_root(Vertex v) const { return parent(v) == kNone; }
  std::span<const Vertex> parents() const noexcept { return parent_; }
  int edge_count() const noexcept;
  int root_count() const noexcept { return size() - edge_count(); }

  /// F_x: the same forest with the out-edge of `x` deleted. Identity on roots.
  Forest without_out_edge(Vertex x) const;

  /// The forest with every vertex v renamed to perm[v].
  Forest relabeled(std::span<const Vertex> perm) const;

  std::vector<std::vector<Vertex>> children() const;

  /// Byte string that identifies the labeled forest; used as a memo key.
  std::string key() const;

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  struct Unchecked {};
  Forest(std::vector<Vertex> parent, Unchecked) : parent_(std::move(parent)) {}

  std::vector<Vertex> parent_;
};

/// Validating constructor taking an explicit vertex count.
Forest new_forest(int n, std::vector<Vertex> parent);

Forest remove_out_edge(const Forest& forest, Vertex x);

/// Progeny P(v) = |T(v)| for every vertex plus the root order.
///
/// `max_child[v]` is the largest progeny strictly inside T(v) (0 for a leaf).
/// `roots` lists the roots in decreasing order of the total order: larger
/// progeny first, ties broken by smaller vertex id.
struct ProgenyTable {
  std::vector<int> progeny;
  std::vector<int> max_child;
  std::vector<Vertex> root_of;
  std::vector<Vertex> roots;
  int pstar = 0;

  /// True iff x comes strictly before y in the total order.
  bool precedes(Vertex x, Vertex y) const noexcept {
    const int px = progeny[static_cast<std::size_t>(x)];
    const int py = progeny[static_cast<std::size_t>(y)];
    return px > py || (px == py && x < y);
  }

  int p(Vertex v) const { return progeny[static_cast<std::size_t>(v)]; }
  int under(Vertex v) const { return max_child[static_cast<std::size_t>(v)]; }
  Vertex top_root() const { return roots.front(); }
};

ProgenyTable progeny_table(const Forest& forest);

/// The vertices that become the top root once their own out-edge is removed,
/// ordered a_1, ..., a_k with a_k the top root. They always form a directed
/// path ending at the top root.
std::vector<Vertex> candidate_set(const Forest& forest);
std::vector<Vertex> candidate_set(const Forest& forest, const ProgenyTable& table);

}  // namespace progeny
