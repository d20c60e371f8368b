#include "progeny/forest.hpp"

#include <algorithm>

#include "progeny/error.hpp"

namespace progeny {

namespace {

void validate(const std::vector<Vertex>& parent) {
  const auto n = static_cast<Vertex>(parent.size());
  for (Vertex v = 0; v < n; ++v) {
    const Vertex p = parent[static_cast<std::size_t>(v)];
    if (p != kNone && (p < 0 || p >= n)) {
      throw Error(Errc::IndexOutOfRange, "parent of vertex " + std::to_string(v) + " is " +
                                             std::to_string(p) + ", outside 0.." +
                                             std::to_string(n - 1));
    }
    if (p == v) {
      throw Error(Errc::CycleDetected, "vertex " + std::to_string(v) + " points at itself");
    }
  }
  // 0 = unvisited, 1 = on the current walk, 2 = known to reach a root.
  std::vector<char> state(parent.size(), 0);
  std::vector<Vertex> walk;
  for (Vertex start = 0; start < n; ++start) {
    walk.clear();
    Vertex v = start;
    while (v != kNone && state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      walk.push_back(v);
      v = parent[static_cast<std::size_t>(v)];
    }
    if (v != kNone && state[static_cast<std::size_t>(v)] == 1) {
      throw Error(Errc::CycleDetected,
                  "parent chain from vertex " + std::to_string(start) + " revisits " +
                      std::to_string(v));
    }
    for (Vertex w : walk) state[static_cast<std::size_t>(w)] = 2;
  }
}

}  // namespace

Forest::Forest(std::vector<Vertex> parent) : parent_(std::move(parent)) { validate(parent_); }

Forest Forest::isolated(int n) {
  return Forest(std::vector<Vertex>(static_cast<std::size_t>(n), kNone), Unchecked{});
}

int Forest::edge_count() const noexcept {
  return static_cast<int>(std::count_if(parent_.begin(), parent_.end(),
                                        [](Vertex p) { return p != kNone; }));
}

Forest Forest::without_out_edge(Vertex x) const {
  if (x < 0 || x >= size()) {
    throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(x));
  }
  auto parent = parent_;
  parent[static_cast<std::size_t>(x)] = kNone;
  return Forest(std::move(parent), Unchecked{});
}

Forest Forest::relabeled(std::span<const Vertex> perm) const {
  if (static_cast<int>(perm.size()) != size()) {
    throw Error(Errc::InvalidArgument, "permutation size does not match forest");
  }
  std::vector<Vertex> parent(parent_.size(), kNone);
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    const Vertex p = parent_[v];
    parent[static_cast<std::size_t>(perm[v])] = p == kNone ? kNone : perm[static_cast<std::size_t>(p)];
  }
  return Forest(std::move(parent));
}

std::vector<std::vector<Vertex>> Forest::children() const {
  std::vector<std::vector<Vertex>> out(parent_.size());
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    if (parent_[v] != kNone) out[static_cast<std::size_t>(parent_[v])].push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::string Forest::key() const {
  return std::string(reinterpret_cast<const char*>(parent_.data()), parent_.size() * sizeof(Vertex));
}

Forest new_forest(int n, std::vector<Vertex> parent) {
  if (n < 0 || static_cast<std::size_t>(n) != parent.size()) {
    throw Error(Errc::IndexOutOfRange, "parent map has " + std::to_string(parent.size()) +
                                           " entries, expected " + std::to_string(n));
  }
  return Forest(std::move(parent));
}

Forest remove_out_edge(const Forest& forest, Vertex x) { return forest.without_out_edge(x); }

ProgenyTable progeny_table(const Forest& forest) {
  const int n = forest.size();
  ProgenyTable t;
  t.progeny.assign(static_cast<std::size_t>(n), 1);
  t.max_child.assign(static_cast<std::size_t>(n), 0);
  t.root_of.assign(static_cast<std::size_t>(n), kNone);

  // Kahn order: a vertex is emitted once all of its children are.
  std::vector<int> pending(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    if (!forest.is_root(v)) ++pending[static_cast<std::size_t>(forest.parent(v))];
  }
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    if (pending[static_cast<std::size_t>(v)] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order[i];
    const Vertex p = forest.parent(v);
    if (p == kNone) continue;
    const auto pi = static_cast<std::size_t>(p);
    t.progeny[pi] += t.progeny[static_cast<std::size_t>(v)];
    t.max_child[pi] = std::max(t.max_child[pi], t.progeny[static_cast<std::size_t>(v)]);
    if (--pending[pi] == 0) order.push_back(p);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    const Vertex p = forest.parent(v);
    t.root_of[static_cast<std::size_t>(v)] = p == kNone ? v : t.root_of[static_cast<std::size_t>(p)];
    if (p == kNone) t.roots.push_back(v);
  }
  std::sort(t.roots.begin(), t.roots.end(),
            [&t](Vertex x, Vertex y) { return t.precedes(x, y); });
  t.pstar = t.roots.empty() ? 0 : t.p(t.roots.front());
  return t;
}

std::vector<Vertex> candidate_set(const Forest& forest) {
  return candidate_set(forest, progeny_table(forest));
}

std::vector<Vertex> candidate_set(const Forest& forest, const ProgenyTable& t) {
  std::vector<Vertex> out;
  if (forest.size() == 0) return out;
  const Vertex r1 = t.roots[0];
  const Vertex r2 = t.roots.size() > 1 ? t.roots[1] : kNone;
  for (Vertex x = 0; x < forest.size(); ++x) {
    if (t.root_of[static_cast<std::size_t>(x)] != r1) continue;
    const int twice = 2 * t.p(x);
    const bool above_half = twice > t.pstar || (twice == t.pstar && x < r1);
    const bool above_second = r2 == kNone || t.precedes(x, r2);
    if (above_half && above_second) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), [&t](Vertex x, Vertex y) { return t.p(x) < t.p(y); });
  return out;
}

}  // namespace progeny
