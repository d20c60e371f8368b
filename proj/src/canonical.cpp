#include "progeny/canonical.hpp"

#include <algorithm>
#include <map>

#include "progeny/error.hpp"

namespace progeny {

namespace {

/// Children-before-parents order.
std::vector<Vertex> bottom_up_order(const Forest& forest) {
  const int n = forest.size();
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
    const Vertex p = forest.parent(order[i]);
    if (p != kNone && --pending[static_cast<std::size_t>(p)] == 0) order.push_back(p);
  }
  return order;
}

}  // namespace

std::vector<std::vector<Vertex>> CanonicalForm::orbits() const {
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(orbit_count));
  for (std::size_t v = 0; v < orbit.size(); ++v) {
    out[static_cast<std::size_t>(orbit[v])].push_back(static_cast<Vertex>(v));
  }
  return out;
}

CanonicalForm canonical_code(const Forest& forest) {
  const int n = forest.size();
  const auto children = forest.children();
  const auto order = bottom_up_order(forest);

  std::vector<std::string> code(static_cast<std::size_t>(n));
  for (Vertex v : order) {
    std::vector<const std::string*> parts;
    for (Vertex c : children[static_cast<std::size_t>(v)]) parts.push_back(&code[static_cast<std::size_t>(c)]);
    std::sort(parts.begin(), parts.end(), [](const auto* a, const auto* b) { return *a < *b; });
    std::string s = "(";
    for (const auto* p : parts) s += *p;
    s += ')';
    code[static_cast<std::size_t>(v)] = std::move(s);
  }

  CanonicalForm out;
  std::vector<const std::string*> roots;
  for (Vertex v = 0; v < n; ++v) {
    if (forest.is_root(v)) roots.push_back(&code[static_cast<std::size_t>(v)]);
  }
  std::sort(roots.begin(), roots.end(), [](const auto* a, const auto* b) { return *a < *b; });
  for (const auto* r : roots) out.code += *r;

  // Same orbit iff same subtree code and parents in the same orbit.
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  std::map<std::pair<int, std::string>, int> positions;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    const Vertex p = forest.parent(v);
    const int above = p == kNone ? -1 : position[static_cast<std::size_t>(p)];
    const auto [slot, inserted] =
        positions.try_emplace({above, code[static_cast<std::size_t>(v)]}, static_cast<int>(positions.size()));
    position[static_cast<std::size_t>(v)] = slot->second;
  }
  std::vector<int> renumber(positions.size(), -1);
  out.orbit.assign(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    int& r = renumber[static_cast<std::size_t>(position[static_cast<std::size_t>(v)])];
    if (r < 0) r = out.orbit_count++;
    out.orbit[static_cast<std::size_t>(v)] = r;
  }
  return out;
}

std::size_t hash_multiset(const ShapeMultiset& m) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& [id, count] : m) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(id)) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(count)) << 32);
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::size_t ShapeTable::Hash::operator()(const ShapeMultiset& m) const noexcept {
  return hash_multiset(m);
}

void adjust_multiset(ShapeMultiset& m, ShapeId id, int delta) {
  auto it = std::lower_bound(m.begin(), m.end(), id,
                             [](const auto& entry, ShapeId key) { return entry.first < key; });
  if (it != m.end() && it->first == id) {
    it->second += delta;
    if (it->second < 0) throw Error(Errc::InvalidArgument, "shape multiplicity below zero");
    if (it->second == 0) m.erase(it);
    return;
  }
  if (delta < 0) throw Error(Errc::InvalidArgument, "removing a shape that is not present");
  if (delta > 0) m.insert(it, {id, delta});
}

ShapeTable::ShapeTable() {
  shapes_.push_back(Shape{{}, 1});
  index_.emplace(ShapeMultiset{}, 0);
}

ShapeId ShapeTable::intern(ShapeMultiset children) {
  if (auto it = index_.find(children); it != index_.end()) return it->second;
  int size = 1;
  for (const auto& [id, count] : children) size += count * shape(id).size;
  const auto id = static_cast<ShapeId>(shapes_.size());
  index_.emplace(children, id);
  shapes_.push_back(Shape{std::move(children), size});
  return id;
}

std::vector<ShapeId> ShapeTable::shapes_of(const Forest& forest) {
  const int n = forest.size();
  std::vector<ShapeMultiset> below(static_cast<std::size_t>(n));
  std::vector<ShapeId> out(static_cast<std::size_t>(n), 0);
  for (Vertex v : bottom_up_order(forest)) {
    const ShapeId id = intern(std::move(below[static_cast<std::size_t>(v)]));
    out[static_cast<std::size_t>(v)] = id;
    if (const Vertex p = forest.parent(v); p != kNone) adjust_multiset(below[static_cast<std::size_t>(p)], id, 1);
  }
  return out;
}

ShapeMultiset ShapeTable::roots_of(const Forest& forest) {
  const auto ids = shapes_of(forest);
  ShapeMultiset out;
  for (Vertex v = 0; v < forest.size(); ++v) {
    if (forest.is_root(v)) adjust_multiset(out, ids[static_cast<std::size_t>(v)], 1);
  }
  return out;
}

}  // namespace progeny
