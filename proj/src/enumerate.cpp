#include "progeny/enumerate.hpp"

#include <cstdlib>
#include <queue>
#include <string>

#include "progeny/error.hpp"

namespace progeny {

int enumeration_cap_from_env() {
  if (const char* env = std::getenv("PROGENY_MAX_N"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0 && value < 16) return static_cast<int>(value);
    throw Error(Errc::InvalidArgument, std::string("PROGENY_MAX_N must be an integer in 1..15, got '") +
                                           env + "'");
  }
  return kDefaultEnumerationCap;
}

std::uint64_t labeled_forest_count(int n) {
  if (n <= 0) return 0;
  std::uint64_t out = 1;
  for (int i = 0; i < n - 1; ++i) out *= static_cast<std::uint64_t>(n + 1);
  return out;
}

ForestEnumerator::ForestEnumerator(int n, int cap) : n_(n), choice_(static_cast<std::size_t>(n), -2) {
  if (n < 1) throw Error(Errc::InvalidArgument, "forests need at least one vertex");
  if (n > cap) {
    throw Error(Errc::CapExceeded, "n=" + std::to_string(n) + " exceeds enumeration cap " +
                                       std::to_string(cap));
  }
}

bool ForestEnumerator::acyclic_choice(Vertex v, Vertex target) const {
  // Vertices below v are assigned and acyclic; walk until we leave them.
  Vertex u = target;
  while (u != kNone) {
    if (u == v) return false;
    if (u > v) return true;
    u = choice_[static_cast<std::size_t>(u)];
  }
  return true;
}

std::optional<Forest> ForestEnumerator::next() {
  if (done_) return std::nullopt;
  Vertex v = 0;
  if (!started_) {
    started_ = true;
  } else {
    v = n_ - 1;
  }
  while (v >= 0) {
    auto& c = choice_[static_cast<std::size_t>(v)];
    bool found = false;
    for (Vertex candidate = c + 1; candidate < n_; ++candidate) {
      if (acyclic_choice(v, candidate)) {
        c = candidate;
        found = true;
        break;
      }
    }
    if (!found) {
      c = -2;
      --v;
      continue;
    }
    if (v == n_ - 1) return Forest(choice_);
    ++v;
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Forest> enumerate_forests(int n, int cap) {
  ForestEnumerator e(n, cap);
  std::vector<Forest> out;
  out.reserve(static_cast<std::size_t>(labeled_forest_count(n)));
  while (auto f = e.next()) out.push_back(std::move(*f));
  return out;
}

std::vector<Forest> enumerate_forests_up_to(int n_max, int cap) {
  std::vector<Forest> out;
  for (int n = 1; n <= n_max; ++n) {
    auto batch = enumerate_forests(n, cap);
    out.insert(out.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  }
  return out;
}

Forest sample_forest(int n, std::mt19937_64& rng) {
  if (n < 1) throw Error(Errc::InvalidArgument, "forests need at least one vertex");
  // Tree on vertices 0..n; vertex n is the virtual root.
  const int m = n + 1;
  std::vector<int> code(static_cast<std::size_t>(m - 2));
  std::uniform_int_distribution<int> pick(0, m - 1);
  for (auto& c : code) c = pick(rng);

  std::vector<int> degree(static_cast<std::size_t>(m), 1);
  for (int c : code) ++degree[static_cast<std::size_t>(c)];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < m; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  }
  std::vector<std::vector<int>> adjacent(static_cast<std::size_t>(m));
  auto link = [&adjacent](int a, int b) {
    adjacent[static_cast<std::size_t>(a)].push_back(b);
    adjacent[static_cast<std::size_t>(b)].push_back(a);
  };
  for (int c : code) {
    const int leaf = leaves.top();
    leaves.pop();
    link(leaf, c);
    if (--degree[static_cast<std::size_t>(c)] == 1) leaves.push(c);
  }
  const int u = leaves.top();
  leaves.pop();
  link(u, leaves.top());

  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNone);
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  std::vector<int> stack{n};
  seen[static_cast<std::size_t>(n)] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adjacent[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      parent[static_cast<std::size_t>(w)] = v == n ? kNone : v;
      stack.push_back(w);
    }
  }
  return Forest(std::move(parent));
}

}  // namespace progeny
