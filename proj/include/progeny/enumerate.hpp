#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "progeny/forest.hpp"

namespace progeny {

inline constexpr int kDefaultEnumerationCap = 7;

/// The cap honoured by the tools: PROGENY_MAX_N when set, else the default.
int enumeration_cap_from_env();

/// (n+1)^(n-1), the number of labeled forests on n vertices.
std::uint64_t labeled_forest_count(int n);

/// Streams every labeled forest on n vertices exactly once, in lexicographic
/// order of the parent map (with "no parent" ordered before vertex 0).
class ForestEnumerator {
 public:
  /// Throws Error{CapExceeded} when n > cap, Error{InvalidArgument} when n < 1.
  explicit ForestEnumerator(int n, int cap = kDefaultEnumerationCap);

  std::optional<Forest> next();

 private:
  bool acyclic_choice(Vertex v, Vertex target) const;

  int n_;
  std::vector<Vertex> choice_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Forest> enumerate_forests(int n, int cap = kDefaultEnumerationCap);

/// Every forest with 1..n_max vertices, smallest first.
std::vector<Forest> enumerate_forests_up_to(int n_max, int cap = kDefaultEnumerationCap);

/// Uniform sample from the labeled forests on n vertices (Pruefer code of a
/// tree on n+1 vertices, rooted at the extra vertex).
Forest sample_forest(int n, std::mt19937_64& rng);

}  // namespace progeny
