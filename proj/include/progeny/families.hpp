#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "progeny/forest.hpp"

namespace progeny {

/// A single k-star: centre 0, leaves 1..k-1. A 1-star is an isolated vertex.
struct StarSpec {
  int k = 1;
};

/// One or more chains of stars. Inside a chain each centre points at the
/// centre of the next star; chains are separate trees.
///
/// Labeling: all centres first (chain by chain, in chain order), then the
/// leaves of each star in the same order, then `extras` isolated vertices.
struct StarChainSpec {
  std::vector<std::vector<int>> chains;
  int extras = 0;
};

/// The four-star chain (b, b, a, a) plus isolated extras. Requires b >= 2a >= 2.
struct OverpaySpec {
  int a = 1;
  int b = 2;
  int extras = 0;
};

/// Two n/2-stars; when `connected`, centre 0 points at centre 1.
struct UpperPairSpec {
  int n = 2;
  bool connected = false;
};

using ForestFamilySpec = std::variant<StarSpec, StarChainSpec, OverpaySpec, UpperPairSpec>;

/// Throws Error{InvalidSpec}.
Forest build_family(const ForestFamilySpec& spec);

/// Parses `star:k`, `star-path:s1,s2,...`, `chains:s1,s2;t1,...`,
/// `overpay:a,b`, `upper-pair:n`.
ForestFamilySpec parse_family(std::string_view text, int extras = 0, bool connected = false);

std::string to_string(const ForestFamilySpec& spec);

}  // namespace progeny
