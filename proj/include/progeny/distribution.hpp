#pragma once

#include <string>
#include <vector>

#include "progeny/forest.hpp"

namespace progeny {

/// Tolerance for audits and for the validity flag.
inline constexpr double kAuditTolerance = 1e-9;
/// Tolerance for identities between two routes to the same number.
inline constexpr double kIdentityTolerance = 1e-12;

/// Selection probabilities of one mechanism on one forest. The remainder
/// 1 - total is the probability that nobody is selected.
struct Distribution {
  std::vector<double> probs;
  double total = 0.0;
  double nonroot_mass = 0.0;
  bool valid = true;

  double operator[](Vertex v) const { return probs[static_cast<std::size_t>(v)]; }
  int size() const noexcept { return static_cast<int>(probs.size()); }
};

/// Fills in total, nonroot_mass and the validity flag.
Distribution make_distribution(const Forest& forest, std::vector<double> probs,
                               double tolerance = kAuditTolerance);

/// {"probs":[...],"total":t,"valid":b} with 17 significant digits.
std::string to_json(const Distribution& dist);

/// %.17g formatting shared by the JSON emitters.
std::string format_real(double value);

}  // namespace progeny
