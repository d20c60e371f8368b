#include "progeny/integral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "progeny/error.hpp"

namespace progeny {

double piecewise_integral(double lo, double hi, std::span<const int> root_progenies) {
  if (!(lo > 0.0) || !(lo <= hi)) {
    throw Error(Errc::InvalidArgument,
                "integral bounds must satisfy 0 < lo <= hi (lo=" + std::to_string(lo) + ", hi=" + std::to_string(hi) + ")");
  }
  if (lo == hi) return 0.0;

  std::vector<int> sorted(root_progenies.begin(), root_progenies.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> cuts{lo};
  for (int p : sorted) {
    if (p > lo && p < hi && static_cast<double>(p) != cuts.back()) cuts.push_back(p);
  }
  cuts.push_back(hi);

  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    // u is constant on (z0, z1] and equals #{p >= z1}.
    const double z0 = cuts[j];
    const double z1 = cuts[j + 1];
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), z1,
                                        [](int p, double z) { return static_cast<double>(p) < z; });
    const auto u = static_cast<double>(sorted.end() - first);
    if (u == 0.0) {
      throw Error(Errc::DegenerateInterval, "no root reaches progeny " + std::to_string(z1));
    }
    sum += std::log2(z1 / z0) / u;
  }
  return sum;
}

}  // namespace progeny
