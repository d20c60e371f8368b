#include "progeny/distribution.hpp"

#include <cmath>
#include <cstdio>

namespace progeny {

Distribution make_distribution(const Forest& forest, std::vector<double> probs, double tolerance) {
  Distribution d;
  d.probs = std::move(probs);
  bool nonnegative = true;
  for (Vertex v = 0; v < d.size(); ++v) {
    const double p = d[v];
    d.total += p;
    if (!forest.is_root(v)) d.nonroot_mass += p;
    if (!(p >= -tolerance)) nonnegative = false;
  }
  d.valid = nonnegative && d.total <= 1.0 + tolerance;
  return d;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "null";
  if (std::isinf(value)) return value > 0 ? "1e999" : "-1e999";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_json(const Distribution& dist) {
  std::string out = "{\"probs\":[";
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    if (i) out += ',';
    out += format_real(dist.probs[i]);
  }
  out += "],\"total\":" + format_real(dist.total);
  out += ",\"valid\":";
  out += dist.valid ? "true" : "false";
  out += '}';
  return out;
}

}  // namespace progeny
