#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "progeny/distribution.hpp"
#include "progeny/enumerate.hpp"
#include "progeny/forest.hpp"
#include "progeny/mechanism_spec.hpp"
#include "progeny/mechanisms.hpp"

namespace progeny {

struct QualityResult {
  double expected_progeny = 0.0;
  int pstar = 0;
  double q = 0.0;
};

/// Expected progeny of the selected vertex over P*. Mass left unselected
/// contributes nothing.
QualityResult quality(const Distribution& dist, const Forest& forest);
QualityResult quality(const MechanismSpec& spec, const Forest& forest);

enum class MassMode { Auto, Exact, Subdistribution };
enum class Check { IC, Mass, Quality, Fairness };

std::string to_string(MassMode mode);
std::string to_string(Check check);
/// Throws Error{InvalidSpec}.
MassMode parse_mass_mode(std::string_view text);
std::vector<Check> parse_checks(std::string_view text);

/// Exact for mechanisms that promise total 1, sub-distribution otherwise.
MassMode resolve_mass_mode(const MechanismSpec& spec, MassMode mode);

struct Violation {
  Forest forest;
  Vertex vertex = kNone;
  Vertex other = kNone;
  double observed = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct Extremal {
  Forest forest;
  double q = 0.0;
};

inline constexpr std::size_t kStoredViolations = 64;

/// Outcome of one audit over a set of forests. Only the first
/// kStoredViolations witnesses are kept; violation_count counts all of them.
struct AuditReport {
  std::string kind;
  std::string mechanism;
  std::string parameters;
  std::uint64_t forests_examined = 0;
  std::vector<Violation> violations;
  std::uint64_t violation_count = 0;
  std::optional<Extremal> extremal;
  std::uint64_t undefined_ratios = 0;
  std::chrono::nanoseconds elapsed{0};

  bool passed() const noexcept { return violation_count == 0; }
  void record(Violation v);
};

/// Which forests an audit looks at: every labeled forest with 1..n_max
/// vertices, or a single given forest.
struct AuditScope {
  int n_max = 6;
  std::optional<Forest> forest;
  int jobs = 1;
  int cap = kDefaultEnumerationCap;
  EvaluatorOptions options;
};

struct SweepOptions {
  std::vector<Check> checks{Check::IC, Check::Mass, Check::Quality, Check::Fairness};
  double bound = 0.0;
  MassMode mass_mode = MassMode::Auto;
};

/// M(x;F) = M(x;F_x) for every non-root x, within kAuditTolerance.
AuditReport audit_ic(const MechanismSpec& spec, const AuditScope& scope);

/// Exact: |total - 1| <= 1e-9 and probabilities >= -1e-9.
/// Sub-distribution: total <= 1 + 1e-12 and probabilities >= -1e-12.
AuditReport audit_mass(const MechanismSpec& spec, const AuditScope& scope, MassMode mode = MassMode::Auto);

/// q >= bound - 1e-9 on every forest; records the forest with the least q.
AuditReport audit_quality(const MechanismSpec& spec, const AuditScope& scope, double bound);

/// Root monotonicity plus proportionality: for a fixed n, the ratio of two
/// root probabilities may depend only on the two progenies. Pairs with a
/// zero probability are counted as undefined ratios.
AuditReport audit_fairness(const MechanismSpec& spec, const AuditScope& scope);

/// Runs the requested checks for each mechanism, evaluating every forest once
/// per mechanism. Reports come back mechanism by mechanism in check order.
std::vector<AuditReport> sweep(const std::vector<MechanismSpec>& specs, const AuditScope& scope,
                               const SweepOptions& options);

/// Default quality bound used by the CLI: 1/ln 16 for mf, 1/3 for mb, else 0.
double default_quality_bound(const MechanismSpec& spec);

struct ProportionalityProbe {
  int k = 0;
  int n = 0;
  Forest one_small;  // k-star, (k-1)-star, isolated vertices
  Forest two_small;  // k-star, two (k-1)-stars, isolated vertices
  double ratio_one = 0.0;
  double ratio_two = 0.0;
  double change = 0.0;
};

/// Ratio of the k-star centre to a (k-1)-star centre in the two forests.
/// Throws Error{InvalidArgument} unless k >= 2 and n >= 3k - 2.
ProportionalityProbe probe_proportionality(const MechanismSpec& spec, int k, int n);

struct UpperBoundReport {
  int n = 0;
  Forest apart;
  Forest joined;
  double q_apart = 0.0;
  double q_joined = 0.0;
  double min_q = 0.0;
  double bound = 0.8;
  bool passed() const noexcept { return min_q <= bound + kAuditTolerance; }
};

/// Two n/2-stars, apart and with one centre pointing at the other.
/// Throws Error{InvalidArgument} unless n is even and at least 4.
UpperBoundReport demo_upper_bound(const MechanismSpec& spec, int n);

struct Hypothesis {
  int index = 0;
  std::string statement;
  double value = 0.0;
  double threshold = 0.0;
  bool holds = false;
};

struct SubforestValues {
  std::string name;
  Forest forest;
  double x[4] = {0, 0, 0, 0};
};

struct OverdistributionReport {
  int a = 0;
  int b = 0;
  int extras = 0;
  int n = 0;
  double k = 0.0;
  double m = 0.0;
  double delta = 0.0;
  std::vector<Hypothesis> hypotheses;
  std::vector<SubforestValues> subforests;
  double nonroot_mass = 0.0;
  double lemma_bound = 0.0;

  bool hypotheses_hold() const noexcept;
  bool overdistributes() const noexcept { return nonroot_mass > 1.0; }
};

inline constexpr double kHypothesisSlack = 1e-2;

/// Star chain (b, b, a, a) plus isolated extras under the mechanism generated
/// by f. The asymptotic hypotheses are checked at this n with slack `delta`:
/// n f(1)/f(b) <= delta and f(a)/f(2a) <= delta.
/// Throws Error{InvalidSpec} if b < 2a or a < 1.
OverdistributionReport demo_overdistribution(const GeneratorTable& f, int a, int b, int extras,
                                             double delta = kHypothesisSlack);

/// Throws Error{HypothesisUnmet} naming the first property that fails.
void require_hypotheses(const OverdistributionReport& report);

std::string to_json(const AuditReport& report, bool include_timing = false);
std::string to_text(const std::vector<AuditReport>& reports, bool include_timing = true);
std::string to_json(const QualityResult& q);
std::string to_json(const UpperBoundReport& report);
std::string to_json(const OverdistributionReport& report);

}  // namespace progeny
