#include "progeny/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <thread>
#include <tuple>

#include "progeny/error.hpp"
#include "progeny/families.hpp"

namespace progeny {

QualityResult quality(const Distribution& dist, const Forest& forest) {
  const ProgenyTable table = progeny_table(forest);
  QualityResult out;
  out.pstar = table.pstar;
  for (Vertex v = 0; v < forest.size(); ++v) out.expected_progeny += dist[v] * table.p(v);
  out.q = out.pstar > 0 ? out.expected_progeny / out.pstar : 0.0;
  return out;
}

QualityResult quality(const MechanismSpec& spec, const Forest& forest) {
  return quality(evaluate(spec, forest), forest);
}

std::string to_string(MassMode mode) {
  switch (mode) {
    case MassMode::Auto: return "auto";
    case MassMode::Exact: return "exact";
    case MassMode::Subdistribution: return "subdistribution";
  }
  return "?";
}

std::string to_string(Check check) {
  switch (check) {
    case Check::IC: return "ic";
    case Check::Mass: return "mass";
    case Check::Quality: return "quality";
    case Check::Fairness: return "fairness";
  }
  return "?";
}

MassMode parse_mass_mode(std::string_view text) {
  if (text == "auto") return MassMode::Auto;
  if (text == "exact") return MassMode::Exact;
  if (text == "subdistribution" || text == "sub") return MassMode::Subdistribution;
  throw Error(Errc::InvalidSpec, "mass mode must be auto, exact or subdistribution");
}

std::vector<Check> parse_checks(std::string_view text) {
  std::vector<Check> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    text.remove_prefix(comma == std::string_view::npos ? text.size() : comma + 1);
    Check c;
    if (item == "ic") c = Check::IC;
    else if (item == "mass") c = Check::Mass;
    else if (item == "quality") c = Check::Quality;
    else if (item == "fairness") c = Check::Fairness;
    else throw Error(Errc::InvalidSpec, "unknown check '" + std::string(item) + "'");
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  if (out.empty()) throw Error(Errc::InvalidSpec, "no checks requested");
  return out;
}

MassMode resolve_mass_mode(const MechanismSpec& spec, MassMode mode) {
  if (mode != MassMode::Auto) return mode;
  return is_exact(spec) ? MassMode::Exact : MassMode::Subdistribution;
}

void AuditReport::record(Violation v) {
  ++violation_count;
  if (violations.size() < kStoredViolations) violations.push_back(std::move(v));
}

double default_quality_bound(const MechanismSpec& spec) {
  if (spec.is<mech::Mf>()) return 1.0 / std::log(16.0);
  if (spec.is<mech::Mb>()) return 1.0 / 3.0;
  return 0.0;
}

namespace {

using Clock = std::chrono::steady_clock;

// Everything the checks need from one forest.
struct ForestEval {
  Distribution dist;
  std::vector<double> detached;  // M(x;F_x) for non-roots, unused for roots
};

class ForestStream {
 public:
  explicit ForestStream(const AuditScope& scope) : scope_(scope) {
    if (scope.forest) return;
    if (scope.n_max < 1) throw Error(Errc::InvalidArgument, "n_max must be at least 1");
    if (scope.n_max > scope.cap) {
      throw Error(Errc::CapExceeded, "n_max=" + std::to_string(scope.n_max) + " exceeds the enumeration cap " +
                                         std::to_string(scope.cap));
    }
  }

  bool next_batch(std::vector<Forest>& out, std::size_t count) {
    out.clear();
    if (scope_.forest) {
      if (!single_done_) out.push_back(*scope_.forest);
      single_done_ = true;
      return !out.empty();
    }
    while (out.size() < count) {
      if (!current_) {
        if (n_ >= scope_.n_max) break;
        current_.emplace(++n_, scope_.cap);
      }
      auto f = current_->next();
      if (!f) {
        current_.reset();
        continue;
      }
      out.push_back(std::move(*f));
    }
    return !out.empty();
  }

 private:
  const AuditScope& scope_;
  bool single_done_ = false;
  int n_ = 0;
  std::optional<ForestEnumerator> current_;
};

ForestEval evaluate_one(Evaluator& eval, const Forest& forest, bool need_detached) {
  ForestEval out;
  out.dist = eval.evaluate(forest);
  if (need_detached) {
    out.detached.assign(static_cast<std::size_t>(forest.size()), 0.0);
    for (Vertex x = 0; x < forest.size(); ++x) {
      if (!forest.is_root(x)) out.detached[static_cast<std::size_t>(x)] = eval.evaluate(forest.without_out_edge(x))[x];
    }
  }
  return out;
}

class Accumulator {
 public:
  Accumulator(Check check, const MechanismSpec& spec, const SweepOptions& options)
      : check_(check), mode_(resolve_mass_mode(spec, options.mass_mode)), bound_(options.bound) {
    report_.kind = to_string(check);
    report_.mechanism = to_string(spec);
    if (check == Check::Mass) report_.parameters = "mode=" + to_string(mode_);
    if (check == Check::Quality) report_.parameters = "bound=" + format_real(bound_);
  }

  void consume(const Forest& forest, const ForestEval& e) {
    ++report_.forests_examined;
    switch (check_) {
      case Check::IC: return ic(forest, e);
      case Check::Mass: return mass(forest, e);
      case Check::Quality: return qual(forest, e);
      case Check::Fairness: return fair(forest, e);
    }
  }

  AuditReport& report() { return report_; }

 private:
  void ic(const Forest& forest, const ForestEval& e) {
    for (Vertex x = 0; x < forest.size(); ++x) {
      if (forest.is_root(x)) continue;
      const double here = e.dist[x];
      const double there = e.detached[static_cast<std::size_t>(x)];
      if (!(std::abs(here - there) <= kAuditTolerance)) {
        report_.record({forest, x, kNone, here, there, "M(x;F) differs from M(x;F_x)"});
      }
    }
  }

  void mass(const Forest& forest, const ForestEval& e) {
    const double tol = mode_ == MassMode::Exact ? kAuditTolerance : kIdentityTolerance;
    if (mode_ == MassMode::Exact) {
      if (!(std::abs(e.dist.total - 1.0) <= tol)) {
        report_.record({forest, kNone, kNone, e.dist.total, 1.0, "total differs from 1"});
      }
    } else if (!(e.dist.total <= 1.0 + tol)) {
      report_.record({forest, kNone, kNone, e.dist.total, 1.0, "total exceeds 1"});
    }
    for (Vertex v = 0; v < forest.size(); ++v) {
      if (!(e.dist[v] >= -tol)) report_.record({forest, v, kNone, e.dist[v], 0.0, "negative probability"});
    }
  }

  void qual(const Forest& forest, const ForestEval& e) {
    const QualityResult q = quality(e.dist, forest);
    if (!report_.extremal || q.q < report_.extremal->q) report_.extremal = Extremal{forest, q.q};
    if (!(q.q >= bound_ - kAuditTolerance)) {
      report_.record({forest, kNone, kNone, q.q, bound_, "quality below bound"});
    }
  }

  void fair(const Forest& forest, const ForestEval& e) {
    const ProgenyTable table = progeny_table(forest);
    const auto& roots = table.roots;
    for (Vertex x : roots) {
      for (Vertex y : roots) {
        if (x == y) continue;
        const double px = e.dist[x];
        const double py = e.dist[y];
        if (table.p(x) > table.p(y) && !(px >= py - kIdentityTolerance)) {
          report_.record({forest, x, y, px, py, "larger root gets less"});
        }
        if (table.p(x) < table.p(y)) continue;
        if (!(px > 0.0 && py > 0.0)) {
          ++report_.undefined_ratios;
          continue;
        }
        const double ratio = px / py;
        const auto key = std::make_tuple(forest.size(), table.p(x), table.p(y));
        const auto [it, inserted] = ratios_.try_emplace(key, ratio);
        if (!inserted && !(std::abs(ratio - it->second) <= kAuditTolerance * std::max(1.0, std::abs(it->second)))) {
          report_.record({forest, x, y, ratio, it->second, "root ratio depends on more than the two progenies"});
        }
      }
    }
  }

  Check check_;
  MassMode mode_;
  double bound_;
  AuditReport report_;
  std::map<std::tuple<int, int, int>, double> ratios_;
};

constexpr std::size_t kBatch = 2048;

std::vector<AuditReport> run(const MechanismSpec& spec, const AuditScope& scope, const SweepOptions& options) {
  const auto start = Clock::now();
  const bool need_detached = std::find(options.checks.begin(), options.checks.end(), Check::IC) != options.checks.end();
  const int jobs = std::max(1, scope.jobs);

  std::vector<Evaluator> evaluators;
  for (int j = 0; j < jobs; ++j) evaluators.emplace_back(spec, scope.options);
  std::vector<Accumulator> accs;
  for (Check c : options.checks) accs.emplace_back(c, spec, options);

  ForestStream stream(scope);
  std::vector<Forest> batch;
  std::vector<ForestEval> results;
  while (stream.next_batch(batch, kBatch * static_cast<std::size_t>(jobs))) {
    results.assign(batch.size(), {});
    if (jobs == 1 || batch.size() == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) results[i] = evaluate_one(evaluators[0], batch[i], need_detached);
    } else {
      // Contiguous chunks; results are merged in forest order below, so the
      // report does not depend on the number of jobs.
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
      const std::size_t chunk = (batch.size() + static_cast<std::size_t>(jobs) - 1) / static_cast<std::size_t>(jobs);
      for (int j = 0; j < jobs; ++j) {
        const std::size_t lo = std::min(batch.size(), chunk * static_cast<std::size_t>(j));
        const std::size_t hi = std::min(batch.size(), lo + chunk);
        threads.emplace_back([&, j, lo, hi] {
          try {
            for (std::size_t i = lo; i < hi; ++i) {
              results[i] = evaluate_one(evaluators[static_cast<std::size_t>(j)], batch[i], need_detached);
            }
          } catch (...) {
            errors[static_cast<std::size_t>(j)] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
      }
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      for (auto& acc : accs) acc.consume(batch[i], results[i]);
    }
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  std::vector<AuditReport> out;
  for (auto& acc : accs) {
    acc.report().elapsed = elapsed;
    out.push_back(std::move(acc.report()));
  }
  return out;
}

AuditReport single(const MechanismSpec& spec, const AuditScope& scope, Check check, double bound = 0.0,
                   MassMode mode = MassMode::Auto) {
  SweepOptions options;
  options.checks = {check};
  options.bound = bound;
  options.mass_mode = mode;
  return std::move(run(spec, scope, options).front());
}

}  // namespace

AuditReport audit_ic(const MechanismSpec& spec, const AuditScope& scope) { return single(spec, scope, Check::IC); }

AuditReport audit_mass(const MechanismSpec& spec, const AuditScope& scope, MassMode mode) {
  return single(spec, scope, Check::Mass, 0.0, mode);
}

AuditReport audit_quality(const MechanismSpec& spec, const AuditScope& scope, double bound) {
  return single(spec, scope, Check::Quality, bound);
}

AuditReport audit_fairness(const MechanismSpec& spec, const AuditScope& scope) {
  return single(spec, scope, Check::Fairness);
}

std::vector<AuditReport> sweep(const std::vector<MechanismSpec>& specs, const AuditScope& scope,
                               const SweepOptions& options) {
  if (options.checks.empty()) throw Error(Errc::InvalidSpec, "no checks requested");
  std::vector<AuditReport> out;
  for (const auto& spec : specs) {
    auto reports = run(spec, scope, options);
    for (auto& r : reports) out.push_back(std::move(r));
  }
  return out;
}

ProportionalityProbe probe_proportionality(const MechanismSpec& spec, int k, int n) {
  if (k < 2 || n < 3 * k - 2) {
    throw Error(Errc::InvalidArgument, "the probe needs k >= 2 and n >= 3k-2 (k=" + std::to_string(k) +
                                           ", n=" + std::to_string(n) + ")");
  }
  ProportionalityProbe out;
  out.k = k;
  out.n = n;
  out.one_small = build_family(StarChainSpec{{{k}, {k - 1}}, n - (2 * k - 1)});
  out.two_small = build_family(StarChainSpec{{{k}, {k - 1}, {k - 1}}, n - (3 * k - 2)});
  Evaluator eval(spec);
  // Centres come first: the k-star centre is 0, the first (k-1)-star centre is 1.
  const auto ratio = [&eval](const Forest& f) {
    const double big = eval.probability(f, 0);
    const double small = eval.probability(f, 1);
    return small == 0.0 ? std::nan("") : big / small;
  };
  out.ratio_one = ratio(out.one_small);
  out.ratio_two = ratio(out.two_small);
  out.change = out.ratio_two - out.ratio_one;
  return out;
}

UpperBoundReport demo_upper_bound(const MechanismSpec& spec, int n) {
  if (n < 4 || n % 2 != 0) throw Error(Errc::InvalidArgument, "upper-bound demo needs an even n >= 4");
  UpperBoundReport out;
  out.n = n;
  out.apart = build_family(UpperPairSpec{n, false});
  out.joined = build_family(UpperPairSpec{n, true});
  Evaluator eval(spec);
  out.q_apart = quality(eval.evaluate(out.apart), out.apart).q;
  out.q_joined = quality(eval.evaluate(out.joined), out.joined).q;
  out.min_q = std::min(out.q_apart, out.q_joined);
  return out;
}

bool OverdistributionReport::hypotheses_hold() const noexcept {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
}

OverdistributionReport demo_overdistribution(const GeneratorTable& f, int a, int b, int extras, double delta) {
  const Forest full = build_family(OverpaySpec{a, b, extras});
  OverdistributionReport out;
  out.a = a;
  out.b = b;
  out.extras = extras;
  out.n = full.size();
  out.delta = delta;
  if (f.size() < out.n) {
    throw Error(Errc::InvalidArgument, "generator '" + f.label() + "' covers 1.." + std::to_string(f.size()) +
                                           ", the forest needs 1.." + std::to_string(out.n));
  }
  out.k = f(b) / f(2 * a);
  out.m = f(a + b) / f(2 * a);
  out.hypotheses = {
      {1, "b >= 2a", static_cast<double>(b), 2.0 * a, b >= 2 * a},
      {2, "n f(1)/f(b) <= delta", out.n * f(1) / f(b), delta, out.n * f(1) / f(b) <= delta},
      {3, "m >= 7k^2", out.m, 7.0 * out.k * out.k, out.m >= 7.0 * out.k * out.k},
      {4, "f(a)/f(2a) <= delta", f(a) / f(2 * a), delta, f(a) / f(2 * a) <= delta},
  };
  out.lemma_bound = 1.0 + 1.0 / (48.0 * out.k);

  // Centres x1..x4 are vertices 0..3; chain edges are x1->x2->x3->x4.
  struct Variant {
    const char* name;
    bool e12, e23, e34;
  };
  const Variant variants[] = {{"F1", false, false, false}, {"F2", true, false, false}, {"F3", false, false, true},
                              {"F4", true, false, true},   {"F5", false, true, false},  {"F6", true, true, false},
                              {"F", true, true, true}};
  Evaluator eval(make_function_generated(f));
  for (const auto& v : variants) {
    Forest g = full;
    if (!v.e12) g = g.without_out_edge(0);
    if (!v.e23) g = g.without_out_edge(1);
    if (!v.e34) g = g.without_out_edge(2);
    SubforestValues s;
    s.name = v.name;
    for (Vertex x = 0; x < 4; ++x) s.x[x] = eval.probability(g, x);
    s.forest = std::move(g);
    out.subforests.push_back(std::move(s));
  }
  out.nonroot_mass = eval.nonroot_mass(full);
  return out;
}

void require_hypotheses(const OverdistributionReport& report) {
  for (const auto& h : report.hypotheses) {
    if (!h.holds) {
      throw Error(Errc::HypothesisUnmet, "property (" + std::to_string(h.index) + ") " + h.statement +
                                             " fails: " + format_real(h.value) + " vs " + format_real(h.threshold));
    }
  }
}

namespace {

std::string forest_json(const Forest& f) {
  std::string out = "[";
  for (Vertex v = 0; v < f.size(); ++v) {
    if (v) out += ',';
    out += f.is_root(v) ? "null" : std::to_string(f.parent(v));
  }
  return out + "]";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string vertex_json(Vertex v) { return v == kNone ? "null" : std::to_string(v); }

}  // namespace

std::string to_json(const AuditReport& r, bool include_timing) {
  std::string out = "{\"kind\":" + quoted(r.kind) + ",\"mechanism\":" + quoted(r.mechanism);
  if (!r.parameters.empty()) out += ",\"parameters\":" + quoted(r.parameters);
  out += ",\"passed\":";
  out += r.passed() ? "true" : "false";
  out += ",\"forests_examined\":" + std::to_string(r.forests_examined);
  out += ",\"violation_count\":" + std::to_string(r.violation_count);
  out += ",\"violations\":[";
  for (std::size_t i = 0; i < r.violations.size(); ++i) {
    const auto& v = r.violations[i];
    if (i) out += ',';
    out += "{\"forest\":" + forest_json(v.forest) + ",\"vertex\":" + vertex_json(v.vertex) +
           ",\"other\":" + vertex_json(v.other) + ",\"observed\":" + format_real(v.observed) +
           ",\"bound\":" + format_real(v.bound) + ",\"detail\":" + quoted(v.detail) + "}";
  }
  out += "]";
  if (r.extremal) {
    out += ",\"extremal\":{\"forest\":" + forest_json(r.extremal->forest) + ",\"q\":" + format_real(r.extremal->q) + "}";
  }
  if (r.kind == "fairness") out += ",\"undefined_ratios\":" + std::to_string(r.undefined_ratios);
  if (include_timing) out += ",\"elapsed_s\":" + format_real(std::chrono::duration<double>(r.elapsed).count());
  return out + "}";
}

std::string to_text(const std::vector<AuditReport>& reports, bool include_timing) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line, "%-10s %-16s %-24s %-6s %10s %10s %14s%s\n", "check", "mechanism", "parameters",
                "result", "forests", "violations", "worst q", include_timing ? "  elapsed" : "");
  out += line;
  for (const auto& r : reports) {
    std::string worst = r.extremal ? format_real(r.extremal->q).substr(0, 12) : "-";
    std::snprintf(line, sizeof line, "%-10s %-16s %-24s %-6s %10llu %10llu %14s", r.kind.c_str(), r.mechanism.c_str(),
                  r.parameters.empty() ? "-" : r.parameters.c_str(), r.passed() ? "pass" : "FAIL",
                  static_cast<unsigned long long>(r.forests_examined),
                  static_cast<unsigned long long>(r.violation_count), worst.c_str());
    out += line;
    if (include_timing) {
      std::snprintf(line, sizeof line, "  %7.3fs", std::chrono::duration<double>(r.elapsed).count());
      out += line;
    }
    out += '\n';
  }
  for (const auto& r : reports) {
    for (const auto& v : r.violations) {
      out += "  " + r.kind + " witness: forest=" + forest_json(v.forest);
      if (v.vertex != kNone) out += " vertex=" + std::to_string(v.vertex);
      if (v.other != kNone) out += " other=" + std::to_string(v.other);
      out += " observed=" + format_real(v.observed) + " bound=" + format_real(v.bound) + " (" + v.detail + ")\n";
    }
    if (r.violation_count > r.violations.size()) {
      out += "  ... " + std::to_string(r.violation_count - r.violations.size()) + " more " + r.kind + " violations\n";
    }
  }
  return out;
}

std::string to_json(const QualityResult& q) {
  return "{\"expected_progeny\":" + format_real(q.expected_progeny) + ",\"pstar\":" + std::to_string(q.pstar) +
         ",\"q\":" + format_real(q.q) + "}";
}

std::string to_json(const UpperBoundReport& r) {
  return "{\"n\":" + std::to_string(r.n) + ",\"q_apart\":" + format_real(r.q_apart) +
         ",\"q_joined\":" + format_real(r.q_joined) + ",\"min_q\":" + format_real(r.min_q) +
         ",\"bound\":" + format_real(r.bound) + ",\"passed\":" + (r.passed() ? "true" : "false") + "}";
}

std::string to_json(const OverdistributionReport& r) {
  std::string out = "{\"a\":" + std::to_string(r.a) + ",\"b\":" + std::to_string(r.b) +
                    ",\"extras\":" + std::to_string(r.extras) + ",\"n\":" + std::to_string(r.n) +
                    ",\"k\":" + format_real(r.k) + ",\"m\":" + format_real(r.m) + ",\"delta\":" + format_real(r.delta) +
                    ",\"hypotheses\":[";
  for (std::size_t i = 0; i < r.hypotheses.size(); ++i) {
    const auto& h = r.hypotheses[i];
    if (i) out += ',';
    out += "{\"index\":" + std::to_string(h.index) + ",\"statement\":" + quoted(h.statement) +
           ",\"value\":" + format_real(h.value) + ",\"threshold\":" + format_real(h.threshold) +
           ",\"holds\":" + (h.holds ? "true" : "false") + "}";
  }
  out += "],\"subforests\":[";
  for (std::size_t i = 0; i < r.subforests.size(); ++i) {
    const auto& s = r.subforests[i];
    if (i) out += ',';
    out += "{\"name\":" + quoted(s.name) + ",\"x\":[" + format_real(s.x[0]) + "," + format_real(s.x[1]) + "," +
           format_real(s.x[2]) + "," + format_real(s.x[3]) + "]}";
  }
  out += "],\"nonroot_mass\":" + format_real(r.nonroot_mass) + ",\"lemma_bound\":" + format_real(r.lemma_bound) +
         ",\"hypotheses_hold\":" + (r.hypotheses_hold() ? "true" : "false") +
         ",\"overdistributes\":" + (r.overdistributes() ? "true" : "false") + "}";
  return out;
}

}  // namespace progeny
