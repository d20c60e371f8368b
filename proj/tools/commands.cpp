#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>

#include "progeny/canonical.hpp"
#include "progeny/enumerate.hpp"
#include "progeny/error.hpp"
#include "progeny/families.hpp"
#include "progeny/forest_io.hpp"
#include "progeny/mechanisms.hpp"
#include "progeny/verify.hpp"

namespace progeny::cli {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void print_distribution_table(const Forest& forest, const Distribution& d, const QualityResult& q) {
  const ProgenyTable table = progeny_table(forest);
  std::printf("%6s %6s %8s %20s\n", "vertex", "parent", "progeny", "probability");
  for (Vertex v = 0; v < forest.size(); ++v) {
    const std::string parent = forest.is_root(v) ? "-" : std::to_string(forest.parent(v));
    std::printf("%6d %6s %8d %20.12f\n", v, parent.c_str(), table.p(v), d[v]);
  }
  std::printf("total         %.12f\n", d.total);
  std::printf("nonroot mass  %.12f\n", d.nonroot_mass);
  std::printf("valid         %s\n", d.valid ? "yes" : "no");
  std::printf("quality       %.12f  (E[P] = %.12f, P* = %d)\n", q.q, q.expected_progeny, q.pstar);
}

}  // namespace

int run_eval(const EvalArgs& args) {
  const MechanismSpec spec = parse_mechanism(args.mechanism);
  const Forest forest = read_forest_file(args.forest);
  const Distribution d = evaluate(spec, forest);
  const QualityResult q = quality(d, forest);
  if (args.format == "json") {
    std::cout << "{\"mechanism\":" << quoted(to_string(spec)) << ",\"n\":" << forest.size()
              << ",\"distribution\":" << to_json(d) << ",\"quality\":" << to_json(q) << "}\n";
  } else {
    std::printf("mechanism %s on %d vertices\n", to_string(spec).c_str(), forest.size());
    print_distribution_table(forest, d, q);
  }
  return kPass;
}

int run_audit(const AuditArgs& args) {
  const MechanismSpec spec = parse_mechanism(args.mechanism);
  AuditScope scope;
  scope.cap = enumeration_cap_from_env();
  scope.jobs = args.jobs;
  scope.n_max = args.max_n > 0 ? args.max_n : (spec.is<mech::Symmetrized>() ? 5 : 6);
  if (!args.forest.empty()) scope.forest = read_forest_file(args.forest);

  SweepOptions options;
  options.checks = parse_checks(args.checks);
  options.bound = args.bound_set ? args.bound : default_quality_bound(spec);
  options.mass_mode = parse_mass_mode(args.mass_mode);

  const auto reports = sweep({spec}, scope, options);
  bool passed = true;
  for (const auto& r : reports) passed = passed && r.passed();

  if (args.format == "json") {
    std::string out = "{\"passed\":";
    out += passed ? "true" : "false";
    out += ",\"reports\":[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) out += ',';
      out += to_json(reports[i], args.timing);
    }
    std::cout << out << "]}\n";
  } else {
    std::cout << to_text(reports, true);
  }
  return passed ? kPass : kViolation;
}

int run_enumerate(const EnumerateArgs& args) {
  ForestEnumerator forests(args.n, enumeration_cap_from_env());
  std::set<std::string> seen;
  std::uint64_t count = 0;
  while (auto f = forests.next()) {
    if (args.unlabeled && !seen.insert(canonical_code(*f).code).second) continue;
    ++count;
    if (!args.count) std::cout << emit_forest(*f) << '\n';
  }
  if (args.count) std::cout << count << '\n';
  return kPass;
}

int run_family(const FamilyArgs& args) {
  const Forest forest = build_family(parse_family(args.spec, args.extras, args.connected));
  std::cout << emit_forest(forest, args.format == "json" ? ForestFormat::Json : ForestFormat::Text);
  if (args.format == "json") std::cout << '\n';
  return kPass;
}

namespace {

struct Golden {
  std::string example;
  std::string quantity;
  double computed;
  double expected;
};

double lg(double x) { return std::log2(x); }

std::vector<Golden> golden_values() {
  std::vector<Golden> out;
  // Candidate chain: a 4-star a -> 2-star b -> c1 -> c2 -> c3 -> c4, plus a 5-star d.
  {
    const Forest f = build_family(parse_family("chains:4,2,1,1,1,1;5"));
    const Distribution d = evaluate(make_mf(), f);
    out.push_back({"chain-15", "mf(a)", d[0], 0.0});
    out.push_back({"chain-15", "mf(b)", d[1], 0.5});
    for (int i = 1; i <= 4; ++i) {
      out.push_back({"chain-15", "mf(c" + std::to_string(i) + ")", d[1 + i], 0.5 * lg((6.0 + i) / (5.0 + i))});
    }
    out.push_back({"chain-15", "mf(d)", d[6], 0.0});
    out.push_back({"chain-15", "mf total", d.total, 0.5 + 0.5 * lg(10.0 / 6.0)});
  }
  // Path of stars a(4) -> b(3) -> c(2) -> d(1).
  {
    const Forest f = build_family(parse_family("chains:4,3,2,1"));
    const Distribution d = evaluate(make_mf(), f);
    out.push_back({"stars-10", "mf(a)", d[0], 0.0});
    out.push_back({"stars-10", "mf(b)", d[1], 0.5 * lg(7.0 / 4.0)});
    out.push_back({"stars-10", "mf(c)", d[2], 0.5 * lg(9.0 / 7.0)});
    out.push_back({"stars-10", "mf(d)", d[3], 0.5 * lg(10.0 / 9.0)});
    out.push_back({"stars-10", "mf total", d.total, 0.5 * lg(10.0 / 4.0)});
  }
  // Three trees with top progenies 10, 9 and 8.
  {
    const Forest f = build_family(parse_family("chains:2,4,2,2;1,3,3,2;8"));
    const Distribution mb = evaluate(make_mb(), f);
    const Distribution mp = interval_share(f);
    const double a1 = lg(6.0 / 4.5) / 3.0;
    out.push_back({"trees-27", "mb(a1)", mb[1], a1});
    out.push_back({"trees-27", "mb(c1)", mb[8], lg(8.0 / 5.0) / 3.0});
    out.push_back({"trees-27", "mb(b2)", mb[7], lg(8.0 / 7.0) / 3.0 + 0.5 * lg(9.0 / 8.0)});
    out.push_back({"trees-27", "mb(a3)", mb[3], 0.5 * lg(9.0 / 8.0) + lg(10.0 / 9.0) - a1 + lg(6.0 / 5.0) / 3.0});
    out.push_back({"trees-27", "mb total", mb.total, 1.0});
    out.push_back({"trees-27", "mprime(a1)", mp[1], lg(6.0 / 5.0) / 3.0});
    out.push_back({"trees-27", "mprime(a2)", mp[2], lg(8.0 / 6.0) / 3.0});
    out.push_back({"trees-27", "mprime(a3)", mp[3], 0.5 * lg(9.0 / 8.0) + lg(10.0 / 9.0)});
    out.push_back({"trees-27", "mprime(b1)", mp[6], lg(7.0 / 5.0) / 3.0});
    out.push_back({"trees-27", "mprime(b2)", mp[7], lg(8.0 / 7.0) / 3.0 + 0.5 * lg(9.0 / 8.0)});
    out.push_back({"trees-27", "mprime(c1)", mp[8], lg(8.0 / 5.0) / 3.0});
    out.push_back({"trees-27", "mprime total", mp.total, 1.0});
  }
  return out;
}

}  // namespace

int run_examples(const ExamplesArgs& args) {
  const auto rows = golden_values();
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, std::abs(r.computed - r.expected));
  const bool passed = worst <= kAuditTolerance;
  if (args.format == "json") {
    std::string out = "{\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) out += ',';
      out += "{\"example\":" + quoted(rows[i].example) + ",\"quantity\":" + quoted(rows[i].quantity) +
             ",\"computed\":" + format_real(rows[i].computed) + ",\"expected\":" + format_real(rows[i].expected) + "}";
    }
    out += "],\"max_deviation\":" + format_real(worst) + ",\"passed\":" + (passed ? "true" : "false") + "}";
    std::cout << out << '\n';
  } else {
    std::printf("%-10s %-14s %18s %18s %10s\n", "forest", "quantity", "computed", "closed form", "|diff|");
    for (const auto& r : rows) {
      std::printf("%-10s %-14s %18.12f %18.12f %10.2e\n", r.example.c_str(), r.quantity.c_str(), r.computed,
                  r.expected, std::abs(r.computed - r.expected));
    }
    std::printf("max deviation %.3e (%s)\n", worst, passed ? "pass" : "FAIL");
  }
  return passed ? kPass : kViolation;
}

int run_demo(const DemoArgs& args) {
  if (args.kind == "upper-bound") {
    std::vector<UpperBoundReport> reports;
    std::vector<std::string> names;
    std::string list = args.mechanism;
    while (!list.empty()) {
      const auto comma = list.find(',');
      const std::string name = list.substr(0, comma);
      list = comma == std::string::npos ? "" : list.substr(comma + 1);
      const MechanismSpec spec = parse_mechanism(name);
      names.push_back(to_string(spec));
      reports.push_back(demo_upper_bound(spec, args.n));
    }
    bool passed = true;
    for (const auto& r : reports) passed = passed && r.passed();
    if (args.format == "json") {
      std::string out = "{\"passed\":" + std::string(passed ? "true" : "false") + ",\"reports\":[";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out += ',';
        out += "{\"mechanism\":" + quoted(names[i]) + ",\"result\":" + to_json(reports[i]) + "}";
      }
      std::cout << out << "]}\n";
    } else {
      std::printf("two %d-stars, apart and with one centre pointing at the other\n", args.n / 2);
      std::printf("%-12s %12s %12s %12s %8s\n", "mechanism", "q(apart)", "q(joined)", "min", "<= 4/5");
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::printf("%-12s %12.9f %12.9f %12.9f %8s\n", names[i].c_str(), r.q_apart, r.q_joined, r.min_q,
                    r.passed() ? "yes" : "NO");
      }
    }
    return passed ? kPass : kViolation;
  }

  const GeneratorTable f = load_generator(args.generator);
  const OverdistributionReport r = demo_overdistribution(f, args.a, args.b, args.extras, args.delta);
  const bool demonstrated = r.hypotheses_hold() && r.overdistributes();
  const bool contradicted = r.hypotheses_hold() && !r.overdistributes();
  if (args.format == "json") {
    std::cout << to_json(r) << '\n';
  } else {
    std::printf("star chain (b, b, a, a) with a=%d, b=%d, %d isolated extras: n=%d, generator %s\n", r.a, r.b,
                r.extras, r.n, f.label().c_str());
    std::printf("k = f(b)/f(2a) = %.12g\nm = f(a+b)/f(2a) = %.12g\n", r.k, r.m);
    for (const auto& h : r.hypotheses) {
      std::printf("  (%d) %-22s value %-14.6g threshold %-14.6g %s\n", h.index, h.statement.c_str(), h.value,
                  h.threshold, h.holds ? "holds" : "fails");
    }
    std::printf("%-4s %16s %16s %16s %16s\n", "", "M(x1)", "M(x2)", "M(x3)", "M(x4)");
    for (const auto& s : r.subforests) {
      std::printf("%-4s %16.10f %16.10f %16.10f %16.10f\n", s.name.c_str(), s.x[0], s.x[1], s.x[2], s.x[3]);
    }
    std::printf("non-root mass on F   %.15f\n", r.nonroot_mass);
    std::printf("asymptotic bound     %.15f  (1 + 1/(48k))\n", r.lemma_bound);
    if (demonstrated) {
      std::printf("over-distribution demonstrated: IC forces more than probability 1 onto non-roots\n");
    } else if (contradicted) {
      std::printf("hypotheses hold but the non-root mass does not exceed 1\n");
    } else {
      std::printf("hypotheses not met at this n; no verdict\n");
    }
  }
  return contradicted ? kViolation : kPass;
}

}  // namespace progeny::cli
