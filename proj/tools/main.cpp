#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "progeny/error.hpp"

using namespace progeny::cli;

namespace {

int exit_code_for(progeny::Errc code) {
  switch (code) {
    case progeny::Errc::NumericalOverflow:
    case progeny::Errc::DegenerateInterval:
    case progeny::Errc::ZeroDenominator:
      return kNumeric;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incentive-compatible selection mechanisms on directed forests"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a mechanism on a forest");
  eval_cmd->add_option("mechanism", eval.mechanism, "mf, mb, meps:<eps>, fg:<table>, mprime, uniform, empty, sym:<inner>")
      ->required();
  eval_cmd->add_option("forest", eval.forest, "Forest file, or - for stdin")->required();
  eval_cmd->add_option("--format", eval.format)->check(CLI::IsMember({"json", "table"}));

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Check a mechanism on every small forest");
  audit_cmd->add_option("mechanism", audit.mechanism)->required();
  audit_cmd->add_option("--max-n", audit.max_n, "Largest forest size (default 6, or 5 for sym:)")
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--forest", audit.forest, "Audit a single forest file instead");
  audit_cmd->add_option("--checks", audit.checks, "Comma list of ic, mass, quality, fairness");
  auto* bound_opt = audit_cmd->add_option("--bound", audit.bound, "Quality lower bound");
  audit_cmd->add_option("--mass-mode", audit.mass_mode)->check(CLI::IsMember({"auto", "exact", "subdistribution"}));
  audit_cmd->add_option("--jobs", audit.jobs)->check(CLI::PositiveNumber);
  audit_cmd->add_option("--format", audit.format)->check(CLI::IsMember({"json", "text"}));
  audit_cmd->add_flag("--timing", audit.timing, "Include elapsed time in JSON output");

  EnumerateArgs enumerate;
  auto* enum_cmd = app.add_subcommand("enumerate", "List every labeled forest on n vertices");
  enum_cmd->add_option("n", enumerate.n)->required()->check(CLI::PositiveNumber);
  enum_cmd->add_flag("--count", enumerate.count, "Print only the number of forests");
  enum_cmd->add_flag("--unlabeled", enumerate.unlabeled, "One forest per isomorphism class");

  FamilyArgs family;
  auto* family_cmd = app.add_subcommand("family", "Build a named forest family");
  family_cmd->add_option("spec", family.spec, "star:k, star-path:s1,s2,..., chains:..;.., overpay:a,b, upper-pair:n")
      ->required();
  family_cmd->add_option("--extras", family.extras, "Isolated vertices to append")->check(CLI::NonNegativeNumber);
  family_cmd->add_flag("--connected", family.connected, "upper-pair: join the two centres");
  family_cmd->add_option("--format", family.format)->check(CLI::IsMember({"json", "text"}));

  ExamplesArgs examples;
  auto* examples_cmd = app.add_subcommand("examples", "Recompute the worked examples against closed forms");
  examples_cmd->add_option("--format", examples.format)->check(CLI::IsMember({"json", "text"}));

  DemoArgs demo;
  auto* demo_cmd = app.add_subcommand("demo", "Run the upper-bound or over-distribution demonstration");
  demo_cmd->add_option("kind", demo.kind)->required()->check(CLI::IsMember({"upper-bound", "impossibility"}));
  demo_cmd->add_option("--mech", demo.mechanism, "upper-bound: comma list of mechanisms");
  demo_cmd->add_option("--n", demo.n, "upper-bound: even forest size");
  demo_cmd->add_option("--f", demo.generator, "impossibility: generator name or table file");
  demo_cmd->add_option("--a", demo.a);
  demo_cmd->add_option("--b", demo.b);
  demo_cmd->add_option("--extras", demo.extras)->check(CLI::NonNegativeNumber);
  demo_cmd->add_option("--delta", demo.delta, "Slack for the asymptotic hypotheses");
  demo_cmd->add_option("--format", demo.format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*audit_cmd) {
      audit.bound_set = bound_opt->count() > 0;
      return run_audit(audit);
    }
    if (*enum_cmd) return run_enumerate(enumerate);
    if (*family_cmd) return run_family(family);
    if (*examples_cmd) return run_examples(examples);
    if (*demo_cmd) return run_demo(demo);
  } catch (const progeny::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
