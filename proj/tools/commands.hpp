#pragma once

#include <string>
#include <vector>

namespace progeny::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2, kNumeric = 3 };

struct EvalArgs {
  std::string mechanism;
  std::string forest;
  std::string format = "table";
};

struct AuditArgs {
  std::string mechanism;
  int max_n = 0;  // 0: 5 for symmetrized mechanisms, 6 otherwise
  std::string forest;
  std::string checks = "ic,mass,quality,fairness";
  double bound = -1.0;  // negative: mechanism default
  bool bound_set = false;
  std::string mass_mode = "auto";
  int jobs = 1;
  std::string format = "text";
  bool timing = false;
};

struct EnumerateArgs {
  int n = 0;
  bool count = false;
  bool unlabeled = false;
};

struct FamilyArgs {
  std::string spec;
  int extras = 0;
  bool connected = false;
  std::string format = "json";
};

struct ExamplesArgs {
  std::string format = "text";
};

struct DemoArgs {
  std::string kind;
  std::string mechanism = "mf,mb";
  int n = 8;
  std::string generator = "pow2";
  int a = 10;
  int b = 20;
  int extras = 2;
  double delta = 1e-2;
  std::string format = "text";
};

int run_eval(const EvalArgs& args);
int run_audit(const AuditArgs& args);
int run_enumerate(const EnumerateArgs& args);
int run_family(const FamilyArgs& args);
int run_examples(const ExamplesArgs& args);
int run_demo(const DemoArgs& args);

}  // namespace progeny::cli
