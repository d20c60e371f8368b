#include "progeny/mechanism_spec.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "json.hpp"
#include "progeny/error.hpp"
#include "progeny/forest_io.hpp"

namespace progeny {

GeneratorTable::GeneratorTable(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      throw Error(Errc::InvalidSpec, "generator value f(" + std::to_string(i + 1) + ") must be positive and finite");
    }
  }
}

double GeneratorTable::operator()(int k) const {
  if (k < 1 || k > size()) {
    throw Error(Errc::InvalidArgument, "generator '" + label_ + "' is tabulated on 1.." + std::to_string(size()) +
                                           ", asked for " + std::to_string(k));
  }
  return values_[static_cast<std::size_t>(k - 1)];
}

bool GeneratorTable::monotone_nondecreasing() const noexcept {
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] < values_[i - 1]) return false;
  }
  return true;
}

namespace {

template <class Fn>
GeneratorTable tabulate(int n, std::string label, Fn fn) {
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) values[static_cast<std::size_t>(k - 1)] = fn(k);
  return GeneratorTable(std::move(values), std::move(label));
}

}  // namespace

GeneratorTable GeneratorTable::constant(int n) {
  return tabulate(n, "const", [](int) { return 1.0; });
}
GeneratorTable GeneratorTable::linear(int n) {
  return tabulate(n, "linear", [](int k) { return static_cast<double>(k); });
}
GeneratorTable GeneratorTable::square(int n) {
  return tabulate(n, "square", [](int k) { return static_cast<double>(k) * k; });
}
GeneratorTable GeneratorTable::pow2(int n) {
  return tabulate(n, "pow2", [](int k) { return std::ldexp(1.0, k); });
}

GeneratorTable parse_generator_json(std::string_view text, std::string label) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::SyntaxError, e.what());
  }
  const nlohmann::json* arr = &doc;
  if (doc.is_object() && doc.contains("f")) arr = &doc["f"];
  if (!arr->is_array() || arr->empty()) {
    throw Error(Errc::InvalidSpec, R"(generator JSON must be {"f": [f(1), ...]} or a non-empty array)");
  }
  std::vector<double> values;
  for (const auto& v : *arr) {
    if (!v.is_number()) throw Error(Errc::InvalidSpec, "generator values must be numbers");
    values.push_back(v.get<double>());
  }
  return GeneratorTable(std::move(values), std::move(label));
}

GeneratorTable load_generator(const std::string& name_or_path) {
  if (name_or_path == "const") return GeneratorTable::constant(kBuiltinGeneratorSize);
  if (name_or_path == "linear") return GeneratorTable::linear(kBuiltinGeneratorSize);
  if (name_or_path == "square") return GeneratorTable::square(kBuiltinGeneratorSize);
  if (name_or_path == "pow2") return GeneratorTable::pow2(kBuiltinGeneratorSize);
  std::string text;
  try {
    text = read_text_file(name_or_path);
  } catch (const Error& e) {
    throw Error(Errc::InvalidSpec, std::string("generator: ") + e.what());
  }
  return parse_generator_json(text, name_or_path);
}

MechanismSpec make_mf() { return {mech::Mf{}}; }
MechanismSpec make_mb() { return {mech::Mb{}}; }
MechanismSpec make_meps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(Errc::InvalidSpec, "meps needs 0 < eps < 1, got " + std::to_string(eps));
  }
  return {mech::Meps{eps}};
}
MechanismSpec make_function_generated(GeneratorTable f) {
  return {mech::FunctionGenerated{std::make_shared<const GeneratorTable>(std::move(f))}};
}
MechanismSpec make_interval_share() { return {mech::IntervalShareReference{}}; }
MechanismSpec make_uniform() { return {mech::Uniform{}}; }
MechanismSpec make_empty() { return {mech::Empty{}}; }
MechanismSpec make_symmetrized(MechanismSpec inner) {
  return {mech::Symmetrized{std::make_shared<const MechanismSpec>(std::move(inner))}};
}

MechanismSpec parse_mechanism(std::string_view text) {
  if (text == "mf") return make_mf();
  if (text == "mb") return make_mb();
  if (text == "mprime") return make_interval_share();
  if (text == "uniform") return make_uniform();
  if (text == "empty") return make_empty();
  if (text.starts_with("meps:")) {
    const std::string arg(text.substr(5));
    char* end = nullptr;
    const double eps = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size()) {
      throw Error(Errc::InvalidSpec, "meps: '" + arg + "' is not a number");
    }
    return make_meps(eps);
  }
  if (text.starts_with("fg:")) {
    const std::string arg(text.substr(3));
    if (arg.empty()) throw Error(Errc::InvalidSpec, "fg: needs a generator name or file");
    return make_function_generated(load_generator(arg));
  }
  if (text.starts_with("sym:")) return make_symmetrized(parse_mechanism(text.substr(4)));
  throw Error(Errc::InvalidSpec, "unknown mechanism '" + std::string(text) + "'");
}

std::string to_string(const MechanismSpec& spec) {
  struct Visitor {
    std::string operator()(const mech::Mf&) const { return "mf"; }
    std::string operator()(const mech::Mb&) const { return "mb"; }
    std::string operator()(const mech::Meps& m) const {
      char buf[40];
      std::snprintf(buf, sizeof buf, "meps:%.17g", m.eps);
      return buf;
    }
    std::string operator()(const mech::FunctionGenerated& m) const { return "fg:" + m.f->label(); }
    std::string operator()(const mech::IntervalShareReference&) const { return "mprime"; }
    std::string operator()(const mech::Uniform&) const { return "uniform"; }
    std::string operator()(const mech::Empty&) const { return "empty"; }
    std::string operator()(const mech::Symmetrized& m) const { return "sym:" + to_string(*m.inner); }
  };
  return std::visit(Visitor{}, spec.kind);
}

bool is_exact(const MechanismSpec& spec) {
  if (const auto* sym = std::get_if<mech::Symmetrized>(&spec.kind)) return sym->inner && is_exact(*sym->inner);
  return spec.is<mech::Mb>() || spec.is<mech::IntervalShareReference>() || spec.is<mech::Uniform>() ||
         spec.is<mech::FunctionGenerated>();
}

}  // namespace progeny
