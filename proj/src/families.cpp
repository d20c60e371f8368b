#include "progeny/families.hpp"

#include <charconv>

#include "progeny/error.hpp"

namespace progeny {

namespace {

Forest build_chains(const std::vector<std::vector<int>>& chains, int extras) {
  if (extras < 0) throw Error(Errc::InvalidSpec, "negative number of extra vertices");
  int stars = 0;
  int total = extras;
  for (const auto& chain : chains) {
    if (chain.empty()) throw Error(Errc::InvalidSpec, "empty chain");
    for (int size : chain) {
      if (size < 1) throw Error(Errc::InvalidSpec, "star sizes must be at least 1");
      total += size;
      ++stars;
    }
  }
  std::vector<Vertex> parent(static_cast<std::size_t>(total), kNone);
  Vertex centre = 0;
  for (const auto& chain : chains) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      parent[static_cast<std::size_t>(centre + static_cast<Vertex>(i))] = centre + static_cast<Vertex>(i) + 1;
    }
    centre += static_cast<Vertex>(chain.size());
  }
  Vertex next_leaf = stars;
  centre = 0;
  for (const auto& chain : chains) {
    for (int size : chain) {
      for (int leaf = 1; leaf < size; ++leaf) parent[static_cast<std::size_t>(next_leaf++)] = centre;
      ++centre;
    }
  }
  return Forest(std::move(parent));
}

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw Error(Errc::InvalidSpec, "expected an integer, got '" + std::string(item) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw Error(Errc::InvalidSpec, "missing parameters");
  return out;
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

Forest build_family(const ForestFamilySpec& spec) {
  struct Builder {
    Forest operator()(const StarSpec& s) const {
      if (s.k < 1) throw Error(Errc::InvalidSpec, "star size must be at least 1");
      return build_chains({{s.k}}, 0);
    }
    Forest operator()(const StarChainSpec& s) const {
      if (s.chains.empty()) throw Error(Errc::InvalidSpec, "no chains given");
      return build_chains(s.chains, s.extras);
    }
    Forest operator()(const OverpaySpec& s) const {
      if (s.a < 1 || s.b < 2 * s.a) {
        throw Error(Errc::InvalidSpec, "overpay forest needs b >= 2a >= 2");
      }
      return build_chains({{s.b, s.b, s.a, s.a}}, s.extras);
    }
    Forest operator()(const UpperPairSpec& s) const {
      if (s.n < 2 || s.n % 2 != 0) throw Error(Errc::InvalidSpec, "upper-pair needs an even n >= 2");
      if (s.connected) return build_chains({{s.n / 2, s.n / 2}}, 0);
      return build_chains({{s.n / 2}, {s.n / 2}}, 0);
    }
  };
  return std::visit(Builder{}, spec);
}

ForestFamilySpec parse_family(std::string_view text, int extras, bool connected) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(Errc::InvalidSpec, "family spec needs the form kind:params, got '" +
                                       std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view params = text.substr(colon + 1);
  if (kind == "star") {
    const auto v = parse_ints(params);
    if (v.size() != 1) throw Error(Errc::InvalidSpec, "star takes one size");
    if (extras != 0) return StarChainSpec{{{v[0]}}, extras};
    return StarSpec{v[0]};
  }
  if (kind == "star-path") return StarChainSpec{{parse_ints(params)}, extras};
  if (kind == "chains") {
    StarChainSpec spec{{}, extras};
    std::string_view rest = params;
    while (true) {
      const auto semi = rest.find(';');
      spec.chains.push_back(parse_ints(rest.substr(0, semi)));
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    return spec;
  }
  if (kind == "overpay") {
    const auto v = parse_ints(params);
    if (v.size() != 2 && v.size() != 3) throw Error(Errc::InvalidSpec, "overpay takes a,b[,extras]");
    return OverpaySpec{v[0], v[1], v.size() == 3 ? v[2] : extras};
  }
  if (kind == "upper-pair") {
    const auto v = parse_ints(params);
    if (v.size() != 1) throw Error(Errc::InvalidSpec, "upper-pair takes n");
    return UpperPairSpec{v[0], connected};
  }
  throw Error(Errc::InvalidSpec, "unknown family '" + std::string(kind) + "'");
}

std::string to_string(const ForestFamilySpec& spec) {
  struct Printer {
    std::string operator()(const StarSpec& s) const { return "star:" + std::to_string(s.k); }
    std::string operator()(const StarChainSpec& s) const {
      std::string out = "chains:";
      for (std::size_t i = 0; i < s.chains.size(); ++i) {
        if (i) out += ';';
        out += join(s.chains[i]);
      }
      if (s.extras) out += " +" + std::to_string(s.extras);
      return out;
    }
    std::string operator()(const OverpaySpec& s) const {
      return "overpay:" + std::to_string(s.a) + "," + std::to_string(s.b) + " +" +
             std::to_string(s.extras);
    }
    std::string operator()(const UpperPairSpec& s) const {
      return "upper-pair:" + std::to_string(s.n) + (s.connected ? " connected" : "");
    }
  };
  return std::visit(Printer{}, spec);
}

}  // namespace progeny
