#include "progeny/forest_io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "progeny/error.hpp"

namespace progeny {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(std::string_view token, int line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(Errc::SyntaxError, "line " + std::to_string(line) + ": expected an integer, got '" +
                                       std::string(token) + "'");
  }
  return value;
}

Forest parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::SyntaxError, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("parent") || !doc["n"].is_number_integer() ||
      !doc["parent"].is_array()) {
    throw Error(Errc::SyntaxError, R"(forest JSON needs {"n": int, "parent": [int|null, ...]})");
  }
  const int n = doc["n"].get<int>();
  std::vector<Vertex> parent;
  for (const auto& entry : doc["parent"]) {
    if (entry.is_null()) {
      parent.push_back(kNone);
    } else if (entry.is_number_integer()) {
      parent.push_back(entry.get<Vertex>());
    } else {
      throw Error(Errc::SyntaxError, "parent entries must be integers or null");
    }
  }
  return new_forest(n, std::move(parent));
}

Forest parse_text(std::string_view text) {
  int n = -1;
  std::vector<Vertex> parent;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (n < 0) {
      if (line.substr(0, 2) != "n=") {
        throw Error(Errc::SyntaxError, "line " + std::to_string(line_no) + ": expected 'n=<int>'");
      }
      n = parse_int(trim(line.substr(2)), line_no);
      if (n < 0) throw Error(Errc::SyntaxError, "vertex count must be non-negative");
      parent.assign(static_cast<std::size_t>(n), kNone);
      continue;
    }
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw Error(Errc::SyntaxError, "line " + std::to_string(line_no) + ": expected 'child parent'");
    }
    const int child = parse_int(line.substr(0, space), line_no);
    const int head = parse_int(trim(line.substr(space)), line_no);
    if (child < 0 || child >= n || head < 0 || head >= n) {
      throw Error(Errc::IndexOutOfRange, "line " + std::to_string(line_no) + ": vertex outside 0.." +
                                             std::to_string(n - 1));
    }
    if (parent[static_cast<std::size_t>(child)] != kNone) {
      throw Error(Errc::SyntaxError, "line " + std::to_string(line_no) + ": vertex " +
                                         std::to_string(child) + " already has an out-edge");
    }
    parent[static_cast<std::size_t>(child)] = head;
  }
  if (n < 0) throw Error(Errc::SyntaxError, "missing 'n=<int>' header");
  return Forest(std::move(parent));
}

}  // namespace

Forest parse_forest(std::string_view text) {
  const auto body = trim(text);
  const auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && body[first] == '{') return parse_json(body);
  return parse_text(text);
}

std::string emit_forest(const Forest& forest, ForestFormat format) {
  if (format == ForestFormat::Json) {
    nlohmann::json parent = nlohmann::json::array();
    for (Vertex p : forest.parents()) {
      if (p == kNone) {
        parent.push_back(nullptr);
      } else {
        parent.push_back(p);
      }
    }
    nlohmann::json doc;
    doc["n"] = forest.size();
    doc["parent"] = std::move(parent);
    return doc.dump();
  }
  std::ostringstream out;
  out << "n=" << forest.size() << '\n';
  for (Vertex v = 0; v < forest.size(); ++v) {
    if (!forest.is_root(v)) out << v << ' ' << forest.parent(v) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Forest read_forest_file(const std::string& path) { return parse_forest(read_text_file(path)); }

}  // namespace progeny
