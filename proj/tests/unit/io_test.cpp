#include <random>

#include "doctest.h"
#include "progeny/enumerate.hpp"
#include "progeny/error.hpp"
#include "progeny/forest_io.hpp"

using namespace progeny;

namespace {

Errc parse_error(std::string_view text) {
  try {
    parse_forest(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse accepted: " << text);
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("text format") {
  const Forest f = parse_forest("# header comment\nn=4\n0 1   # zero points at one\n\n2 1\n");
  CHECK(f.size() == 4);
  CHECK(f.parent(0) == 1);
  CHECK(f.parent(2) == 1);
  CHECK(f.is_root(1));
  CHECK(f.is_root(3));
  CHECK(parse_forest("n=1\n") == Forest::isolated(1));
}

TEST_CASE("json format") {
  const Forest f = parse_forest(R"({"n": 3, "parent": [null, 0, 0]})");
  CHECK(f.parent(1) == 0);
  CHECK(f.parent(2) == 0);
  CHECK(emit_forest(f) == R"({"n":3,"parent":[null,0,0]})");
  CHECK(emit_forest(f, ForestFormat::Text) == "n=3\n1 0\n2 0\n");
}

TEST_CASE("malformed input") {
  CHECK(parse_error("0 1\n") == Errc::SyntaxError);
  CHECK(parse_error("n=x\n") == Errc::SyntaxError);
  CHECK(parse_error("n=3\n0\n") == Errc::SyntaxError);
  CHECK(parse_error("n=3\n0 1\n0 2\n") == Errc::SyntaxError);
  CHECK(parse_error("n=3\n0 7\n") == Errc::IndexOutOfRange);
  CHECK(parse_error("n=2\n0 1\n1 0\n") == Errc::CycleDetected);
  CHECK(parse_error("") == Errc::SyntaxError);
  CHECK(parse_error(R"({"n": 2, "parent": [1, 0]})") == Errc::CycleDetected);
  CHECK(parse_error(R"({"n": 2, "parent": [null]})") == Errc::IndexOutOfRange);
  CHECK(parse_error(R"({"n": 2, "parent": ["a", null]})") == Errc::SyntaxError);
  CHECK(parse_error(R"({"n": 2)") == Errc::SyntaxError);
}

TEST_CASE("emit and parse are inverse") {
  for (const Forest& f : enumerate_forests_up_to(4)) {
    REQUIRE(parse_forest(emit_forest(f)) == f);
    REQUIRE(parse_forest(emit_forest(f, ForestFormat::Text)) == f);
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Forest f = sample_forest(1 + static_cast<int>(rng() % 40), rng);
    const std::string json = emit_forest(f);
    REQUIRE(parse_forest(json) == f);
    REQUIRE(emit_forest(parse_forest(json)) == json);
    const std::string text = emit_forest(f, ForestFormat::Text);
    REQUIRE(emit_forest(parse_forest(text), ForestFormat::Text) == text);
  }
}
