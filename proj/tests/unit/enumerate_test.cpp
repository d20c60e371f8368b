#include <cstdlib>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "progeny/enumerate.hpp"
#include "progeny/error.hpp"

using namespace progeny;

TEST_CASE("forest counts follow (n+1)^(n-1)") {
  CHECK(labeled_forest_count(1) == 1);
  CHECK(labeled_forest_count(3) == 16);
  CHECK(labeled_forest_count(5) == 1296);
  CHECK(labeled_forest_count(6) == 16807);
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(enumerate_forests(n).size() == labeled_forest_count(n));
  }
}

TEST_CASE("enumeration agrees with filtering all parent functions") {
  for (int n = 1; n <= 5; ++n) {
    CAPTURE(n);
    const auto expected = oracle::all_forests(n);
    const auto produced = enumerate_forests(n);
    std::set<std::string> a, b;
    for (const auto& f : expected) a.insert(f.key());
    for (const auto& f : produced) b.insert(f.key());
    CHECK(b.size() == produced.size());
    CHECK(a == b);
  }
  CHECK(oracle::all_forests(3).size() == 16);
  CHECK(oracle::all_forests(5).size() == 1296);
}

TEST_CASE("enumeration limits") {
  CHECK_THROWS_AS(ForestEnumerator(8), Error);
  CHECK_NOTHROW(ForestEnumerator(8, 8));
  CHECK_THROWS_AS(ForestEnumerator(0), Error);
  try {
    ForestEnumerator e(9, 7);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CapExceeded);
  }
}

TEST_CASE("enumeration cap from the environment") {
  ::setenv("PROGENY_MAX_N", "9", 1);
  CHECK(enumeration_cap_from_env() == 9);
  ::unsetenv("PROGENY_MAX_N");
  CHECK(enumeration_cap_from_env() == kDefaultEnumerationCap);
}

TEST_CASE("sampled forests are roughly uniform") {
  std::mt19937_64 rng(12345);
  std::map<std::string, int> hits;
  const int draws = 32000;
  for (int i = 0; i < draws; ++i) ++hits[sample_forest(3, rng).key()];
  CHECK(hits.size() == 16);
  double chi2 = 0.0;
  const double expected = draws / 16.0;
  for (const auto& [key, count] : hits) chi2 += (count - expected) * (count - expected) / expected;
  // 15 degrees of freedom; 40 is far in the tail.
  CHECK(chi2 < 40.0);
}
