#include "doctest.h"
#include "progeny/error.hpp"
#include "progeny/families.hpp"

using namespace progeny;

TEST_CASE("star families") {
  CHECK(build_family(StarSpec{1}) == Forest::isolated(1));
  const Forest s = build_family(StarSpec{4});
  CHECK(s.size() == 4);
  CHECK(progeny_table(s).p(0) == 4);
  CHECK_THROWS_AS(build_family(StarSpec{0}), Error);
}

TEST_CASE("four-star chain with extras") {
  const Forest f = build_family(parse_family("star-path:20,20,10,10", 2));
  CHECK(f.size() == 62);
  CHECK(f == build_family(OverpaySpec{10, 20, 2}));
  CHECK(f.parent(0) == 1);
  CHECK(f.parent(1) == 2);
  CHECK(f.parent(2) == 3);
  CHECK(f.is_root(3));
  CHECK(f.is_root(60));
  CHECK(f.is_root(61));
  const ProgenyTable t = progeny_table(f);
  CHECK(t.p(0) == 20);
  CHECK(t.p(1) == 40);
  CHECK(t.p(2) == 50);
  CHECK(t.p(3) == 60);
  CHECK(t.roots.size() == 3);
}

TEST_CASE("upper-bound pair") {
  const Forest apart = build_family(parse_family("upper-pair:8"));
  CHECK(apart.size() == 8);
  CHECK(progeny_table(apart).roots == std::vector<Vertex>{0, 1});
  CHECK(progeny_table(apart).pstar == 4);
  const Forest joined = build_family(parse_family("upper-pair:8", 0, true));
  CHECK(joined.parent(0) == 1);
  CHECK(progeny_table(joined).pstar == 8);
}

TEST_CASE("invalid family specs") {
  CHECK_THROWS_AS(build_family(OverpaySpec{10, 19, 0}), Error);
  CHECK_THROWS_AS(build_family(OverpaySpec{0, 2, 0}), Error);
  CHECK_THROWS_AS(build_family(UpperPairSpec{7, false}), Error);
  CHECK_THROWS_AS(parse_family("triangle:3"), Error);
  CHECK_THROWS_AS(parse_family("star:x"), Error);
  CHECK_THROWS_AS(parse_family("star-path:"), Error);
}

TEST_CASE("family spec strings round trip") {
  for (const char* text : {"star:5", "star-path:3,2,1", "upper-pair:6"}) {
    const auto spec = parse_family(text);
    CHECK(build_family(parse_family(to_string(spec))) == build_family(spec));
  }
}
