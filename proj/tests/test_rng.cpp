#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "gcg/rng.hpp"

using namespace gcg;

TEST_CASE("same seed reproduces the same sequence") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.bits() == b.bits());
}

TEST_CASE("different seeds diverge") {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 100; ++i) {
    if (a.bits() == b.bits()) ++same;
  }
  CHECK(same == 0);
}

TEST_CASE("split streams are label-addressed") {
  Rng a = Rng::split(7, "sim/W/C/0");
  Rng b = Rng::split(7, "sim/W/C/0");
  Rng c = Rng::split(7, "sim/W/C/1");
  Rng d = Rng::split(8, "sim/W/C/0");
  CHECK(a.bits() == b.bits());
  Rng a2 = Rng::split(7, "sim/W/C/0");
  CHECK(a2.bits() != c.bits());
  Rng a3 = Rng::split(7, "sim/W/C/0");
  CHECK(a3.bits() != d.bits());
}

TEST_CASE("below stays inside the bound and covers it") {
  Rng rng(123);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 5000; ++i) {
    const auto v = rng.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
}

TEST_CASE("below is roughly uniform") {
  Rng rng(99);
  const int bins = 10, draws = 100000;
  int count[10] = {0};
  for (int i = 0; i < draws; ++i) ++count[rng.below(bins)];
  for (int b = 0; b < bins; ++b) {
    // ~5 sigma band around draws/bins.
    CHECK(count[b] > 9500);
    CHECK(count[b] < 10500);
  }
}

TEST_CASE("uniform lies in [0,1) with sane mean") {
  Rng rng(5);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.01);
}

TEST_CASE("coin is fair enough") {
  Rng rng(17);
  int heads = 0;
  for (int i = 0; i < 100000; ++i) heads += rng.coin();
  CHECK(heads > 49000);
  CHECK(heads < 51000);
}

TEST_CASE("fnv1a64 matches reference digests") {
  // Published FNV-1a test vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
