#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "rdst/distance.hpp"

using namespace rdst;

TEST_CASE("dilated distance on a hand-evaluated case") {
  const TimeSeries x{{0, 1, 2, 3, 4, 5}};
  DilatedShapelet s;
  s.values = {0.0, 2.0};
  s.dilation = 2;

  const auto f = distance_vector(s, x);
  REQUIRE(f.size() == 4);  // m - (l-1)*d = 6 - 2
  REQUIRE(f[0] == 0.0);
  REQUIRE(f[1] == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
  REQUIRE(f[2] == Catch::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  REQUIRE(f[3] == Catch::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("distance vector length law over random cases") {
  RngStream rng(11, 0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 20 + rng.next_below(100);
    const std::size_t l = 2 + rng.next_below(10);
    const std::size_t max_d = (m - 1) / (l - 1);
    const std::size_t d = 1 + rng.next_below(max_d);
    const auto x = testutil::random_series(rng, m);
    const auto s = testutil::random_shapelet(rng, l, d, t % 2 == 0);
    REQUIRE(distance_vector(s, x).size() == m - (l - 1) * d);
  }
}

TEST_CASE("znormalize maps constants to zero and handles a frozen pair") {
  const std::vector<double> flat{1.0, 1.0, 1.0};
  REQUIRE(znormalize(flat) == std::vector<double>{0.0, 0.0, 0.0});
  const std::vector<double> pair{0.0, 2.0};
  REQUIRE(znormalize(pair) == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("degenerate window distance equals the shapelet norm") {
  const TimeSeries flat{{5.0, 5.0, 5.0, 5.0, 5.0}};
  const std::vector<double> raw{0.0, 1.0, 2.0};
  DilatedShapelet s;
  s.values = znormalize(raw);
  s.dilation = 1;
  s.normalized = true;

  double norm = 0.0;
  for (double v : s.values) norm += v * v;
  norm = std::sqrt(norm);

  for (double f : distance_vector(s, flat)) {
    REQUIRE(f == Catch::Approx(norm).epsilon(1e-15));
  }
}

TEST_CASE("extract_features returns min, first argmin and strict count") {
  const TimeSeries x{{0, 1, 2, 3, 4, 5}};
  DilatedShapelet s;
  s.values = {0.0, 2.0};
  s.dilation = 2;

  SECTION("lambda 2 counts the two entries below it") {
    s.lambda = 2.0;
    const auto t = extract_features(s, x);
    REQUIRE(t.min_dist == 0.0);
    REQUIRE(t.argmin_idx == 0);
    REQUIRE(t.occ_count == 2);  // 0 and sqrt(2), strictly below 2
  }
  SECTION("lambda 0 never counts") {
    s.lambda = 0.0;
    REQUIRE(extract_features(s, x).occ_count == 0);
  }
  SECTION("tied minima keep the first index") {
    DilatedShapelet z;
    z.values = {0.0, 0.0};
    z.dilation = 1;
    const TimeSeries tied{{1, 0, 0, 1, 0, 0}};
    const auto t = extract_features(z, tied);
    REQUIRE(t.min_dist == 0.0);
    REQUIRE(t.argmin_idx == 1);
  }
}

TEST_CASE("occurrence count is monotone in lambda") {
  RngStream rng(12, 0);
  const auto x = testutil::random_series(rng, 80);
  auto s = testutil::random_shapelet(rng, 7, 3, true);
  const auto f = distance_vector(s, x);

  std::size_t prev = 0;
  for (int step = 0; step <= 10; ++step) {
    s.lambda = 0.4 * step;
    const auto count = extract_features(s, x).occ_count;
    REQUIRE(count >= prev);
    std::size_t recount = 0;
    for (double v : f) {
      if (v < s.lambda) ++recount;
    }
    REQUIRE(count == recount);
    prev = count;
  }
}

TEST_CASE("a shapelet spanning past the series end is rejected") {
  const TimeSeries x{{0, 1, 2, 3, 4, 5}};
  DilatedShapelet s;
  s.values = {0.0, 0.0, 0.0, 0.0};
  s.dilation = 2;  // reach (4-1)*2 = 6 >= m = 6
  REQUIRE_THROWS_AS(distance_vector(s, x), ShapeletTooLong);
  REQUIRE_THROWS_WITH(distance_vector(s, x),
                      Catch::Matchers::ContainsSubstring("6"));
}

TEST_CASE("optimized engine agrees with the naive transliteration") {
  RngStream rng(13, 0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 30 + rng.next_below(120);
    const std::size_t l = 2 + rng.next_below(12);
    const std::size_t max_d = (m - 1) / (l - 1);
    const std::size_t d = 1 + rng.next_below(max_d);
    const bool normalized = t % 2 == 0;
    const auto x = testutil::random_series(rng, m);
    const auto s = testutil::random_shapelet(rng, l, d, normalized);

    const auto fast = distance_vector(s, x);
    const auto slow = oracle::naive_distance(s.values, d, normalized,
                                             x.values);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      const double scale = std::max(1.0, std::abs(slow[i]));
      REQUIRE(std::abs(fast[i] - slow[i]) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("dilation 1 raw mode is bitwise equal to the contiguous form") {
  RngStream rng(14, 0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 25 + rng.next_below(75);
    const std::size_t l = 2 + rng.next_below(10);
    const auto x = testutil::random_series(rng, m);
    const auto s = testutil::random_shapelet(rng, l, 1, false);

    const auto fast = distance_vector(s, x);
    const auto contiguous = oracle::eq1_distance(s.values, x.values);
    REQUIRE(fast.size() == contiguous.size());
    REQUIRE(std::memcmp(fast.data(), contiguous.data(),
                        fast.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("normalized distance is invariant to affine input transforms") {
  RngStream rng(15, 0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 40 + rng.next_below(60);
    const auto x = testutil::random_series(rng, m);
    const auto s = testutil::random_shapelet(rng, 9, 2, true);
    const auto base = distance_vector(s, x);

    TimeSeries scaled;
    scaled.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      scaled.values[i] = 3.0 * x.values[i] - 5.0;
    }
    const auto moved = distance_vector(s, scaled);
    for (std::size_t i = 0; i < base.size(); ++i) {
      REQUIRE(moved[i] == Catch::Approx(base[i]).margin(1e-6));
    }
  }
}
