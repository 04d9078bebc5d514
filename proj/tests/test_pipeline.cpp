#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "dpc/oracle.hpp"
#include "dpc/parallel.hpp"
#include "dpc/pipeline.hpp"
#include "test_helpers.hpp"

using namespace dpc;
using namespace dpc::testing;

namespace {

constexpr Strategy kAllStrategies[] = {Strategy::priority, Strategy::fenwick,
                                       Strategy::incomplete, Strategy::bruteforce};

std::vector<double> as_keys(const std::vector<std::uint32_t>& rho) {
  return {rho.begin(), rho.end()};
}

struct WorkerReset {
  ~WorkerReset() { par::set_workers(0); }
};

}  // namespace

TEST_CASE("densities on the canonical set") {
  const PointSet pts = canonical_points();
  CHECK(compute_densities(pts, 1.0) == std::vector<std::uint32_t>{3, 2, 2, 2, 2});
  CHECK(oracle_densities(pts, 1.0) == std::vector<std::uint32_t>{3, 2, 2, 2, 2});

  SUBCASE("radius below the closest pair counts only self") {
    CHECK(compute_densities(pts, 0.5) == std::vector<std::uint32_t>{1, 1, 1, 1, 1});
  }
  SUBCASE("radius covering the diameter counts everything") {
    CHECK(compute_densities(pts, 100.0) == std::vector<std::uint32_t>{5, 5, 5, 5, 5});
  }
  SUBCASE("coincident points count each other") {
    const PointSet two({1, 1, 1, 1}, 2);
    CHECK(oracle_densities(two, 0.1) == std::vector<std::uint32_t>{2, 2});
  }
}

TEST_CASE("densities match the oracle on random instances") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> radius(0.5, 40.0);
  for (int iter = 0; iter < 30; ++iter) {
    const std::size_t n = 1 + rng() % 500;
    const PointSet pts = random_points(rng, n, 2 + iter % 3);
    const double d_cut = radius(rng);
    CHECK(compute_densities(pts, d_cut) == oracle_densities(pts, d_cut));
  }
}

TEST_CASE("find_dependent_points on the canonical set, every strategy") {
  const PointSet pts = canonical_points();
  const auto rho = compute_densities(pts, 1.0);
  const auto keys = as_keys(rho);
  for (Strategy s : kAllStrategies) {
    CAPTURE(to_string(s));
    const auto dep = find_dependent_points(pts, keys, 0.0, s);
    CHECK(dep.lambda == std::vector<std::int64_t>{-1, 0, 0, 1, 3});
    CHECK(dep.delta[0] == std::numeric_limits<double>::infinity());
    CHECK(dep.delta[1] == 1.0);
    CHECK(dep.delta[3] == doctest::Approx(std::sqrt(181.0)).epsilon(1e-15));
  }
}

TEST_CASE("single point pipeline") {
  const PointSet pts({0.5, 0.5}, 2);
  const auto result = run_dpc(pts, {1.0, 0.0, 5.0}, Strategy::priority);
  CHECK(result.rho == std::vector<std::uint32_t>{1});
  CHECK(result.lambda == std::vector<std::int64_t>{-1});
  CHECK(result.centers == std::vector<std::uint32_t>{0});
  CHECK(result.labels == std::vector<std::int64_t>{0});
}

TEST_CASE("single linkage on the canonical set") {
  const PointSet pts = canonical_points();
  const auto rho = compute_densities(pts, 1.0);
  const auto keys = as_keys(rho);
  const auto dep = find_dependent_points(pts, keys, 0.0, Strategy::bruteforce);

  SUBCASE("delta_min 5 gives clusters {A,B,C} and {D,E}") {
    const auto out = single_linkage_cluster(pts, keys, dep, {1.0, 0.0, 5.0});
    CHECK(out.centers == std::vector<std::uint32_t>{0, 3});
    CHECK(out.labels[0] == out.labels[1]);
    CHECK(out.labels[1] == out.labels[2]);
    CHECK(out.labels[3] == out.labels[4]);
    CHECK(out.labels[0] != out.labels[3]);
  }
  SUBCASE("delta_min below every finite delta gives singletons") {
    const auto out = single_linkage_cluster(pts, keys, dep, {1.0, 0.0, 0.5});
    CHECK(out.centers.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(out.labels[i] == static_cast<std::int64_t>(i));
    }
  }
  SUBCASE("rho_min above every density marks everything noise") {
    const auto dep2 = find_dependent_points(pts, keys, 10.0, Strategy::priority);
    const auto out = single_linkage_cluster(pts, keys, dep2, {1.0, 10.0, 5.0});
    CHECK(out.centers.empty());
    for (std::int64_t l : out.labels) CHECK(l == kNoiseLabel);
  }
}

TEST_CASE("run_dpc end to end on the canonical set") {
  const PointSet pts = canonical_points();
  const auto result = run_dpc(pts, {1.0, 0.0, 5.0}, Strategy::priority);
  CHECK(result.cluster_count() == 2);
  CHECK(result.noise_count() == 0);
  CHECK(result.centers == std::vector<std::uint32_t>{0, 3});

  SUBCASE("strategies give identical results") {
    for (Strategy s : kAllStrategies) {
      const auto other = run_dpc(pts, {1.0, 0.0, 5.0}, s);
      CHECK(other.labels == result.labels);
      CHECK(other.delta == result.delta);
    }
  }
  SUBCASE("params echoed in the result") {
    const auto r2 = run_dpc(pts, {0.02, 20.0, 0.2}, Strategy::fenwick);
    CHECK(r2.params.d_cut == 0.02);
    CHECK(r2.params.rho_min == 20.0);
    CHECK(r2.params.delta_min == 0.2);
    CHECK(r2.strategy == Strategy::fenwick);
  }
}

TEST_CASE("strategy equivalence on random instances") {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<std::size_t> nn(2, 400);
  std::uniform_real_distribution<double> radius(1.0, 30.0);
  std::uniform_real_distribution<double> dmin(0.5, 50.0);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = nn(rng);
    const PointSet pts = random_points(rng, n, 2 + iter % 3);
    const DpcParams params{radius(rng), static_cast<double>(iter % 4), dmin(rng)};
    const auto reference = run_dpc(pts, params, Strategy::bruteforce);
    for (Strategy s : {Strategy::priority, Strategy::fenwick, Strategy::incomplete}) {
      CAPTURE(to_string(s));
      const auto got = run_dpc(pts, params, s);
      CHECK(got.rho == reference.rho);
      CHECK(got.lambda == reference.lambda);
      CHECK(got.delta == reference.delta);
      CHECK(got.labels == reference.labels);
      CHECK(got.centers == reference.centers);
    }
  }
}

TEST_CASE("result invariants on random instances") {
  std::mt19937_64 rng(113);
  for (int iter = 0; iter < 25; ++iter) {
    const std::size_t n = 20 + rng() % 200;
    const PointSet pts = random_points(rng, n, 2);
    const DpcParams params{8.0, static_cast<double>(iter % 3), 15.0};
    const auto result = run_dpc(pts, params, Strategy::priority);
    const auto keys = as_keys(result.rho);

    for (std::size_t i = 0; i < n; ++i) {
      const PriorityKey key_i{keys[i], static_cast<std::uint32_t>(i)};
      if (result.lambda[i] >= 0) {
        const auto j = static_cast<std::uint32_t>(result.lambda[i]);
        // dependent has strictly higher priority and is never noise
        CHECK(priority_gt({keys[j], j}, key_i));
        CHECK(keys[j] >= params.rho_min);
        CHECK(result.delta[i] == dist(pts[i], pts[j]));
        // no closer higher-priority point exists (exhaustive)
        for (std::size_t o = 0; o < n; ++o) {
          if (!priority_gt({keys[o], static_cast<std::uint32_t>(o)}, key_i)) continue;
          const double d_o = dist(pts[i], pts[o]);
          CHECK(result.delta[i] <= d_o);
        }
      }
      if (keys[i] < params.rho_min) {
        CHECK(result.labels[i] == kNoiseLabel);
        CHECK(result.lambda[i] == -1);
      }
    }

    // non-noise points walk their dependent chain to a center of the same
    // cluster, staying below delta_min along the way
    std::vector<bool> is_center(n, false);
    for (std::uint32_t c : result.centers) is_center[c] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (result.labels[i] == kNoiseLabel) continue;
      std::size_t cur = i;
      std::size_t steps = 0;
      while (!is_center[cur]) {
        REQUIRE(steps++ <= n);
        CHECK(result.delta[cur] < params.delta_min);
        REQUIRE(result.lambda[cur] >= 0);
        cur = static_cast<std::size_t>(result.lambda[cur]);
        CHECK(result.labels[cur] == result.labels[i]);
      }
    }

    // exactly one center per cluster label
    std::vector<std::int64_t> center_labels;
    for (std::uint32_t c : result.centers) center_labels.push_back(result.labels[c]);
    std::sort(center_labels.begin(), center_labels.end());
    CHECK(std::adjacent_find(center_labels.begin(), center_labels.end()) ==
          center_labels.end());
    std::vector<std::int64_t> all_labels(result.labels);
    std::sort(all_labels.begin(), all_labels.end());
    all_labels.erase(std::unique(all_labels.begin(), all_labels.end()), all_labels.end());
    std::size_t non_noise_labels = all_labels.size();
    if (!all_labels.empty() && all_labels.front() == kNoiseLabel) --non_noise_labels;
    CHECK(non_noise_labels == result.centers.size());
  }
}

TEST_CASE("worker count never changes the answer") {
  WorkerReset reset;
  std::mt19937_64 rng(127);
  const PointSet pts = random_points(rng, 3000, 2);
  const DpcParams params{4.0, 1.0, 10.0};
  par::set_workers(1);
  const auto one = run_dpc(pts, params, Strategy::priority);
  for (unsigned w : {2u, 8u}) {
    par::set_workers(w);
    for (Strategy s : kAllStrategies) {
      const auto got = run_dpc(pts, params, s);
      CHECK(got.rho == one.rho);
      CHECK(got.lambda == one.lambda);
      CHECK(got.delta == one.delta);
      CHECK(got.labels == one.labels);
    }
  }
}

TEST_CASE("unknown strategy names are rejected") {
  CHECK_THROWS_AS(strategy_from_string("quadtree"), std::invalid_argument);
  CHECK(strategy_from_string("fenwick") == Strategy::fenwick);
  CHECK(to_string(Strategy::bruteforce) == "bruteforce");
}
