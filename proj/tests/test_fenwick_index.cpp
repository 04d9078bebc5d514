#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "dpc/fenwick_index.hpp"
#include "dpc/oracle.hpp"
#include "dpc/priority_kdtree.hpp"
#include "test_helpers.hpp"

using namespace dpc;
using namespace dpc::testing;

TEST_CASE("fenwick_cover examples") {
  CHECK(fenwick_cover(6) == std::vector<std::uint32_t>{6, 4});
  CHECK(fenwick_cover(4) == std::vector<std::uint32_t>{4});
  CHECK(fenwick_cover(3) == std::vector<std::uint32_t>{3, 2});
  CHECK(fenwick_cover(0).empty());
}

TEST_CASE("fenwick_cover tiles [1, i] disjointly, exhaustively to 4096") {
  for (std::uint32_t i = 1; i <= 4096; ++i) {
    const auto cover = fenwick_cover(i);
    CHECK(cover.size() <= static_cast<std::size_t>(std::floor(std::log2(i))) + 1);
    std::vector<bool> seen(i + 1, false);
    for (std::uint32_t j : cover) {
      const std::uint32_t begin = j - lsb(j) + 1;
      for (std::uint32_t r = begin; r <= j; ++r) {
        CHECK_FALSE(seen[r]);  // disjoint
        seen[r] = true;
      }
    }
    for (std::uint32_t r = 1; r <= i; ++r) CHECK(seen[r]);  // union is [1, i]
  }
}

TEST_CASE("tree sizes follow LSB") {
  std::mt19937_64 rng(67);
  SUBCASE("n = 5") {
    const PointSet pts = random_points(rng, 5, 2);
    const std::vector<double> rho = random_densities(rng, 5);
    const FenwickIndex idx(pts, rho);
    std::vector<std::size_t> sizes;
    for (std::uint32_t i = 1; i <= 5; ++i) sizes.push_back(idx.tree(i).size());
    CHECK(sizes == std::vector<std::size_t>{1, 2, 1, 4, 1});
  }
  SUBCASE("n = 1") {
    const PointSet pts = random_points(rng, 1, 2);
    const FenwickIndex idx(pts, std::vector<double>{1});
    CHECK(idx.tree(1).size() == 1);
    CHECK(idx.total_stored() == 1);
  }
}

TEST_CASE("every rank lands in exactly its covering trees") {
  std::mt19937_64 rng(71);
  const std::size_t n = 500;
  const PointSet pts = random_points(rng, n, 3);
  const std::vector<double> rho = random_densities(rng, n);
  const FenwickIndex idx(pts, rho);

  const auto order = idx.order();
  // order is sorted by strictly decreasing priority
  for (std::size_t k = 0; k + 1 < n; ++k) {
    CHECK(priority_gt({rho[order[k]], order[k]}, {rho[order[k + 1]], order[k + 1]}));
  }

  for (std::uint32_t i = 1; i <= n; ++i) {
    const std::uint32_t begin = i - lsb(i) + 1;
    auto ids = idx.tree(i).ids();
    std::vector<std::uint32_t> got(ids.begin(), ids.end());
    std::sort(got.begin(), got.end());
    std::vector<std::uint32_t> expected;
    for (std::uint32_t r = begin; r <= i; ++r) expected.push_back(order[r - 1]);
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
  }

  // sum of stored points stays within the n(log2(n)+1) budget
  CHECK(idx.total_stored() <=
        n * (static_cast<std::size_t>(std::floor(std::log2(n))) + 1));
}

TEST_CASE("fenwick_query basics") {
  const PointSet pts = canonical_points();
  const std::vector<double> rho{3, 2, 2, 2, 2};
  const FenwickIndex idx(pts, rho);

  SUBCASE("rank bound 0 yields nothing") {
    CHECK_FALSE(idx.query(0, pts[3]).has_value());
  }
  SUBCASE("rank bound 1 yields the top-priority point") {
    const auto nn = idx.query(1, pts[3]);
    REQUIRE(nn.has_value());
    CHECK(nn->id == 0);
  }
  SUBCASE("canonical rank-4 point against ranks 1..3") {
    // brute force over the three highest-priority points
    std::optional<Neighbor> expected;
    for (std::uint32_t id : {0u, 1u, 2u}) {
      const Neighbor cand{id, sq_dist(pts[id], pts[3])};
      if (!expected || neighbor_lt(cand, *expected)) expected = cand;
    }
    const auto nn = idx.query(3, pts[3]);
    REQUIRE(nn.has_value());
    CHECK(nn->id == expected->id);
    CHECK(nn->id == 1);
    CHECK(nn->distance() == doctest::Approx(std::sqrt(181.0)).epsilon(1e-15));
  }
}

TEST_CASE("combining per-tree results is order independent") {
  std::mt19937_64 rng(73);
  const std::size_t n = 200;
  const PointSet pts = random_points(rng, n, 2);
  const std::vector<double> rho = random_densities(rng, n);
  const FenwickIndex idx(pts, rho);
  for (int q = 0; q < 50; ++q) {
    const std::uint32_t bound = 1 + static_cast<std::uint32_t>(rng() % n);
    const PointSet qp = random_points(rng, 1, 2);
    std::vector<Neighbor> results;
    for (std::uint32_t j : fenwick_cover(bound)) {
      if (auto nn = idx.tree(j).nearest(qp[0])) results.push_back(*nn);
    }
    REQUIRE_FALSE(results.empty());
    const auto combined = idx.query(bound, qp[0]);
    REQUIRE(combined.has_value());
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(results.begin(), results.end(), rng);
      Neighbor best = results.front();
      for (const Neighbor& r : results) {
        if (neighbor_lt(r, best)) best = r;
      }
      CHECK(best.id == combined->id);
      CHECK(best.sq == combined->sq);
    }
  }
}

TEST_CASE("dependent point finder") {
  SUBCASE("canonical set agrees with the other finders") {
    const PointSet pts = canonical_points();
    const std::vector<double> rho{3, 2, 2, 2, 2};
    const auto a = fenwick_dependent_point(pts, rho, 0.0);
    CHECK(a.lambda == std::vector<std::int64_t>{-1, 0, 0, 1, 3});
  }
  SUBCASE("identical points chain to the smallest id") {
    const PointSet pts({5, 5, 5, 5, 5, 5}, 2);
    const std::vector<double> rho{3, 3, 3};
    const auto dep = fenwick_dependent_point(pts, rho, 0.0);
    CHECK(dep.lambda == std::vector<std::int64_t>{-1, 0, 0});
    CHECK(dep.delta[1] == 0.0);
    CHECK(dep.delta[2] == 0.0);
  }
  SUBCASE("rho_min above every density leaves only nones") {
    const PointSet pts = canonical_points();
    const std::vector<double> rho{3, 2, 2, 2, 2};
    const auto dep = fenwick_dependent_point(pts, rho, 4.0);
    CHECK(dep.lambda == std::vector<std::int64_t>{-1, -1, -1, -1, -1});
  }
  SUBCASE("matches the oracle and both other finders on random instances") {
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<std::size_t> nn(1, 500);
    const std::size_t dims[] = {2, 3, 5};
    for (int iter = 0; iter < 100; ++iter) {
      const std::size_t n = nn(rng);
      const PointSet pts = iter % 4 == 3 ? random_gridded_points(rng, n, dims[iter % 3])
                                         : random_points(rng, n, dims[iter % 3]);
      const std::vector<double> rho = random_densities(rng, n);
      const double rho_min = iter % 5 == 0 ? 2.0 : 0.0;
      const auto got = fenwick_dependent_point(pts, rho, rho_min);
      const auto oracle = oracle_dependent(pts, rho, rho_min);
      const auto priority = priority_dependent_point(pts, rho, rho_min);
      const auto sequential = incomplete_dependent_point(pts, rho, rho_min);
      CHECK(got.lambda == oracle.lambda);
      CHECK(got.delta == oracle.delta);
      CHECK(got.lambda == priority.lambda);
      CHECK(got.lambda == sequential.lambda);
    }
  }
}
