#include <doctest.h>

#include <random>

#include "bisector_lab/distcount.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace bisector_lab;
using namespace test_support;

TEST_CASE("distance_set and histogram") {
  const auto one = plane(7, {{3, 4}});
  CHECK(distance_set(one) == std::vector<Scalar>{Scalar(0)});
  CHECK(distance_set(two_points()) == std::vector<Scalar>{Scalar(0), Scalar(1)});
  std::vector<std::pair<std::int64_t, std::int64_t>> row;
  for (int t = 0; t < 7; ++t) row.emplace_back(t, 0);
  CHECK(distance_set(plane(7, row)) == std::vector<Scalar>{Scalar(0), Scalar(1), Scalar(2), Scalar(4)});
  CHECK(nonzero_distance_count(plane(7, row)) == 3);

  const auto h1 = distance_histogram(one);
  REQUIRE(h1.counts.size() == 1);
  CHECK(h1.at(Scalar(0)) == 1);
  const auto h2 = distance_histogram(two_points());
  CHECK(h2.at(Scalar(0)) == 2);
  CHECK(h2.at(Scalar(1)) == 2);
  CHECK(h2.total() == 4);
  const PlaneSet empty(make_modulus(7));
  CHECK(distance_histogram(empty).counts.empty());
  CHECK(distance_set(empty).empty());
}

TEST_CASE("fixture counts") {
  CHECK(second_moment(plane(7, {{1, 1}})) == 1);
  CHECK(second_moment(two_points()) == 8);
  CHECK(isosceles_count(plane(7, {{1, 1}})) == 0);
  CHECK(isosceles_count(two_points()) == 2);
  CHECK(rectangle_count(plane(7, {{1, 1}})) == 0);
  CHECK(rectangle_count(unit_square()) == 8);
  CHECK(rectangle_count(two_points()) == 0);
  CHECK(paraboloid_quadruples(plane(7, {{1, 1}})) == 0);
  CHECK(paraboloid_quadruples(two_points()) == 2);
  CHECK(paraboloid_quadruples(unit_square()) == 20);
  CHECK(q_count(two_points()) == 4);
  CHECK(q_count(plane(7, {{1, 1}})) == 0);
  CHECK(bisector_incidences(two_points()) == 0);
  CHECK(bisector_incidences(plane(7, {{1, 1}})) == 0);

  const auto sq = oracle::raw(unit_square());
  CHECK(isosceles_count(unit_square()) == oracle::isosceles(sq, 7));
  CHECK(rectangle_count(unit_square()) == oracle::rectangles(sq, 7));
  CHECK(paraboloid_quadruples(unit_square()) == oracle::paraboloid(sq, 7));
}

TEST_CASE("bisector_partition") {
  const auto part = bisector_partition(two_points());
  REQUIRE(part.classes.size() == 1);
  CHECK(part.classes[0].size == 2);
  REQUIRE(part.classes[0].subclasses.size() == 2);
  CHECK(part.classes[0].subclasses[0].second == 1);
  CHECK(part.classes[0].subclasses[1].second == 1);
  CHECK(bisector_partition(plane(7, {{2, 2}})).classes.empty());

  const auto triple = plane(11, {{0, 0}, {1, 0}, {2, 0}});
  const auto tp = bisector_partition(triple);
  CHECK(tp.q() == oracle::bisector_energy(oracle::raw(triple), 11));
  CHECK(tp.pair_count() == 6);
}

TEST_CASE("random sets agree with brute force") {
  std::mt19937_64 rng(20240601);
  for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 19ull}) {
    for (int trial = 0; trial < 12; ++trial) {
      const auto e = random_plane(rng, p, 14);
      const auto raw = oracle::raw(e);
      const auto pi = static_cast<oracle::i64>(p);
      CAPTURE(p);
      CAPTURE(e.size());
      const auto h = distance_histogram(e);
      const auto naive_nu = oracle::nu(raw, pi);
      REQUIRE(h.counts.size() == naive_nu.size());
      for (const auto& [t, c] : h.counts) CHECK(naive_nu.at(t.value) == c);
      CHECK(distance_set(e).size() == oracle::delta(raw, pi).size());
      CHECK(second_moment(e) == oracle::equal_distance_quadruples(raw, pi));
      CHECK(isosceles_count(e) == oracle::isosceles(raw, pi));
      CHECK(rectangle_count(e) == oracle::rectangles(raw, pi));
      CHECK(paraboloid_quadruples(e) == oracle::paraboloid(raw, pi));
      const Count q = q_count(e);
      CHECK(q == oracle::bisector_energy(raw, pi));
      const auto part = bisector_partition(e);
      CHECK(part.q() == q);
      CHECK(bisector_incidences(e) == oracle::incidences(raw, pi));

      Count pairs = 0;
      for (const auto& cls : part.classes) {
        std::uint64_t sub = 0;
        for (const auto& [key, s] : cls.subclasses) sub += s;
        CHECK(sub == cls.size);
        pairs += cls.size;
      }
      Count nonzero = 0;
      for (const auto& [t, c] : naive_nu)
        if (t != 0) nonzero += c;
      CHECK(pairs == nonzero);

      const Count n = e.size();
      if (p % 4 == 3) {
        CHECK(paraboloid_quadruples(e) == rectangle_count(e) + n * n - n);
        CHECK(isosceles_count(e) == bisector_incidences(e) + n * n - n);
      }
    }
  }
}

TEST_CASE("thread count does not change results") {
  std::mt19937_64 rng(99);
  for (std::uint64_t p : {1009ull, 1013ull}) {
    const auto e = random_plane(rng, p, 400);
    for (unsigned threads : {2u, 3u, 4u}) {
      CHECK(second_moment(e, threads) == second_moment(e, 1));
      CHECK(isosceles_count(e, threads) == isosceles_count(e, 1));
      CHECK(rectangle_count(e, threads) == rectangle_count(e, 1));
      CHECK(paraboloid_quadruples(e, threads) == paraboloid_quadruples(e, 1));
      CHECK(q_count(e, threads) == q_count(e, 1));
      CHECK(bisector_incidences(e, threads) == bisector_incidences(e, 1));
    }
    CHECK(q_count(e, 1) == bisector_partition(e).q());
  }
}

TEST_CASE("large modulus takes the sparse index paths") {
  std::mt19937_64 rng(5);
  const auto e = random_plane(rng, 2147483647ull, 60);
  const auto raw = oracle::raw(e);
  CHECK(rectangle_count(e, 2) == oracle::rectangles(raw, 2147483647ll));
  CHECK(paraboloid_quadruples(e, 2) == oracle::paraboloid(raw, 2147483647ll));
  CHECK(q_count(e, 2) == oracle::bisector_energy(raw, 2147483647ll));
}

TEST_CASE("PlaneSet rejects out-of-range coordinates") {
  const auto m = make_modulus(7);
  CHECK_THROWS_AS(PlaneSet(m, {Point2{Scalar(7), Scalar(0)}}), LabError);
  const PlaneSet dup(m, {make_point(1, 1, m), make_point(8, 1, m), make_point(0, 0, m)});
  CHECK(dup.size() == 2);
  CHECK(dup.points()[0] == make_point(0, 0, m));
}
