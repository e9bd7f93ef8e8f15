#include <doctest.h>

#include <cmath>
#include <random>

#include "bisector_lab/incidence3.hpp"
#include "oracles.hpp"

using namespace bisector_lab;

namespace {

Point3 p3(std::uint32_t a, std::uint32_t b, std::uint32_t c) { return {Scalar(a), Scalar(b), Scalar(c)}; }

CanonicalPlane plane(std::uint32_t n1, std::uint32_t n2, std::uint32_t n3, std::uint32_t c, const PrimeModulus& m) {
  return make_plane(Scalar(n1), Scalar(n2), Scalar(n3), Scalar(c), m);
}

std::vector<Scalar> scalars(std::initializer_list<std::uint32_t> xs) {
  std::vector<Scalar> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("incidence_count examples") {
  const auto m = make_modulus(7);
  CHECK(incidence_count(IncidenceConfig(m, {}, {plane(0, 0, 1, 0, m)})) == 0);
  CHECK(incidence_count(IncidenceConfig(m, {p3(0, 0, 0)}, {plane(0, 0, 1, 0, m)})) == 1);

  std::vector<Point3> cube;
  for (std::uint32_t i = 0; i < 8; ++i) cube.push_back(p3(i & 1, (i >> 1) & 1, (i >> 2) & 1));
  const IncidenceConfig cfg(m, cube, {plane(1, 0, 0, 0, m), plane(1, 0, 0, 1, m)});
  CHECK(incidence_count(cfg) == 8);

  const auto rep = rudnev_report(cfg, m);
  CHECK(rep.mode == CheckMode::Report);
  CHECK(std::get<Rational>(rep.lhs) == 8);
  // |R| > |S| swaps roles, and k = collinear_rich_k + 1 = 2.
  CHECK(to_double(rep.rhs) == doctest::Approx(16.0 / 7 + std::sqrt(2.0) * 8 + 2 * 8));
  CHECK_FALSE(rep.note.empty());
  const IncidenceConfig flat(m, {p3(0, 0, 0)}, {plane(0, 0, 1, 0, m), plane(0, 1, 0, 0, m)});
  const auto direct = rudnev_report(flat, m);
  CHECK(direct.note.empty());
  CHECK(to_double(direct.rhs) == doctest::Approx(2.0 / 7 + 2 + 2 * 2));

  const auto empty = rudnev_report(IncidenceConfig(m, {}, {}), m);
  CHECK(to_double(empty.ratio) == 0.0);
}

TEST_CASE("make_plane normalizes") {
  const auto m = make_modulus(7);
  CHECK(plane(2, 4, 6, 1, m) == plane(1, 2, 3, 4, m));
  CHECK(plane(0, 3, 0, 3, m) == plane(0, 1, 0, 1, m));
  CHECK_THROWS_AS(plane(0, 0, 0, 1, m), LabError);
  CHECK(on_plane(p3(1, 2, 3), plane(1, 1, 1, 6, m), m));
  CHECK_FALSE(on_plane(p3(1, 2, 4), plane(1, 1, 1, 6, m), m));
}

TEST_CASE("collinear_rich_k") {
  const auto m = make_modulus(7);
  std::vector<Point3> axis;
  for (std::uint32_t t = 0; t < 4; ++t) axis.push_back(p3(t, 0, 0));
  CHECK(collinear_rich_k(IncidenceConfig(m, axis, {plane(0, 1, 0, 0, m), plane(0, 0, 1, 0, m)})) == 2);
  CHECK(collinear_rich_k(IncidenceConfig(m, {p3(1, 1, 1)}, {plane(1, 0, 0, 1, m)})) == 1);
  // Two points whose line lies in no plane.
  CHECK(collinear_rich_k(IncidenceConfig(m, {p3(0, 0, 0), p3(1, 1, 1)}, {plane(1, 0, 0, 5, m)})) == 1);
}

TEST_CASE("collinear_rich_k against line enumeration") {
  std::mt19937_64 rng(17);
  const std::uint32_t p = 5;
  const auto m = make_modulus(p);
  auto on = [&](const Point3& r, const CanonicalPlane& s) { return on_plane(r, s, m); };
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point3> pts;
    std::vector<CanonicalPlane> planes;
    for (int i = 0; i < 2 + static_cast<int>(rng() % 10); ++i) pts.push_back(p3(rng() % p, rng() % p, rng() % 2));
    for (int i = 0; i < 1 + static_cast<int>(rng() % 8); ++i) {
      std::uint32_t n1 = rng() % p, n2 = rng() % p, n3 = rng() % 2;
      if (n1 + n2 + n3 == 0) n3 = 1;
      planes.push_back(plane(n1, n2, n3, rng() % p, m));
    }
    const IncidenceConfig cfg(m, pts, planes);
    // A line through r != s lies in a plane iff the plane holds r and s; count
    // the points of R on the line by a collinearity test.
    std::uint64_t best = 1;
    const auto ps = cfg.points();
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        std::uint64_t contained = 0, on_line = 0;
        for (const auto& s : cfg.planes()) contained += on(ps[i], s) && on(ps[j], s);
        const std::int64_t d[3] = {static_cast<std::int64_t>(ps[j].x1.value) - ps[i].x1.value,
                                   static_cast<std::int64_t>(ps[j].x2.value) - ps[i].x2.value,
                                   static_cast<std::int64_t>(ps[j].x3.value) - ps[i].x3.value};
        for (const auto& r : ps) {
          const std::int64_t e[3] = {static_cast<std::int64_t>(r.x1.value) - ps[i].x1.value,
                                     static_cast<std::int64_t>(r.x2.value) - ps[i].x2.value,
                                     static_cast<std::int64_t>(r.x3.value) - ps[i].x3.value};
          on_line += oracle::mod(d[1] * e[2] - d[2] * e[1], p) == 0 && oracle::mod(d[2] * e[0] - d[0] * e[2], p) == 0 &&
                     oracle::mod(d[0] * e[1] - d[1] * e[0], p) == 0;
        }
        best = std::max(best, std::min(contained, on_line));
      }
    CHECK(collinear_rich_k(cfg) == best);
    CHECK(collinear_rich_k(cfg) <= std::max<std::size_t>(1, std::min(cfg.points().size(), cfg.planes().size())));
  }
}

TEST_CASE("build_e4_config") {
  const auto m = make_modulus(7);
  const auto single = build_e4_config(scalars({3}), scalars({2}), scalars({5}), m);
  CHECK(single.points().size() == 1);
  CHECK(single.planes().size() == 1);
  CHECK(incidence_count(single) == 1);
  CHECK(incidence_count(build_e4_config(scalars({0, 1}), scalars({0}), scalars({0}), m)) == 2);
  CHECK_THROWS_AS(build_e4_config({}, scalars({0}), scalars({0}), m), LabError);

  std::mt19937_64 rng(3);
  for (std::uint32_t p : {7u, 11u, 13u}) {
    const auto mp = make_modulus(p);
    for (int trial = 0; trial < 5; ++trial) {
      auto pick = [&] {
        std::vector<std::int64_t> raw;
        std::vector<Scalar> s;
        for (std::uint32_t v = 0; v < p; ++v)
          if (rng() % 3 == 0) raw.push_back(v), s.emplace_back(v);
        if (s.empty()) raw.push_back(1), s.emplace_back(1);
        return std::pair{raw, s};
      };
      const auto [xr, xs] = pick();
      const auto [ur, us] = pick();
      const auto [tr, ts] = pick();
      const auto cfg = build_e4_config(xs, us, ts, mp);
      const Count fast = incidence_count(cfg);
      CHECK(fast == oracle::six_fold(xr, ur, tr, p));
      CHECK(incidence_count(cfg, 3) == fast);
    }
  }
}

TEST_CASE("keyed incidence path matches the double loop") {
  const auto m = make_modulus(101);
  std::mt19937_64 rng(8);
  std::vector<Point3> pts;
  std::vector<CanonicalPlane> planes;
  for (int i = 0; i < 4000; ++i) pts.push_back(p3(rng() % 101, rng() % 101, rng() % 101));
  for (int i = 0; i < 3000; ++i) planes.push_back(plane(rng() % 3, rng() % 101, 1, rng() % 101, m));
  const IncidenceConfig cfg(m, pts, planes);
  REQUIRE(cfg.points().size() * cfg.planes().size() > 10'000'000);
  Count direct = 0;
  for (const auto& s : cfg.planes())
    for (const auto& r : cfg.points()) direct += on_plane(r, s, m);
  CHECK(incidence_count(cfg) == direct);
  CHECK(incidence_count(cfg, 4) == direct);
}
