#include <doctest.h>

#include <set>

#include "bisector_lab/gen.hpp"

using namespace bisector_lab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const LabError& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("genspec round trip") {
  const auto s = parse_genspec("circle:7:0:5:cx=1,r=3");
  CHECK(s.family == Family::Circle);
  CHECK(s.p == 7);
  CHECK(s.size == 0);
  CHECK(s.seed == 5);
  CHECK(s.param("cx", 0) == 1);
  CHECK(s.param("cy", 9) == 9);
  CHECK(parse_genspec(to_string(s)).params == s.params);
  CHECK(to_string(parse_genspec("random_plane:11:10:42")) == "random_plane:11:10:42");
  CHECK(code_of([] { parse_genspec("random_plane:11:10"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_genspec("blob:11:10:1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_genspec("random_plane:11:x:1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_genspec("random_plane:11:1:1:a"); }) == ErrorCode::ParseError);
  for (auto f : {Family::RandomPlane, Family::Cartesian, Family::Circle, Family::LineSubset, Family::RandomResidue,
                 Family::ArithmeticProgression})
    CHECK(parse_family(to_string(f)) == f);
}

TEST_CASE("circle family") {
  const auto e = generate_plane(parse_genspec("circle:7:0:0"));
  CHECK(e.size() == 8);
  const auto& m = e.modulus();
  for (const auto& q : e.points()) CHECK(norm(q, m) == Scalar(1));
  std::size_t direct = 0;
  for (std::uint32_t x = 0; x < 7; ++x)
    for (std::uint32_t y = 0; y < 7; ++y) direct += (x * x + y * y) % 7 == 1;
  CHECK(direct == 8);

  const auto shifted = generate_plane(parse_genspec("circle:13:0:0:cx=3,cy=4,r=5"));
  for (const auto& q : shifted.points())
    CHECK(dist2(q, make_point(3, 4, shifted.modulus()), shifted.modulus()) == Scalar(5));
  const auto sub = generate_plane(parse_genspec("circle:101:10:3"));
  CHECK(sub.size() == 10);
}

TEST_CASE("cartesian, line and progression families") {
  const auto cart = generate_plane(parse_genspec("cartesian:7:2:0"));
  CHECK(cart.size() == 4);
  const auto random_cart = generate_plane(parse_genspec("cartesian:101:6:9:random=1"));
  CHECK(random_cart.size() == 36);
  const auto line = generate_plane(parse_genspec("line_subset:11:5:2:x0=1,y0=2,dx=3,dy=4"));
  CHECK(line.size() == 5);
  for (const auto& q : line.points())
    CHECK(collinear(make_point(1, 2, line.modulus()), make_point(4, 6, line.modulus()), q, line.modulus()));
  const auto ap = generate_residue(parse_genspec("arithmetic_progression:11:4:0:a=3,d=5"));
  CHECK(ap == ResidueSet(make_modulus(11), {Scalar(3), Scalar(8), Scalar(2), Scalar(7)}));
  CHECK(code_of([] { generate_residue(parse_genspec("arithmetic_progression:11:4:0:d=0")); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { generate_plane(parse_genspec("random_residue:11:4:0")); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("random families are deterministic and exact size") {
  for (std::uint64_t size : {0ull, 1ull, 10ull, 60ull, 100ull, 121ull}) {
    const auto spec = "random_plane:11:" + std::to_string(size) + ":42";
    const auto a = generate_plane(parse_genspec(spec));
    const auto b = generate_plane(parse_genspec(spec));
    CHECK(a.size() == size);
    CHECK(std::equal(a.points().begin(), a.points().end(), b.points().begin(), b.points().end()));
  }
  const auto x = generate_plane(parse_genspec("random_plane:11:10:42"));
  const auto y = generate_plane(parse_genspec("random_plane:11:10:43"));
  CHECK_FALSE(std::equal(x.points().begin(), x.points().end(), y.points().begin(), y.points().end()));
  for (std::uint64_t size : {1ull, 50ull, 90ull, 101ull}) {
    const auto r = generate_residue(parse_genspec("random_residue:101:" + std::to_string(size) + ":7"));
    CHECK(r.size() == size);
    CHECK(r == generate_residue(parse_genspec("random_residue:101:" + std::to_string(size) + ":7")));
  }
  CHECK(code_of([] { generate(parse_genspec("random_plane:7:50:1")); }) == ErrorCode::SizeTooLarge);
  CHECK(code_of([] { generate(parse_genspec("random_residue:7:8:1")); }) == ErrorCode::SizeTooLarge);
  CHECK(code_of([] { generate(parse_genspec("random_plane:9:3:1")); }) == ErrorCode::NotPrime);
  CHECK(std::holds_alternative<ResidueSet>(generate(parse_genspec("random_residue:7:3:1"))));
}

TEST_CASE("subset enumeration") {
  const auto m3 = make_modulus(3);
  std::size_t count = 0;
  std::set<std::vector<Point2>> seen;
  enumerate_subsets(m3, std::nullopt, [&](const PlaneSet& e) {
    ++count;
    seen.insert({e.points().begin(), e.points().end()});
  });
  CHECK(count == 512);
  CHECK(seen.size() == 512);

  std::vector<std::vector<Point2>> pairs;
  enumerate_subsets(m3, 2, [&](const PlaneSet& e) { pairs.push_back({e.points().begin(), e.points().end()}); });
  CHECK(pairs.size() == 36);
  CHECK(std::is_sorted(pairs.begin(), pairs.end()));

  CHECK(code_of([] { enumerate_subsets(make_modulus(7), std::nullopt, [](const PlaneSet&) {}); }) ==
        ErrorCode::TooLarge);

  std::size_t r = 0;
  enumerate_residue_subsets(make_modulus(5), 2, [&](const ResidueSet&) { ++r; });
  CHECK(r == 10);
  std::vector<std::vector<Scalar>> triples;
  enumerate_residue_subsets(make_modulus(7), 3,
                            [&](const ResidueSet& a) { triples.push_back({a.elems().begin(), a.elems().end()}); });
  CHECK(triples.size() == 35);
  CHECK(std::is_sorted(triples.begin(), triples.end()));
  CHECK(code_of([] { enumerate_residue_subsets(make_modulus(101), 4, [](const ResidueSet&) {}); }) ==
        ErrorCode::TooLarge);
  CHECK(binomial(101, 4) == 4082925);
  CHECK(binomial(3, 5) == 0);
}
