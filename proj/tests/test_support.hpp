#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bisector_lab/distcount.hpp"
#include "bisector_lab/sumprod.hpp"

namespace test_support {

inline bisector_lab::PlaneSet plane(std::uint64_t p, std::vector<std::pair<std::int64_t, std::int64_t>> pts) {
  const auto m = bisector_lab::make_modulus(p);
  std::vector<bisector_lab::Point2> v;
  for (auto [x, y] : pts) v.push_back(bisector_lab::make_point(x, y, m));
  return bisector_lab::PlaneSet(m, std::move(v));
}

inline bisector_lab::ResidueSet residues(std::uint64_t p, std::vector<std::int64_t> xs) {
  const auto m = bisector_lab::make_modulus(p);
  std::vector<bisector_lab::Scalar> v;
  for (auto x : xs) v.push_back(m.scalar(x));
  return bisector_lab::ResidueSet(m, std::move(v));
}

inline bisector_lab::PlaneSet unit_square() { return plane(7, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
inline bisector_lab::PlaneSet two_points() { return plane(7, {{0, 0}, {1, 0}}); }

/// Up to `max_size` random points; collisions shrink the set.
inline bisector_lab::PlaneSet random_plane(std::mt19937_64& rng, std::uint64_t p, std::size_t max_size) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  const std::size_t n = rng() % (max_size + 1);
  for (std::size_t i = 0; i < n; ++i)
    pts.emplace_back(static_cast<std::int64_t>(rng() % p), static_cast<std::int64_t>(rng() % p));
  return plane(p, std::move(pts));
}

inline bisector_lab::ResidueSet random_residues(std::mt19937_64& rng, std::uint64_t p, std::size_t min_size,
                                                std::size_t max_size) {
  std::vector<std::int64_t> xs;
  const std::size_t n = min_size + rng() % (max_size - min_size + 1);
  for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<std::int64_t>(rng() % p));
  return residues(p, std::move(xs));
}

}  // namespace test_support
