#pragma once

// Counting quantities over a planar point set: distance set and histogram,
// isosceles triples, rectangles, paraboloid quadruples and the bisector
// energy with its line/lifted-difference partition.
//
// Every count is over ORDERED tuples and accumulates in 128-bit integers.
// Engines that take a thread count return identical values for any count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bisector_lab/field.hpp"
#include "bisector_lab/geom2.hpp"

namespace bisector_lab {

/// A deduplicated point set in F_p^2, iterated in sorted coordinate order.
class PlaneSet {
 public:
  /// Throws ModulusMismatch if a coordinate is not a canonical residue mod p.
  PlaneSet(PrimeModulus m, std::vector<Point2> points);
  explicit PlaneSet(PrimeModulus m) : m_(m) {}

  const PrimeModulus& modulus() const noexcept { return m_; }
  std::span<const Point2> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  bool contains(const Point2& q) const;

 private:
  PrimeModulus m_;
  std::vector<Point2> points_;
};

/// nu(t) for every realized distance t, sorted by t.
struct DistanceHistogram {
  std::vector<std::pair<Scalar, Count>> counts;

  Count at(Scalar t) const;
  Count total() const;
};

/// Everything one pass over (c, a) in E x E yields.
struct DistanceProfile {
  DistanceHistogram histogram;
  /// sum_c sum_{t != 0} m_c(t)^2, i.e. T(E).
  Count isosceles = 0;
  /// sum_c sum_t m_c(t)^2, including the zero distance.
  Count equidistant_triples = 0;
};

DistanceProfile distance_profile(const PlaneSet& e, unsigned threads = 1);

/// Delta(E), including 0 whenever E is nonempty.
std::vector<Scalar> distance_set(const PlaneSet& e);
/// |Delta(E) \ {0}|.
std::size_t nonzero_distance_count(const PlaneSet& e);

DistanceHistogram distance_histogram(const PlaneSet& e, unsigned threads = 1);

/// sum_t nu(t)^2.
Count second_moment(const PlaneSet& e, unsigned threads = 1);
Count second_moment(const DistanceHistogram& h);

/// T(E) = #{(a,b,c) : ||a-c|| = ||b-c|| != 0}.
Count isosceles_count(const PlaneSet& e, unsigned threads = 1);

/// Ordered non-degenerate rectangles. For p = 3 mod 4 this groups ordered
/// pairs by (a + c, ||a - c||) and subtracts the 2|E|^2 - |E| collinear
/// solutions; otherwise each key class is scanned for collinear quadruples.
Count rectangle_count(const PlaneSet& e, unsigned threads = 1);

/// #{(a,b,c,d) : a != b, c != d, (b - a, ||b|| - ||a||) = (d - c, ||d|| - ||c||)}.
Count paraboloid_quadruples(const PlaneSet& e, unsigned threads = 1);

/// |Q(E)| = sum_i |S_i|^2 over bisector classes of ordered pairs with ||a - b|| != 0.
Count q_count(const PlaneSet& e, unsigned threads = 1);

/// #{(a,b,c) : ||a - b|| != 0, c on l_ab}.
Count bisector_incidences(const PlaneSet& e, unsigned threads = 1);
Count bisector_incidences(const PlaneSet& e, const DistanceProfile& profile);

/// The exact vector (2(b - a), ||b|| - ||a||) that keys a subclass S_{i,lambda}.
struct LiftedDifference {
  Scalar d1;
  Scalar d2;
  Scalar d3;

  friend constexpr auto operator<=>(const LiftedDifference&, const LiftedDifference&) = default;
};

LiftedDifference lifted_difference(const Point2& a, const Point2& b, const PrimeModulus& m);

struct BisectorClass {
  CanonicalLine line;
  std::uint64_t size = 0;
  /// Sorted by key; sizes sum to `size`.
  std::vector<std::pair<LiftedDifference, std::uint64_t>> subclasses;
};

/// Classes sorted by line. Materializes every pair, so intended for sets of
/// moderate size; q_count is the scalable route to |Q(E)|.
struct BisectorPartition {
  std::vector<BisectorClass> classes;

  Count q() const;
  Count subclass_energy() const;
  std::size_t max_subclasses() const;
  Count pair_count() const;
};

BisectorPartition bisector_partition(const PlaneSet& e);

}  // namespace bisector_lab
