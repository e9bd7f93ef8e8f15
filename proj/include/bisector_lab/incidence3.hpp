#pragma once

// Point-plane incidences in F_p^3 and the collinear-richness parameter that
// the incidence bound is stated with.

#include <cstdint>
#include <span>
#include <vector>

#include "bisector_lab/field.hpp"
#include "bisector_lab/report.hpp"

namespace bisector_lab {

struct Point3 {
  Scalar x1;
  Scalar x2;
  Scalar x3;

  friend constexpr auto operator<=>(const Point3&, const Point3&) = default;
};

/// {X : n1 X1 + n2 X2 + n3 X3 = c}, first nonzero normal coordinate equal to 1.
struct CanonicalPlane {
  Scalar n1;
  Scalar n2;
  Scalar n3;
  Scalar c;

  friend constexpr auto operator<=>(const CanonicalPlane&, const CanonicalPlane&) = default;
};

/// Throws InvalidArgument for a zero normal.
CanonicalPlane make_plane(Scalar n1, Scalar n2, Scalar n3, Scalar c, const PrimeModulus& m);
bool on_plane(const Point3& r, const CanonicalPlane& s, const PrimeModulus& m);

/// Points R and planes S, each sorted and deduplicated.
class IncidenceConfig {
 public:
  IncidenceConfig(PrimeModulus m, std::vector<Point3> points, std::vector<CanonicalPlane> planes);

  const PrimeModulus& modulus() const noexcept { return m_; }
  std::span<const Point3> points() const noexcept { return points_; }
  std::span<const CanonicalPlane> planes() const noexcept { return planes_; }

 private:
  PrimeModulus m_;
  std::vector<Point3> points_;
  std::vector<CanonicalPlane> planes_;
};

/// #{(r, s) in R x S : r on s}.
Count incidence_count(const IncidenceConfig& cfg, unsigned threads = 1);

/// max(1, max over lines l meeting R twice of min(|R cap l|, #{s : l in s})).
std::uint64_t collinear_rich_k(const IncidenceConfig& cfg);

/// I(R, S) against |R||S|/p + |R|^{1/2}|S| + k|S| with k = collinear_rich_k + 1.
/// When |R| > |S| the terms are evaluated for the dual configuration, where
/// points and planes trade places, and the report notes the swap.
CheckReport rudnev_report(const IncidenceConfig& cfg, const PrimeModulus& m);

/// Points (2x, u', -t + x^2 - u'^2) and planes u X - 2x' Y + Z = x'^2 - u^2 - t'
/// over x in `x_values`, u in `u_values`, t in `t_values`. A point-plane pair
/// is incident iff (x + u)^2 - t = (x' + u')^2 - t'. Throws EmptyInput.
IncidenceConfig build_e4_config(std::span<const Scalar> x_values, std::span<const Scalar> u_values,
                                std::span<const Scalar> t_values, const PrimeModulus& m);

}  // namespace bisector_lab
