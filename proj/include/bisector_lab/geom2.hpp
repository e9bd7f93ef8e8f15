#pragma once

// Points, distances, corners, rectangles and perpendicular bisectors in F_p^2.

#include <compare>

#include "bisector_lab/field.hpp"

namespace bisector_lab {

struct Point2 {
  Scalar x1;
  Scalar x2;

  friend constexpr auto operator<=>(const Point2&, const Point2&) = default;
};

/// The line {X : n1*X1 + n2*X2 = c}, scaled so the first nonzero normal
/// coordinate is 1. Proportional equations normalize to the same triple.
struct CanonicalLine {
  Scalar n1;
  Scalar n2;
  Scalar c;

  friend constexpr auto operator<=>(const CanonicalLine&, const CanonicalLine&) = default;
};

/// Paraboloid lift (a, ||a||).
struct LiftedPoint {
  Scalar x1;
  Scalar x2;
  Scalar x3;

  friend constexpr auto operator<=>(const LiftedPoint&, const LiftedPoint&) = default;
};

Point2 make_point(std::int64_t x1, std::int64_t x2, const PrimeModulus& m);

Point2 add(const Point2& a, const Point2& b, const PrimeModulus& m);
Point2 sub(const Point2& a, const Point2& b, const PrimeModulus& m);
Scalar dot(const Point2& u, const Point2& v, const PrimeModulus& m);
/// ||a|| = a1^2 + a2^2.
Scalar norm(const Point2& a, const PrimeModulus& m);

Scalar dist2(const Point2& x, const Point2& y, const PrimeModulus& m);

/// Right angle at a: (b - a) . (c - a) = 0.
bool is_corner(const Point2& a, const Point2& b, const Point2& c, const PrimeModulus& m);

/// Triples (a,b,d), (b,a,c), (c,b,d), (d,a,c) are all corners.
bool is_rectangle(const Point2& a, const Point2& b, const Point2& c, const Point2& d,
                  const PrimeModulus& m);

/// True iff a, b, c lie on one affine line (always true with a repeated point).
bool collinear(const Point2& a, const Point2& b, const Point2& c, const PrimeModulus& m);

/// True iff all four points lie on one affine line.
bool is_degenerate_quad(const Point2& a, const Point2& b, const Point2& c, const Point2& d,
                        const PrimeModulus& m);

/// Canonical form of n1*X1 + n2*X2 = c. Throws InvalidArgument when n = 0.
CanonicalLine canonical_line(Scalar n1, Scalar n2, Scalar c, const PrimeModulus& m);

/// The line 2(b - a) . X = ||b|| - ||a||.
/// Throws IsotropicOrEqualPair when ||a - b|| = 0.
CanonicalLine bisector(const Point2& a, const Point2& b, const PrimeModulus& m);

bool on_line(const Point2& c, const CanonicalLine& l, const PrimeModulus& m);

LiftedPoint lift(const Point2& a, const PrimeModulus& m);

}  // namespace bisector_lab
