#include "bisector_lab/geom2.hpp"

namespace bisector_lab {

Point2 make_point(std::int64_t x1, std::int64_t x2, const PrimeModulus& m) {
  return Point2{m.scalar(x1), m.scalar(x2)};
}

Point2 add(const Point2& a, const Point2& b, const PrimeModulus& m) {
  return Point2{m.add(a.x1, b.x1), m.add(a.x2, b.x2)};
}

Point2 sub(const Point2& a, const Point2& b, const PrimeModulus& m) {
  return Point2{m.sub(a.x1, b.x1), m.sub(a.x2, b.x2)};
}

Scalar dot(const Point2& u, const Point2& v, const PrimeModulus& m) {
  const std::uint64_t s = static_cast<std::uint64_t>(u.x1.value) * v.x1.value +
                          static_cast<std::uint64_t>(u.x2.value) * v.x2.value;
  return Scalar(m.reduce(s));
}

Scalar norm(const Point2& a, const PrimeModulus& m) { return dot(a, a, m); }

Scalar dist2(const Point2& x, const Point2& y, const PrimeModulus& m) { return norm(sub(x, y, m), m); }

bool is_corner(const Point2& a, const Point2& b, const Point2& c, const PrimeModulus& m) {
  return dot(sub(b, a, m), sub(c, a, m), m).value == 0;
}

bool is_rectangle(const Point2& a, const Point2& b, const Point2& c, const Point2& d,
                  const PrimeModulus& m) {
  return is_corner(a, b, d, m) && is_corner(b, a, c, m) && is_corner(c, b, d, m) &&
         is_corner(d, a, c, m);
}

bool collinear(const Point2& a, const Point2& b, const Point2& c, const PrimeModulus& m) {
  const Point2 u = sub(b, a, m);
  const Point2 v = sub(c, a, m);
  return m.mul(u.x1, v.x2) == m.mul(u.x2, v.x1);
}

bool is_degenerate_quad(const Point2& a, const Point2& b, const Point2& c, const Point2& d,
                        const PrimeModulus& m) {
  // Anchor the line on a and the first point distinct from it.
  const Point2* other = nullptr;
  for (const Point2* q : {&b, &c, &d}) {
    if (*q != a) {
      other = q;
      break;
    }
  }
  if (other == nullptr) return true;
  return collinear(a, *other, b, m) && collinear(a, *other, c, m) && collinear(a, *other, d, m);
}

CanonicalLine canonical_line(Scalar n1, Scalar n2, Scalar c, const PrimeModulus& m) {
  if (n1.value != 0) {
    const Scalar inv = fp_inv(n1, m);
    return CanonicalLine{Scalar(1), m.mul(n2, inv), m.mul(c, inv)};
  }
  if (n2.value != 0) {
    const Scalar inv = fp_inv(n2, m);
    return CanonicalLine{Scalar(0), Scalar(1), m.mul(c, inv)};
  }
  throw LabError(ErrorCode::InvalidArgument, "line normal is the zero vector");
}

CanonicalLine bisector(const Point2& a, const Point2& b, const PrimeModulus& m) {
  if (dist2(a, b, m).value == 0)
    throw LabError(ErrorCode::IsotropicOrEqualPair, "bisector needs ||a - b|| != 0");
  const Point2 d = sub(b, a, m);
  const Scalar two(2 % m.p());
  return canonical_line(m.mul(two, d.x1), m.mul(two, d.x2), m.sub(norm(b, m), norm(a, m)), m);
}

bool on_line(const Point2& c, const CanonicalLine& l, const PrimeModulus& m) {
  return dot(Point2{l.n1, l.n2}, c, m) == l.c;
}

LiftedPoint lift(const Point2& a, const PrimeModulus& m) { return LiftedPoint{a.x1, a.x2, norm(a, m)}; }

}  // namespace bisector_lab
