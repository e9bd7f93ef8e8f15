#include "bisector_lab/report.hpp"

#include <charconv>
#include <limits>

namespace bisector_lab {

Rational to_rational(Count value) {
  BigInt v = static_cast<std::uint64_t>(value >> 64);
  v <<= 64;
  v += static_cast<std::uint64_t>(value);
  return Rational(v);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Quantity& q) {
  if (const auto* r = std::get_if<Rational>(&q)) return r->convert_to<double>();
  return std::get<double>(q);
}

std::string to_string(const Quantity& q) {
  if (const auto* r = std::get_if<Rational>(&q)) return to_string(*r);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(q));
  return std::string(buf, res.ptr);
}

namespace {

Quantity ratio_of(const Quantity& lhs, const Quantity& rhs) {
  const auto* l = std::get_if<Rational>(&lhs);
  const auto* r = std::get_if<Rational>(&rhs);
  if (l && r) {
    if (*r == 0) return *l == 0 ? Quantity(Rational(0)) : Quantity(std::numeric_limits<double>::infinity());
    return Rational(*l / *r);
  }
  const double a = to_double(lhs), b = to_double(rhs);
  if (b == 0) return a == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return a / b;
}

}  // namespace

CheckReport make_assert(std::string name, Rational lhs, Rational rhs, Relation relation, std::string context) {
  CheckReport r;
  r.name = std::move(name);
  r.mode = CheckMode::Assert;
  r.relation = relation;
  switch (relation) {
    case Relation::LessEqual: r.pass = lhs <= rhs; break;
    case Relation::Less: r.pass = lhs < rhs; break;
    case Relation::Equal: r.pass = lhs == rhs; break;
  }
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.ratio = ratio_of(r.lhs, r.rhs);
  r.context = std::move(context);
  return r;
}

CheckReport make_report(std::string name, Quantity lhs, Quantity rhs, std::string context) {
  CheckReport r;
  r.name = std::move(name);
  r.mode = CheckMode::Report;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.ratio = ratio_of(r.lhs, r.rhs);
  r.context = std::move(context);
  return r;
}

CheckReport make_skipped(std::string name, CheckMode mode, std::string context, std::string reason) {
  CheckReport r;
  r.name = std::move(name);
  r.mode = mode;
  r.skipped = true;
  r.context = std::move(context);
  r.note = std::move(reason);
  return r;
}

}  // namespace bisector_lab
