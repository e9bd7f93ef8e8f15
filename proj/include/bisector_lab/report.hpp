#pragma once

// Outcome record shared by every identity, inequality and ratio check.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bisector_lab/field.hpp"

namespace bisector_lab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational to_rational(Count value);
std::string to_string(const Rational& q);

/// A check operand: exact when the underlying statement is exact, a double
/// when it involves irrational powers or logarithms.
using Quantity = std::variant<Rational, double>;

double to_double(const Quantity& q);
std::string to_string(const Quantity& q);

enum class CheckMode { Assert, Report };

/// How an ASSERT row compares lhs with rhs.
enum class Relation { LessEqual, Less, Equal };

struct CheckReport {
  std::string name;
  Quantity lhs = Rational(0);
  Quantity rhs = Rational(0);
  /// lhs / rhs; 0 when both sides are 0.
  Quantity ratio = Rational(0);
  CheckMode mode = CheckMode::Report;
  Relation relation = Relation::LessEqual;
  bool pass = true;
  bool skipped = false;
  std::string context;
  /// Skip reason or a convention the values depend on.
  std::string note;
  /// Named intermediate values, in a fixed order.
  std::vector<std::pair<std::string, Quantity>> details;
};

/// Fills ratio and, for Assert mode, pass. Assert rows must be exact.
CheckReport make_assert(std::string name, Rational lhs, Rational rhs, Relation relation, std::string context);
CheckReport make_report(std::string name, Quantity lhs, Quantity rhs, std::string context);
/// A gated check that could not run on this input.
CheckReport make_skipped(std::string name, CheckMode mode, std::string context, std::string reason);

}  // namespace bisector_lab
