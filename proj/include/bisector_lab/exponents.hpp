#pragma once

// Exact exponent bookkeeping for self-bounding inequalities
//   N^P <= X * sum_i N^{alpha_i} X^{beta_i} R^{gamma_i},
// where N = |E|, X is the unknown and R = N^g is a parameter. Every result is
// affine in g with rational coefficients.

#include <string>
#include <vector>

#include "bisector_lab/report.hpp"

namespace bisector_lab {

struct ExponentTerm {
  Rational alpha;  // exponent of |E|
  Rational beta;   // exponent of the unknown
  Rational gamma;  // exponent of the parameter R

  friend bool operator==(const ExponentTerm&, const ExponentTerm&) = default;
};

struct ExponentExpr {
  Rational lhs_power;
  std::vector<ExponentTerm> terms;  // deduplicated on construction

  ExponentExpr(Rational lhs_power, std::vector<ExponentTerm> terms);
};

/// c0 + c1 * g.
struct AffineExponent {
  Rational constant;
  Rational slope;

  Rational at(const Rational& g) const { return constant + slope * g; }
  friend bool operator==(const AffineExponent&, const AffineExponent&) = default;
};

enum class Unknown { Delta, Rect };

/// Per term, the exponent e with X >= N^e when that term dominates:
/// e = (P - alpha - gamma g) / (1 + beta). Throws UnsolvableTerm if 1 + beta <= 0.
/// For Unknown::Rect the roles of beta and gamma swap, so g is the |Delta| exponent.
std::vector<AffineExponent> exponent_solve(const ExponentExpr& bound, Unknown unknown = Unknown::Delta);

/// The guaranteed exponent min_i e_i(g).
Rational min_exponent(const std::vector<AffineExponent>& solved, const Rational& g);

/// Whether N^P = X^{1+beta} N^alpha R^gamma holds exactly at X = N^e, R = N^g.
bool resubstitutes(const Rational& lhs_power, const ExponentTerm& term, const Rational& e, const Rational& g);

/// The |Delta| inequality obtained from n^4 <= |Delta| n (T + n) and
/// T << n^2 log n + n^a Q^b with Q << |Delta| (rect + n^2).
ExponentExpr isosceles_chain(const Rational& a, const Rational& b);

struct EpsilonBalance {
  Rational epsilon;
  Rational exponent;
};

/// Solves 1/2 + eps/2 = (9 - 27 eps)/17 and returns eps with 3/2 + eps/2.
EpsilonBalance epsilon_balance();

struct ExponentRow {
  std::string name;
  Rational value;
  std::string derivation;
};

/// The exact exponent table behind the headline bounds.
std::vector<ExponentRow> exponent_table();

}  // namespace bisector_lab
