#include "bisector_lab/exponents.hpp"

#include <algorithm>

namespace bisector_lab {

ExponentExpr::ExponentExpr(Rational power, std::vector<ExponentTerm> t) : lhs_power(std::move(power)) {
  for (auto& term : t)
    if (std::find(terms.begin(), terms.end(), term) == terms.end()) terms.push_back(std::move(term));
}

std::vector<AffineExponent> exponent_solve(const ExponentExpr& bound, Unknown unknown) {
  std::vector<AffineExponent> out;
  for (const ExponentTerm& t : bound.terms) {
    const Rational& own = unknown == Unknown::Delta ? t.beta : t.gamma;
    const Rational& other = unknown == Unknown::Delta ? t.gamma : t.beta;
    const Rational power = 1 + own;
    if (power <= 0)
      throw LabError(ErrorCode::UnsolvableTerm,
                     "term with unknown exponent " + to_string(own) + " cannot bound the unknown from below");
    out.push_back({(bound.lhs_power - t.alpha) / power, -other / power});
  }
  return out;
}

Rational min_exponent(const std::vector<AffineExponent>& solved, const Rational& g) {
  if (solved.empty()) throw LabError(ErrorCode::InvalidArgument, "no terms to minimize over");
  Rational best = solved.front().at(g);
  for (const auto& e : solved) best = std::min(best, e.at(g));
  return best;
}

bool resubstitutes(const Rational& lhs_power, const ExponentTerm& term, const Rational& e, const Rational& g) {
  return lhs_power == e * (1 + term.beta) + term.alpha + term.gamma * g;
}

ExponentExpr isosceles_chain(const Rational& a, const Rational& b) {
  // n^4 <= |Delta| n T, and n^a Q^b <= n^a |Delta|^b (rect^b + n^{2b}).
  return ExponentExpr(Rational(4), {
                                       {Rational(3), Rational(0), Rational(0)},
                                       {1 + a + 2 * b, b, Rational(0)},
                                       {1 + a, b, b},
                                   });
}

EpsilonBalance epsilon_balance() {
  // a0 + a1 eps = b0 + b1 eps
  const Rational a0(1, 2), a1(1, 2), b0(9, 17), b1(-27, 17);
  const Rational eps = (b0 - a0) / (a1 - b1);
  return {eps, Rational(3, 2) + eps / 2};
}

std::vector<ExponentRow> exponent_table() {
  const auto chain = exponent_solve(isosceles_chain(Rational(5, 3), Rational(4, 15)));
  const auto conjectured = exponent_solve(isosceles_chain(Rational(4, 3), Rational(1, 3)));
  const Rational rect_known(99, 41);
  const Rational at_known_rect = min_exponent(chain, rect_known);
  const auto [eps, growth] = epsilon_balance();
  // p^2 / |A|^{2+eps} >= |A|^{3/2+eps/2} once |A| <= p^{2/(7/2 + 3 eps/2)}.
  const Rational size_condition = Rational(2) / (Rational(7, 2) + 3 * eps / 2);

  return {
      {"delta_exponent_rect_free", chain[1].constant, "min term with no rectangle dependence"},
      {"delta_exponent_rect_slope", chain[2].slope, "coefficient of the rectangle exponent"},
      {"delta_exponent_rect_constant", chain[2].constant, "rectangle-dependent term at exponent 0"},
      {"delta_exponent_rect_99_41", at_known_rect, "rectangle exponent 99/41"},
      {"delta_exponent_minus_half", at_known_rect - Rational(1, 2), "excess over 1/2"},
      {"delta_exponent_rect_2", min_exponent(chain, Rational(2)), "rectangle exponent 2"},
      {"delta_exponent_conjectured", min_exponent(conjectured, Rational(2)),
       "incidence exponents (4/3, 1/3), rectangle exponent 2"},
      {"epsilon", eps, "1/2 + eps/2 = (9 - 27 eps)/17"},
      {"square_difference_exponent", growth, "3/2 + eps/2"},
      {"size_condition_exponent", size_condition, "|A| <= p^e keeps the p^2/|A|^{2+eps} case"},
      {"size_range_exponent", 1 / (Rational(3, 2) - at_known_rect),
       "|E| = p^e where |E|^{e'} meets p^{-1} |E|^{3/2}, e' the rectangle-99/41 exponent"},
  };
}

}  // namespace bisector_lab
