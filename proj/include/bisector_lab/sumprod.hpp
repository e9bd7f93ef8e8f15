#pragma once

// Residue-set machinery over F_p: difference and square sets, representation
// functions, E_4 of the squares, the popular set P and its shifts P_w.
//
// Throughout, D denotes A^2 - A^2 with A^2 = {a^2 : a in A} taken as a set.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bisector_lab/field.hpp"
#include "bisector_lab/report.hpp"

namespace bisector_lab {

/// A deduplicated subset of F_p, iterated in ascending residue order.
class ResidueSet {
 public:
  /// Throws ModulusMismatch if an element is not a canonical residue mod p.
  ResidueSet(PrimeModulus m, std::vector<Scalar> elems);
  explicit ResidueSet(PrimeModulus m) : m_(m) {}

  const PrimeModulus& modulus() const noexcept { return m_; }
  std::span<const Scalar> elems() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  bool contains(Scalar x) const;

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.m_ == b.m_ && a.elems_ == b.elems_;
  }

 private:
  PrimeModulus m_;
  std::vector<Scalar> elems_;
};

/// r(x) for every x with r(x) > 0, sorted by x.
struct RFunction {
  PrimeModulus m;
  std::vector<std::pair<Scalar, std::uint64_t>> counts;

  std::uint64_t at(Scalar x) const;
  Count total() const;
  ResidueSet support() const;
};

/// Throws ModulusMismatch when X and Y live over different moduli.
ResidueSet difference_set(const ResidueSet& x, const ResidueSet& y);
ResidueSet sum_set(const ResidueSet& x, const ResidueSet& y);
ResidueSet square_set(const ResidueSet& a);

struct DistLikeSets {
  ResidueSet squared_differences;     // (A-A)^2
  ResidueSet difference_of_squares;   // (A-A)^2 - (A-A)^2
  ResidueSet sum_of_squares;          // (A-A)^2 + (A-A)^2
  ResidueSet squares_minus_squares;   // A^2 - A^2
  std::optional<ResidueSet> x_minus;  // X - (A-A)^2, when X is given
};

DistLikeSets dist_like_sets(const ResidueSet& a, const ResidueSet* x = nullptr);

/// r_{X-Y}(d) = #{(x, y) in X x Y : x - y = d}. Throws ModulusMismatch.
RFunction r_function(const ResidueSet& x, const ResidueSet& y);

/// E_4(A^2) = sum_d r_D(d)^4.
Count e4_energy(const ResidueSet& a);

/// {x : r(x) >= k}, compared exactly. Throws InvalidArgument unless k > 0.
ResidueSet level_set(const RFunction& r, const Rational& k);

/// |A|^2 / (2 |D|), the popularity threshold |A| / (2K) written out.
Rational popularity_threshold(const ResidueSet& a);
/// P = {x in D : r_D(x) >= |A| / (2K)}.
ResidueSet popular_set_P(const ResidueSet& a);
/// P_w = D cap (P - w).
ResidueSet p_shifted(const ResidueSet& a, Scalar w);
/// T_w = #{(u, v) in P_w x P_w : u - v in P}.
Count t_w(const ResidueSet& a, Scalar w);

/// Everything derived from A that the P/P_w quantities share.
struct PopularData {
  ResidueSet squares;      // A^2
  ResidueSet differences;  // D
  RFunction r;             // r_D
  Rational threshold;
  ResidueSet popular;      // P
};

PopularData popular_data(const ResidueSet& a);
ResidueSet p_shifted(const PopularData& d, Scalar w);
Count t_w(const PopularData& d, Scalar w);

/// (w, T_w) for every w in D, ascending in w.
std::vector<std::pair<Scalar, Count>> t_w_table(const PopularData& d);

/// sum over w in D of T_w.
Count chi(const ResidueSet& a);
Count chi(const PopularData& d);
/// sum over w in D of |P_w|^2, the same sum without the u - v in P filter.
Count shifted_square_mass(const PopularData& d);

struct WProfileRow {
  Scalar w;
  std::uint64_t r;        // r_{P-D}(w)
  std::uint64_t shifted;  // |P_w|
  bool identity;          // r == shifted
};

/// Rows for w in D, sorted by r descending, ties by w ascending.
std::vector<WProfileRow> sorted_w_profile(const ResidueSet& a);
std::vector<WProfileRow> sorted_w_profile(const PopularData& d);

/// W_t = {w : r_{P-D}(w) >= t}, over w in D or, unrestricted, over all of F_p.
ResidueSet w_level_set(const ResidueSet& a, const Rational& t, bool restrict_to_d = true);

struct MKProfile {
  std::size_t size_a = 0;
  Rational m;  // |A - A| / |A|
  Rational k;  // |A^2 - A^2| / |A|
};

/// Throws EmptySet.
MKProfile mk_profile(const ResidueSet& a);

/// #{(a1, a2) in A x A : a1^2 - a2^2 in P}.
Count popular_pair_count(const ResidueSet& a);

}  // namespace bisector_lab
