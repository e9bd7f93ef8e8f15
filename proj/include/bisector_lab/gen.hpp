#pragma once

// Deterministic point-set and residue-set generators, and exhaustive subset
// enumeration for small fields.
//
// A GenSpec round-trips through the string form family:p:size:seed[:k=v,...].
// Random families draw from a counter-based stream keyed by
// (seed, family, p, size), so output never depends on call order.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "bisector_lab/distcount.hpp"
#include "bisector_lab/sumprod.hpp"

namespace bisector_lab {

enum class Family { RandomPlane, Cartesian, Circle, LineSubset, RandomResidue, ArithmeticProgression };

std::string to_string(Family f);
/// Throws ParseError.
Family parse_family(const std::string& name);
bool is_plane_family(Family f);

/// Family parameters, all reduced mod p when used:
///   cartesian    a, d (A = {a, a+d, ...}), random=1 for a random A instead
///   circle       cx, cy, r (the circle ||x - c|| = r; size 0 keeps all of it)
///   line_subset  x0, y0, dx, dy
///   arithmetic_progression  a, d
/// For cartesian, size is |A| and the set has size^2 points.
struct GenSpec {
  Family family = Family::RandomPlane;
  std::uint64_t p = 0;
  std::uint64_t size = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::int64_t> params;

  std::int64_t param(const std::string& key, std::int64_t fallback) const;
};

/// Throws ParseError.
GenSpec parse_genspec(const std::string& text);
std::string to_string(const GenSpec& spec);

using GeneratedSet = std::variant<PlaneSet, ResidueSet>;

/// Throws SizeTooLarge, InvalidArgument, and the modulus errors.
GeneratedSet generate(const GenSpec& spec);
PlaneSet generate_plane(const GenSpec& spec);
ResidueSet generate_residue(const GenSpec& spec);

constexpr std::uint64_t kEnumerationLimit = 1'000'000;

/// Visits every subset of F_p^2 (only for p^2 <= 16) in binary counting order
/// over the sorted ground set, or, with k given, every k-subset in
/// lexicographic order provided C(p^2, k) <= limit. Throws TooLarge.
void enumerate_subsets(const PrimeModulus& m, std::optional<std::size_t> k,
                       const std::function<void(const PlaneSet&)>& visit, std::uint64_t limit = kEnumerationLimit);

/// Visits every k-subset of F_p in lexicographic order. Throws TooLarge
/// when C(p, k) exceeds the limit.
void enumerate_residue_subsets(const PrimeModulus& m, std::size_t k,
                               const std::function<void(const ResidueSet&)>& visit,
                               std::uint64_t limit = kEnumerationLimit);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace bisector_lab
