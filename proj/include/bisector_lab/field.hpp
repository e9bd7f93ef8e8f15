#pragma once

// Prime-field context and exact residue arithmetic.

#include <compare>
#include <cstdint>
#include <string>

#include "bisector_lab/error.hpp"

namespace bisector_lab {

/// Exact unsigned accumulator for every counting engine.
using Count = unsigned __int128;

std::string to_string(Count value);

/// A field element stored as its canonical residue in [0, p).
struct Scalar {
  std::uint32_t value = 0;

  constexpr Scalar() = default;
  constexpr explicit Scalar(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(Scalar, Scalar) = default;
};

/// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime_u64(std::uint64_t n) noexcept;

/// Validated odd prime modulus p < 2^31.
///
/// Products of two residues fit in 62 bits, so every reduction goes through a
/// Barrett step on 64-bit inputs instead of a hardware division.
class PrimeModulus {
 public:
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t mod4() const noexcept { return p_ & 3u; }
  bool anisotropic() const noexcept { return mod4() == 3; }

  /// Reduces any 64-bit value.
  std::uint32_t reduce(std::uint64_t x) const noexcept {
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    auto r = x - q * p_;
    if (r >= p_) r -= p_;
    return static_cast<std::uint32_t>(r);
  }

  Scalar scalar(std::int64_t v) const noexcept {
    const std::int64_t r = v % static_cast<std::int64_t>(p_);
    return Scalar(static_cast<std::uint32_t>(r < 0 ? r + p_ : r));
  }

  Scalar add(Scalar a, Scalar b) const noexcept {
    std::uint32_t s = a.value + b.value;
    if (s >= p_) s -= p_;
    return Scalar(s);
  }
  Scalar sub(Scalar a, Scalar b) const noexcept {
    return Scalar(a.value >= b.value ? a.value - b.value : a.value + p_ - b.value);
  }
  Scalar neg(Scalar a) const noexcept { return Scalar(a.value == 0 ? 0 : p_ - a.value); }
  Scalar mul(Scalar a, Scalar b) const noexcept {
    return Scalar(reduce(static_cast<std::uint64_t>(a.value) * b.value));
  }
  Scalar sqr(Scalar a) const noexcept { return mul(a, a); }
  Scalar pow(Scalar a, std::uint64_t e) const noexcept;

  friend bool operator==(const PrimeModulus& a, const PrimeModulus& b) noexcept { return a.p_ == b.p_; }

 private:
  friend PrimeModulus make_modulus(std::uint64_t n);
  explicit PrimeModulus(std::uint32_t p);

  std::uint32_t p_;
  std::uint64_t barrett_;
};

/// Throws LabError{NotPrime, NotOdd, ModulusOutOfRange}.
PrimeModulus make_modulus(std::uint64_t n);

/// Throws LabError{ZeroInverse} for a = 0.
Scalar fp_inv(Scalar a, const PrimeModulus& m);

/// Euler's criterion; zero counts as a square.
bool fp_is_square(Scalar a, const PrimeModulus& m);

}  // namespace bisector_lab
