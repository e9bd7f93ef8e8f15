#include "bisector_lab/field.hpp"

#include <algorithm>
#include <array>

namespace bisector_lab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::IsotropicOrEqualPair: return "IsotropicOrEqualPair";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::Mod4Mismatch: return "Mod4Mismatch";
    case ErrorCode::UnsolvableTerm: return "UnsolvableTerm";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  a %= n;
  while (e != 0) {
    if (e & 1) result = mulmod_u64(result, a, n);
    a = mulmod_u64(a, a, n);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kSmall{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : kSmall) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes are a complete witness set below 3.3 * 10^24.
  for (auto a : kSmall) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint32_t p)
    : p_(p), barrett_(static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / p)) {}

Scalar PrimeModulus::pow(Scalar a, std::uint64_t e) const noexcept {
  Scalar result(1 % p_);
  while (e != 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

PrimeModulus make_modulus(std::uint64_t n) {
  if (n == 2) throw LabError(ErrorCode::NotOdd, "modulus 2 has characteristic 2");
  if (!is_prime_u64(n)) throw LabError(ErrorCode::NotPrime, std::to_string(n) + " is not prime");
  if (n > PrimeModulus::kMaxModulus)
    throw LabError(ErrorCode::ModulusOutOfRange, std::to_string(n) + " exceeds 2^31 - 1");
  return PrimeModulus(static_cast<std::uint32_t>(n));
}

Scalar fp_inv(Scalar a, const PrimeModulus& m) {
  if (a.value == 0) throw LabError(ErrorCode::ZeroInverse, "zero has no inverse");
  // Extended Euclid on signed 64-bit values.
  std::int64_t r0 = m.p(), r1 = a.value, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return m.scalar(t0);
}

bool fp_is_square(Scalar a, const PrimeModulus& m) {
  if (a.value == 0) return true;
  return m.pow(a, (m.p() - 1) / 2).value == 1;
}

}  // namespace bisector_lab
