#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace godex {

/// Coefficient field: the rationals or a prime field GF(p).
///
/// Prime fields are limited to p < 2^31 so that a + b fits in 32 bits and
/// a * b fits in 64 bits.
class Field {
 public:
  Field() = default;  // rationals

  static Field rationals() { return Field(); }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);
  /// Accepts "Q" or "GF(p)".
  static Field parse(std::string_view text);

  bool is_rational() const { return p_ == 0; }
  bool is_prime() const { return p_ != 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }

  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);

/// A single field element, used at API boundaries (parsing, printing,
/// entry access). Hot loops work on raw residues or mpq_class directly.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& field, long long value);
  Scalar(const Field& field, const mpq_class& value);

  /// Accepts integers and "num/den" fractions. Over GF(p) the denominator
  /// must be invertible.
  static Scalar parse(const Field& field, std::string_view text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  std::uint32_t residue() const { return residue_; }
  const mpq_class& rational() const { return rational_; }

  /// Rationals print as "num/den"; residues print as decimal integers.
  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  Field field_;
  std::uint32_t residue_ = 0;
  mpq_class rational_;
};

namespace modp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
std::uint32_t inv(std::uint32_t a, std::uint32_t p);
/// Residue of an arbitrary signed integer.
std::uint32_t reduce(long long v, std::uint32_t p);

}  // namespace modp

}  // namespace godex
