#pragma once

#include <gmpxx.h>

#include <string>

#include "arithinv/errors.hpp"

namespace arithinv {

enum class RingKind { integers, rationals, prime_field };

/// Coefficient-ring tag: Z, Q, or F_p for a prime p.
class RingDescriptor {
 public:
  static RingDescriptor integers() { return RingDescriptor(RingKind::integers, 0); }
  static RingDescriptor rationals() { return RingDescriptor(RingKind::rationals, 0); }
  static RingDescriptor prime_field(const mpz_class& p);

  RingKind kind() const noexcept { return kind_; }
  const mpz_class& modulus() const noexcept { return modulus_; }
  bool is_field() const noexcept { return kind_ != RingKind::integers; }

  bool operator==(const RingDescriptor& o) const {
    return kind_ == o.kind_ && modulus_ == o.modulus_;
  }
  bool operator!=(const RingDescriptor& o) const { return !(*this == o); }

  /// "Z", "Q", "F5", ...
  std::string name() const;

 private:
  RingDescriptor(RingKind kind, mpz_class modulus) : kind_(kind), modulus_(std::move(modulus)) {}

  RingKind kind_;
  mpz_class modulus_;
};

void require_same_ring(const RingDescriptor& a, const RingDescriptor& b, const char* where);

/// Canonical form of a raw rational in `ring`: reduced with positive denominator
/// over Q, denominator 1 over Z, representative in [0, p) over F_p.
mpq_class normalize_value(const RingDescriptor& ring, const mpq_class& v);

/// Multiplicative inverse; fails with non_field_ring over Z unless the value is a unit.
mpq_class value_inverse(const RingDescriptor& ring, const mpq_class& v);

bool value_is_integral(const mpq_class& v);

std::string value_to_string(const RingDescriptor& ring, const mpq_class& v);

/// Parses "a", "-a", or "a/b" (decimal).
mpq_class parse_value(const RingDescriptor& ring, const std::string& text);

/// An element of Z, Q, or F_p together with its ring tag.
class Scalar {
 public:
  Scalar(RingDescriptor ring, const mpq_class& value)
      : ring_(std::move(ring)), value_(normalize_value(ring_, value)) {}
  static Scalar zero(const RingDescriptor& ring) { return Scalar(ring, 0); }
  static Scalar one(const RingDescriptor& ring) { return Scalar(ring, 1); }

  const RingDescriptor& ring() const noexcept { return ring_; }
  const mpq_class& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const { return Scalar(ring_, -value_); }
  Scalar inverse() const { return Scalar(ring_, value_inverse(ring_, value_)); }

  bool operator==(const Scalar& o) const { return ring_ == o.ring_ && value_ == o.value_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const { return value_to_string(ring_, value_); }

 private:
  RingDescriptor ring_;
  mpq_class value_;
};

}  // namespace arithinv
