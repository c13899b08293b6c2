#include "arithinv/ring.hpp"

#include <sstream>

namespace arithinv {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::non_field_ring: return "NonFieldRing";
    case ErrorCode::ring_mismatch: return "RingMismatch";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::not_invertible_over_ring: return "NotInvertibleOverRing";
    case ErrorCode::cap_exceeded: return "CapExceeded";
    case ErrorCode::not_invariant: return "NotInvariant";
    case ErrorCode::not_homogeneous: return "NotHomogeneous";
    case ErrorCode::wrong_count: return "WrongCount";
    case ErrorCode::search_budget_exceeded: return "SearchBudgetExceeded";
    case ErrorCode::verification_failed: return "VerificationFailed";
    case ErrorCode::residue_field_too_small: return "ResidueFieldTooSmall";
    case ErrorCode::unverified_hsop: return "UnverifiedHsop";
    case ErrorCode::modular_characteristic: return "ModularCharacteristic";
    case ErrorCode::flatness_violation: return "FlatnessViolation";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

RingDescriptor RingDescriptor::prime_field(const mpz_class& p) {
  if (p <= 1 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
    fail(ErrorCode::invalid_argument, "modulus " + p.get_str() + " is not prime");
  return RingDescriptor(RingKind::prime_field, p);
}

std::string RingDescriptor::name() const {
  switch (kind_) {
    case RingKind::integers: return "Z";
    case RingKind::rationals: return "Q";
    case RingKind::prime_field: return "F" + modulus_.get_str();
  }
  return "?";
}

void require_same_ring(const RingDescriptor& a, const RingDescriptor& b, const char* where) {
  if (a != b)
    fail(ErrorCode::ring_mismatch,
         std::string(where) + ": " + a.name() + " vs " + b.name());
}

mpq_class normalize_value(const RingDescriptor& ring, const mpq_class& v) {
  switch (ring.kind()) {
    case RingKind::rationals:
      return v;  // gmpxx keeps rationals canonical
    case RingKind::integers:
      if (v.get_den() != 1)
        fail(ErrorCode::invalid_argument, "value " + v.get_str() + " is not an integer");
      return v;
    case RingKind::prime_field: {
      const mpz_class& p = ring.modulus();
      mpz_class num, den;
      mpz_fdiv_r(num.get_mpz_t(), v.get_num().get_mpz_t(), p.get_mpz_t());
      mpz_fdiv_r(den.get_mpz_t(), v.get_den().get_mpz_t(), p.get_mpz_t());
      if (den == 0)
        fail(ErrorCode::invalid_argument,
             "denominator of " + v.get_str() + " vanishes mod " + p.get_str());
      if (den != 1) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        num = (num * inv) % p;
      }
      return mpq_class(num);
    }
  }
  return v;
}

mpq_class value_inverse(const RingDescriptor& ring, const mpq_class& v) {
  if (v == 0) fail(ErrorCode::invalid_argument, "division by zero");
  switch (ring.kind()) {
    case RingKind::rationals:
      return 1 / v;
    case RingKind::integers:
      if (v == 1 || v == -1) return v;
      fail(ErrorCode::non_field_ring, v.get_str() + " is not a unit of Z");
    case RingKind::prime_field: {
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), v.get_num().get_mpz_t(), ring.modulus().get_mpz_t()) == 0)
        fail(ErrorCode::invalid_argument, "no inverse mod " + ring.modulus().get_str());
      return mpq_class(inv);
    }
  }
  fail(ErrorCode::invalid_argument, "bad ring");
}

bool value_is_integral(const mpq_class& v) { return v.get_den() == 1; }

std::string value_to_string(const RingDescriptor& ring, const mpq_class& v) {
  (void)ring;
  return v.get_str();  // "a" or "a/b", canonical
}

mpq_class parse_value(const RingDescriptor& ring, const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    fail(ErrorCode::parse_error, "bad scalar '" + text + "'");
  q.canonicalize();
  if (q.get_den() < 0) q = -q;  // keep denominator positive
  return normalize_value(ring, q);
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_ring(ring_, o.ring_, "scalar add");
  return Scalar(ring_, value_ + o.value_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same_ring(ring_, o.ring_, "scalar sub");
  return Scalar(ring_, value_ - o.value_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_ring(ring_, o.ring_, "scalar mul");
  return Scalar(ring_, value_ * o.value_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same_ring(ring_, o.ring_, "scalar div");
  if (ring_.kind() == RingKind::integers) {
    if (o.value_ == 0) fail(ErrorCode::invalid_argument, "division by zero");
    mpq_class q = value_ / o.value_;
    if (q.get_den() != 1)
      fail(ErrorCode::non_field_ring, "inexact division over Z");
    return Scalar(ring_, q);
  }
  return Scalar(ring_, value_ * value_inverse(ring_, o.value_));
}

}  // namespace arithinv
