// Exact coefficient arithmetic: rationals, integers and prime fields.
//
// Every value carries its ring so that mixed-ring arithmetic is a contract
// violation rather than a silent coercion.  Rationals are kept in lowest
// terms with positive denominator, mod-p values as canonical representatives
// in [0, p).
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace templike {

// Thrown when an operation's documented precondition is violated.
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

enum class RingKind { Rational, Integer, ModP };

struct Ring {
  RingKind kind = RingKind::Rational;
  long p = 0;  // prime modulus, only meaningful for ModP

  static Ring Q() { return Ring{RingKind::Rational, 0}; }
  static Ring Z() { return Ring{RingKind::Integer, 0}; }
  static Ring Fp(long p);

  bool is_field() const { return kind != RingKind::Integer; }
  bool operator==(const Ring&) const = default;
  std::string name() const;

  // Parses "Q", "Z" or "Fp" (e.g. "F7").
  static Ring parse(const std::string& text);
};

class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(Ring ring) : ring_(ring) {}
  Scalar(Ring ring, long value);
  Scalar(Ring ring, const mpq_class& value);

  static Scalar zero(Ring ring) { return Scalar(ring, 0); }
  static Scalar one(Ring ring) { return Scalar(ring, 1); }

  // Parses the textual forms used by fixtures: "3/4", "-2", "5 mod 7".
  static Scalar parse(Ring ring, const std::string& text);

  const Ring& ring() const { return ring_; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Multiplicative inverse; over Z only +-1 are invertible.
  Scalar inverse() const;
  // Exact division: throws if the quotient does not exist in the ring.
  Scalar operator/(const Scalar& o) const;

  bool is_unit() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void canonicalize();

  Ring ring_{};
  mpq_class v_{0};
};

}  // namespace templike
