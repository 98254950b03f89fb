#include "templike/scalar.hpp"

#include <sstream>

namespace templike {

Ring Ring::Fp(long p) {
  if (p < 2) throw contract_error("Fp modulus must be a prime >= 2");
  return Ring{RingKind::ModP, p};
}

std::string Ring::name() const {
  switch (kind) {
    case RingKind::Rational: return "Q";
    case RingKind::Integer: return "Z";
    case RingKind::ModP: return "F" + std::to_string(p);
  }
  return "?";
}

Ring Ring::parse(const std::string& text) {
  if (text == "Q") return Q();
  if (text == "Z") return Z();
  if (text.size() >= 2 && text[0] == 'F') return Fp(std::stol(text.substr(1)));
  throw contract_error("unknown ring: " + text);
}

Scalar::Scalar(Ring ring, long value) : ring_(ring), v_(value) { canonicalize(); }

Scalar::Scalar(Ring ring, const mpq_class& value) : ring_(ring), v_(value) {
  canonicalize();
}

void Scalar::canonicalize() {
  v_.canonicalize();
  switch (ring_.kind) {
    case RingKind::Rational:
      break;
    case RingKind::Integer:
      if (v_.get_den() != 1)
        throw contract_error("non-integer value in ring Z: " + v_.get_str());
      break;
    case RingKind::ModP: {
      if (v_.get_den() != 1)
        throw contract_error("mod-p values must be integers");
      mpz_class r;
      mpz_class p(ring_.p);
      mpz_mod(r.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t());
      v_ = r;
      break;
    }
  }
}

Scalar Scalar::parse(Ring ring, const std::string& text) {
  auto mod_pos = text.find(" mod ");
  if (mod_pos != std::string::npos) {
    long p = std::stol(text.substr(mod_pos + 5));
    if (ring.kind != RingKind::ModP || ring.p != p)
      throw contract_error("scalar \"" + text + "\" does not live in " + ring.name());
    return Scalar(ring, mpq_class(text.substr(0, mod_pos)));
  }
  return Scalar(ring, mpq_class(text));
}

static void require_same(const Ring& a, const Ring& b) {
  if (!(a == b)) throw contract_error("mixed-ring arithmetic: " + a.name() + " vs " + b.name());
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same(ring_, o.ring_);
  return Scalar(ring_, mpq_class(v_ + o.v_));
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same(ring_, o.ring_);
  return Scalar(ring_, mpq_class(v_ - o.v_));
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same(ring_, o.ring_);
  return Scalar(ring_, mpq_class(v_ * o.v_));
}

Scalar Scalar::operator-() const { return Scalar(ring_, mpq_class(-v_)); }

bool Scalar::is_unit() const {
  if (is_zero()) return false;
  if (ring_.kind == RingKind::Integer) return v_ == 1 || v_ == -1;
  return true;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw contract_error("inverse of zero");
  switch (ring_.kind) {
    case RingKind::Rational:
      return Scalar(ring_, mpq_class(1 / v_));
    case RingKind::Integer:
      if (!is_unit()) throw contract_error("non-unit integer has no inverse: " + str());
      return *this;
    case RingKind::ModP: {
      mpz_class inv, p(ring_.p);
      if (!mpz_invert(inv.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t()))
        throw contract_error("non-invertible element mod p");
      return Scalar(ring_, mpq_class(inv));
    }
  }
  throw contract_error("unreachable");
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same(ring_, o.ring_);
  if (ring_.kind == RingKind::Integer) {
    if (o.is_zero()) throw contract_error("division by zero");
    mpq_class q = v_ / o.v_;
    q.canonicalize();
    if (q.get_den() != 1) throw contract_error("inexact integer division");
    return Scalar(ring_, q);
  }
  return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  require_same(ring_, o.ring_);
  return v_ == o.v_;
}

std::string Scalar::str() const {
  if (ring_.kind == RingKind::ModP)
    return v_.get_num().get_str() + " mod " + std::to_string(ring_.p);
  return v_.get_str();
}

}  // namespace templike
