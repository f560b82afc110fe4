#include "godex/field.hpp"

#include <charconv>
#include <stdexcept>

namespace godex {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 31)) throw std::invalid_argument("prime field characteristic must be below 2^31");
  if (!is_prime_number(p)) throw std::invalid_argument("GF(" + std::to_string(p) + "): not a prime");
  return Field(static_cast<std::uint32_t>(p));
}

Field Field::parse(std::string_view text) {
  if (text == "Q" || text == "QQ") return rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    auto digits = text.substr(3, text.size() - 4);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("malformed field '" + std::string(text) + "'");
    }
    return prime(p);
  }
  throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected Q or GF(p))");
}

std::string Field::to_string() const {
  return is_rational() ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

namespace modp {

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a == 0) throw std::domain_error("inverse of zero");
  // Extended Euclid on signed 64-bit values.
  long long t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t reduce(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace modp

Scalar::Scalar(const Field& field, long long value) : field_(field) {
  if (field.is_prime()) {
    residue_ = modp::reduce(value, field.characteristic());
  } else {
    rational_ = mpq_class(static_cast<long>(value));
  }
}

Scalar::Scalar(const Field& field, const mpq_class& value) : field_(field) {
  if (field.is_prime()) {
    std::uint32_t p = field.characteristic();
    mpz_class num = value.get_num() % p;
    mpz_class den = value.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) throw std::domain_error("denominator not invertible in " + field.to_string());
    residue_ = modp::mul(static_cast<std::uint32_t>(num.get_ui()),
                         modp::inv(static_cast<std::uint32_t>(den.get_ui()), p), p);
  } else {
    rational_ = value;
    rational_.canonicalize();
  }
}

Scalar Scalar::parse(const Field& field, std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  mpq_class q;
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      q = mpq_class(mpz_class(s, 10));
    } else {
      mpz_class num(s.substr(0, slash), 10);
      mpz_class den(s.substr(slash + 1), 10);
      if (den == 0) throw std::invalid_argument("zero denominator");
      q = mpq_class(num, den);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed scalar '" + s + "'");
  }
  return Scalar(field, q);
}

bool Scalar::is_zero() const { return field_.is_prime() ? residue_ == 0 : rational_ == 0; }

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(residue_);
  return rational_.get_num().get_str() + "/" + rational_.get_den().get_str();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.field_.is_prime() ? a.residue_ == b.residue_ : a.rational_ == b.rational_;
}

}  // namespace godex
