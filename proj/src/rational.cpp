#include "maxrec/rational.hpp"

#include <cmath>

#include "maxrec/errors.hpp"

namespace maxrec {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

double log_mpz(const mpz_class& z) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

std::size_t hash_mpz(const mpz_class& z, std::size_t seed) {
  const mpz_srcptr p = z.get_mpz_t();
  const std::size_t n = mpz_size(p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto limb = static_cast<std::size_t>(mpz_getlimbn(p, i));
    seed ^= limb + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}

}  // namespace

PositiveRational::PositiveRational(std::int64_t integer) : value_(0) {
  if (integer <= 0) throw ContractViolation("PositiveRational requires a positive value");
  value_ = mpq_class(mpz_class(std::to_string(integer)));
}

PositiveRational::PositiveRational(std::int64_t numerator, std::int64_t denominator)
    : value_(0) {
  if (numerator <= 0 || denominator <= 0)
    throw ContractViolation("PositiveRational requires positive numerator and denominator");
  value_ = mpq_class(mpz_class(std::to_string(numerator)),
                     mpz_class(std::to_string(denominator)));
  value_.canonicalize();
}

PositiveRational PositiveRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw ConfigError("invalid rational literal '" + std::string(text) +
                      "': expected p/q or an integer with positive p, q");
  mpq_class q{mpz_class{std::string(num)}, mpz_class{std::string(den)}};
  if (q.get_num() == 0 || q.get_den() == 0)
    throw ConfigError("invalid rational literal '" + std::string(text) +
                      "': numerator and denominator must be positive");
  q.canonicalize();
  return from_mpq(std::move(q));
}

PositiveRational PositiveRational::from_mpq(mpq_class value) {
  value.canonicalize();
  if (sgn(value) <= 0) throw ContractViolation("PositiveRational requires a positive value");
  PositiveRational r;
  r.value_ = std::move(value);
  return r;
}

std::string PositiveRational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

double PositiveRational::log() const {
  return log_mpz(value_.get_num()) - log_mpz(value_.get_den());
}

double PositiveRational::to_double() const { return std::exp(log()); }

std::size_t PositiveRational::bit_size() const {
  return mpz_sizeinbase(value_.get_num_mpz_t(), 2) +
         mpz_sizeinbase(value_.get_den_mpz_t(), 2);
}

std::size_t PositiveRational::hash() const {
  return hash_mpz(value_.get_den(), hash_mpz(value_.get_num(), 0x1234567u));
}

PositiveRational PositiveRational::reciprocal() const {
  PositiveRational r;
  mpq_inv(r.value_.get_mpq_t(), value_.get_mpq_t());
  return r;
}

PositiveRational PositiveRational::pow(std::uint64_t exponent) const {
  PositiveRational result;
  PositiveRational base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

}  // namespace maxrec
