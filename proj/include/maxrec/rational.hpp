#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace maxrec {

/// Exact positive rational number in lowest terms.
///
/// Every operation that could leave the positive cone (subtraction, zero)
/// is absent; products, quotients and comparisons are exact.
class PositiveRational {
 public:
  PositiveRational() : value_(1) {}
  explicit PositiveRational(std::int64_t integer);
  PositiveRational(std::int64_t numerator, std::int64_t denominator);

  /// Accepts "p/q" or "p" with p, q positive decimal integers.
  static PositiveRational parse(std::string_view text);
  /// Wraps an mpq value; throws ContractViolation unless it is > 0.
  static PositiveRational from_mpq(mpq_class value);

  const mpq_class& mpq() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  /// Always "p/q", including "1/1".
  std::string to_string() const;
  /// Natural logarithm, accurate for arbitrarily large or small values.
  double log() const;
  double to_double() const;
  /// bits(numerator) + bits(denominator).
  std::size_t bit_size() const;
  std::size_t hash() const;

  PositiveRational reciprocal() const;
  PositiveRational pow(std::uint64_t exponent) const;

  friend PositiveRational operator*(const PositiveRational& a,
                                    const PositiveRational& b) {
    PositiveRational r;
    mpq_mul(r.value_.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
    return r;
  }
  friend PositiveRational operator/(const PositiveRational& a,
                                    const PositiveRational& b) {
    PositiveRational r;
    mpq_div(r.value_.get_mpq_t(), a.value_.get_mpq_t(), b.value_.get_mpq_t());
    return r;
  }
  PositiveRational& operator*=(const PositiveRational& o) {
    mpq_mul(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t());
    return *this;
  }
  PositiveRational& operator/=(const PositiveRational& o) {
    mpq_div(value_.get_mpq_t(), value_.get_mpq_t(), o.value_.get_mpq_t());
    return *this;
  }

  friend bool operator==(const PositiveRational& a, const PositiveRational& b) {
    return mpq_equal(a.value_.get_mpq_t(), b.value_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const PositiveRational& a,
                                          const PositiveRational& b) {
    const int c = mpq_cmp(a.value_.get_mpq_t(), b.value_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

// Compares a/b with c/d without forming the quotients.
inline std::strong_ordering compare_quotients(const PositiveRational& a,
                                              const PositiveRational& b,
                                              const PositiveRational& c,
                                              const PositiveRational& d) {
  return a * d <=> c * b;
}

}  // namespace maxrec

template <>
struct std::hash<maxrec::PositiveRational> {
  std::size_t operator()(const maxrec::PositiveRational& r) const noexcept {
    return r.hash();
  }
};
