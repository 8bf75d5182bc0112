#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>

#include "confun/errors.hpp"

namespace confun {

using Int = boost::multiprecision::cpp_int;

// Exact dyadic rational num / 2^exp, in lowest terms (exp == 0 or num odd).
// The only division in the whole calculus is by 2, so dyadics are closed
// under every operation we perform.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(int v) : num_(v) {}
  Dyadic(long long v) : num_(v) {}
  Dyadic(Int v) : num_(std::move(v)) {}
  Dyadic(Int numerator, unsigned exponent);

  const Int& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return exp_ == 0; }
  bool is_even() const { return exp_ == 0 && bit_test(num_, 0) == false; }
  bool is_odd() const { return exp_ == 0 && bit_test(num_, 0) == true; }

  // Throws unless the value is an integer.
  const Int& as_integer() const;

  // Representative of the value in {0, ..., 2^k - 1}; integer values only.
  Int mod_pow2(unsigned k) const;

  Dyadic half() const { return Dyadic(num_, exp_ + 1); }

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o);
  Dyadic& operator*=(const Dyadic& o);

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  bool operator==(const Dyadic&) const = default;

  // "3", "-1", "5/2", "7/8"
  std::string str() const;
  // Inverse of str(); requires a power-of-two denominator.
  static Dyadic parse(const std::string& text);

 private:
  void normalize();

  Int num_ = 0;
  unsigned exp_ = 0;
};

// Convenience: x^2 - x and x^3 - x, applied to exact integers.
Int sub2(const Int& x);
Int sub3(const Int& x);

}  // namespace confun
