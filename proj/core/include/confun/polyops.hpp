#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confun/dyadic.hpp"

namespace confun {

using Rational = boost::multiprecision::cpp_rational;

// Converts an exact rational with power-of-two denominator; throws otherwise.
Dyadic rational_to_dyadic(const Rational& r);
Rational dyadic_to_rational(const Dyadic& d);

// Dense univariate polynomial with exact rational coefficients, normalized
// (no trailing zero coefficients).
class RationalPolynomial {
 public:
  RationalPolynomial() = default;  // zero polynomial
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial variable();
  // Binomial polynomial f_p(t) = t(t-1)...(t-p+1)/p!, f_0 = 1.
  static RationalPolynomial binomial(unsigned p);
  // Comma-separated exact coefficients by ascending degree: "0,0,-1/2,0,1/2".
  static RationalPolynomial parse(const std::string& text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(std::size_t i) const;

  Rational eval(const Rational& t) const;
  Dyadic eval_dyadic(const Dyadic& x) const;

  RationalPolynomial translate(const Rational& a) const;  // P(t + a)
  RationalPolynomial forward_difference() const;          // P(t+1) - P(t)
  bool integer_valued() const;  // integer values on all integers

  RationalPolynomial& operator+=(const RationalPolynomial&);
  RationalPolynomial& operator-=(const RationalPolynomial&);
  RationalPolynomial& operator*=(const RationalPolynomial&);
  friend RationalPolynomial operator+(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    return a += b;
  }
  friend RationalPolynomial operator-(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    return a -= b;
  }
  friend RationalPolynomial operator*(RationalPolynomial a,
                                      const RationalPolynomial& b) {
    return a *= b;
  }
  RationalPolynomial scaled(const Rational& c) const;

  bool operator==(const RationalPolynomial&) const = default;
  std::string str() const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;  // ascending degree
};

// Coordinates n_p of P = sum n_p f_p in the binomial basis. Exists (with
// integer entries) exactly when P is integer-valued on integers.
struct BinomialDecomposition {
  std::vector<Int> n;  // by p, trailing zeros trimmed
};

std::optional<BinomialDecomposition> binomial_decompose(
    const RationalPolynomial& P);
RationalPolynomial from_binomial(const BinomialDecomposition& d);

// Membership in the operator ring: the decomposition exists and
// 2^floor(p/2) divides n_p for every p.
bool in_script_P(const RationalPolynomial& P);

// Independent route: P is in the ring iff P is integer-valued on integers
// and both DP and (1/2)D(DP) are in the ring (D the forward difference).
// Must agree with in_script_P on every input.
bool in_script_P_recursive(const RationalPolynomial& P);

// The six additive generators modulo the 8-divisible part:
// 1, t, t^2-t, t^3-t, P4 = t(t-1)(t-2)(t-3)/2, P5 = P4*(t-4).
std::array<RationalPolynomial, 6> mod8_generators();

struct Mod8Reduction {
  std::array<Int, 6> coords;     // against mod8_generators()
  RationalPolynomial residual;   // P - sum coords*g; divisible by 8
};
Mod8Reduction mod8_reduce(const RationalPolynomial& P);  // throws if P ∉ ring

// Pointwise operator polynomials used throughout:
// t^2-t, t^3-t, t(t-1)(t-2)(t-3)/2 and its (t-4) multiple.
const RationalPolynomial& op_sub2();
const RationalPolynomial& op_sub3();
const RationalPolynomial& op_p4();
const RationalPolynomial& op_p5();

// Sparse multivariate polynomial with exact rational coefficients.
class MultiPolynomial {
 public:
  explicit MultiPolynomial(int nvars) : nvars_(nvars) {}
  static MultiPolynomial from_univariate(const RationalPolynomial& P, int var,
                                         int nvars);

  int nvars() const { return nvars_; }
  void add_term(std::vector<unsigned> exps, const Rational& c);
  const std::map<std::vector<unsigned>, Rational>& terms() const {
    return terms_;
  }

  Rational eval(const std::vector<Rational>& t) const;
  std::vector<unsigned> max_degrees() const;

  MultiPolynomial& operator+=(const MultiPolynomial&);
  MultiPolynomial& operator*=(const MultiPolynomial&);
  friend MultiPolynomial operator+(MultiPolynomial a, const MultiPolynomial& b) {
    return a += b;
  }
  friend MultiPolynomial operator*(MultiPolynomial a, const MultiPolynomial& b) {
    return a *= b;
  }

 private:
  void prune();
  int nvars_;
  std::map<std::vector<unsigned>, Rational> terms_;
};

struct MultiDecomposition {
  std::map<std::vector<unsigned>, Int> n;
};

std::optional<MultiDecomposition> binomial_decompose_multi(
    const MultiPolynomial& P);

// 2^(floor(p1/2)+...+floor(ps/2)) divides n_p for every exponent vector p.
bool in_script_P_multi(const MultiPolynomial& P);

}  // namespace confun
