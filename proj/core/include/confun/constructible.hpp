#pragma once

#include <array>
#include <memory>
#include <vector>

#include "confun/dyadic.hpp"
#include "confun/polyops.hpp"
#include "confun/simplicial.hpp"

namespace confun {

using ComplexPtr = std::shared_ptr<const Complex>;

// An exact constructible function on a fixed complex: one dyadic value per
// open simplex. Arithmetic only combines functions over the identical
// complex object.
class ConstructibleFunction {
 public:
  ConstructibleFunction() = default;
  ConstructibleFunction(ComplexPtr K, std::vector<Dyadic> values);

  static ConstructibleFunction zero(ComplexPtr K);
  static ConstructibleFunction constant(ComplexPtr K, const Dyadic& c);
  // Characteristic function of the union of the listed open simplices (a
  // closed-subcomplex indicator when the list is downward closed).
  static ConstructibleFunction indicator(ComplexPtr K,
                                         const std::vector<SimplexId>& ids);
  // Indicator of the closed simplex spanned by s.
  static ConstructibleFunction indicator_closed(ComplexPtr K, const Simplex& s);

  const ComplexPtr& complex() const { return K_; }
  const Dyadic& value(SimplexId id) const { return vals_[id]; }
  const Dyadic& operator[](SimplexId id) const { return vals_[id]; }
  Dyadic value_at_vertex(VertexId v) const;
  std::size_t size() const { return vals_.size(); }

  void set(SimplexId id, Dyadic v) { vals_[id] = std::move(v); }

  ConstructibleFunction& operator+=(const ConstructibleFunction&);
  ConstructibleFunction& operator-=(const ConstructibleFunction&);
  ConstructibleFunction& operator*=(const ConstructibleFunction&);
  friend ConstructibleFunction operator+(ConstructibleFunction a,
                                         const ConstructibleFunction& b) {
    return a += b;
  }
  friend ConstructibleFunction operator-(ConstructibleFunction a,
                                         const ConstructibleFunction& b) {
    return a -= b;
  }
  friend ConstructibleFunction operator*(ConstructibleFunction a,
                                         const ConstructibleFunction& b) {
    return a *= b;
  }
  ConstructibleFunction scaled(const Dyadic& c) const;

  bool operator==(const ConstructibleFunction& o) const {
    return K_ == o.K_ && vals_ == o.vals_;
  }

 private:
  void check_same(const ConstructibleFunction& o) const;
  ComplexPtr K_;
  std::vector<Dyadic> vals_;
};

// The link operator: Lphi(sigma) = phi(sigma) + (-1)^(dim sigma - 1) c_sigma,
// where c_sigma recovers the closed-simplex-basis coefficient by Moebius
// inversion over the coface poset.
ConstructibleFunction link_op(const ConstructibleFunction& phi);
ConstructibleFunction half_link(const ConstructibleFunction& phi);     // L/2
ConstructibleFunction co_half_link(const ConstructibleFunction& phi);  // I - L/2

Dyadic euler_integral(const ConstructibleFunction& phi);

bool is_integer_valued(const ConstructibleFunction& phi);
bool is_even_valued(const ConstructibleFunction& phi);
// Link values even at every simplex; throws on non-integer input.
bool is_euler(const ConstructibleFunction& phi);

std::vector<SimplexId> support(const ConstructibleFunction& phi);
int support_dim(const ConstructibleFunction& phi);  // -1 for empty support

// Pointwise reduction mod 2^k with representatives in {0, ..., 2^k - 1};
// integer-valued input only.
ConstructibleFunction reduce_mod_pow2(const ConstructibleFunction& phi,
                                      unsigned k);

// dim supp(phi mod 2^k) < k for all k; integer-valued input only.
bool in_ideal_I(const ConstructibleFunction& phi);
// phi = 2 psi with psi in the ideal.
bool in_2I(const ConstructibleFunction& phi);

ConstructibleFunction restrict_to_skeleton(const ConstructibleFunction& phi,
                                           int k);
ConstructibleFunction apply_polynomial(const RationalPolynomial& P,
                                       const ConstructibleFunction& phi);

// {phi, phi^2-phi, phi^3-phi, phi(phi-1)(phi-2)(phi-3)/2, that times (phi-4)}.
// Checks the forced divisibilities (the middle two even, the last two
// divisible by 4) pointwise.
std::array<ConstructibleFunction, 5> standard_operators(
    const ConstructibleFunction& phi);

}  // namespace confun
