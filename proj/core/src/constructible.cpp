#include "confun/constructible.hpp"

#include <algorithm>

namespace confun {

ConstructibleFunction::ConstructibleFunction(ComplexPtr K,
                                             std::vector<Dyadic> values)
    : K_(std::move(K)), vals_(std::move(values)) {
  if (!K_) throw Error("constructible function needs a complex");
  if (vals_.size() != K_->size())
    throw Error("value table size does not match the complex");
}

ConstructibleFunction ConstructibleFunction::zero(ComplexPtr K) {
  std::size_t n = K->size();
  return ConstructibleFunction(std::move(K), std::vector<Dyadic>(n));
}

ConstructibleFunction ConstructibleFunction::constant(ComplexPtr K,
                                                      const Dyadic& c) {
  std::size_t n = K->size();
  return ConstructibleFunction(std::move(K), std::vector<Dyadic>(n, c));
}

ConstructibleFunction ConstructibleFunction::indicator(
    ComplexPtr K, const std::vector<SimplexId>& ids) {
  ConstructibleFunction f = zero(std::move(K));
  for (SimplexId id : ids) f.vals_[id] = 1;
  return f;
}

ConstructibleFunction ConstructibleFunction::indicator_closed(
    ComplexPtr K, const Simplex& s) {
  SimplexId sid = K->id_of(s);
  if (sid < 0) throw Error("simplex not in complex");
  ConstructibleFunction f = zero(K);
  for (SimplexId i = 0; i < static_cast<SimplexId>(K->size()); ++i)
    if (s.has_face(K->simplex(i))) f.vals_[i] = 1;
  return f;
}

Dyadic ConstructibleFunction::value_at_vertex(VertexId v) const {
  SimplexId id = K_->vertex_simplex(v);
  if (id < 0) throw Error("no such vertex");
  return vals_[id];
}

void ConstructibleFunction::check_same(const ConstructibleFunction& o) const {
  if (K_ != o.K_)
    throw Error("arithmetic on functions over different complexes");
}

ConstructibleFunction& ConstructibleFunction::operator+=(
    const ConstructibleFunction& o) {
  check_same(o);
  for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] += o.vals_[i];
  return *this;
}

ConstructibleFunction& ConstructibleFunction::operator-=(
    const ConstructibleFunction& o) {
  check_same(o);
  for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] -= o.vals_[i];
  return *this;
}

ConstructibleFunction& ConstructibleFunction::operator*=(
    const ConstructibleFunction& o) {
  check_same(o);
  for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] *= o.vals_[i];
  return *this;
}

ConstructibleFunction ConstructibleFunction::scaled(const Dyadic& c) const {
  ConstructibleFunction out = *this;
  for (auto& v : out.vals_) v *= c;
  return out;
}

ConstructibleFunction link_op(const ConstructibleFunction& phi) {
  const Complex& K = *phi.complex();
  ConstructibleFunction out = ConstructibleFunction::zero(phi.complex());
  for (SimplexId s = 0; s < static_cast<SimplexId>(K.size()); ++s) {
    const int ds = K.simplex(s).dim();
    Dyadic c;
    for (SimplexId t : K.cofaces(s)) {
      if ((K.simplex(t).dim() - ds) % 2 == 0)
        c += phi[t];
      else
        c -= phi[t];
    }
    // (-1)^(dim - 1)
    out.set(s, (ds % 2 == 0) ? phi[s] - c : phi[s] + c);
  }
  return out;
}

ConstructibleFunction half_link(const ConstructibleFunction& phi) {
  ConstructibleFunction out = link_op(phi);
  for (SimplexId i = 0; i < static_cast<SimplexId>(out.size()); ++i)
    out.set(i, out[i].half());
  return out;
}

ConstructibleFunction co_half_link(const ConstructibleFunction& phi) {
  ConstructibleFunction out = half_link(phi);
  for (SimplexId i = 0; i < static_cast<SimplexId>(out.size()); ++i)
    out.set(i, phi[i] - out[i]);
  return out;
}

Dyadic euler_integral(const ConstructibleFunction& phi) {
  const Complex& K = *phi.complex();
  Dyadic acc;
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i) {
    if (K.simplex(i).dim() % 2 == 0)
      acc += phi[i];
    else
      acc -= phi[i];
  }
  return acc;
}

bool is_integer_valued(const ConstructibleFunction& phi) {
  for (SimplexId i = 0; i < static_cast<SimplexId>(phi.size()); ++i)
    if (!phi[i].is_integer()) return false;
  return true;
}

bool is_even_valued(const ConstructibleFunction& phi) {
  for (SimplexId i = 0; i < static_cast<SimplexId>(phi.size()); ++i)
    if (!phi[i].is_even()) return false;
  return true;
}

bool is_euler(const ConstructibleFunction& phi) {
  if (!is_integer_valued(phi))
    throw Error("euler test needs an integer-valued function");
  ConstructibleFunction l = link_op(phi);
  for (SimplexId i = 0; i < static_cast<SimplexId>(l.size()); ++i)
    if (!l[i].is_even()) return false;
  return true;
}

std::vector<SimplexId> support(const ConstructibleFunction& phi) {
  std::vector<SimplexId> out;
  for (SimplexId i = 0; i < static_cast<SimplexId>(phi.size()); ++i)
    if (!phi[i].is_zero()) out.push_back(i);
  return out;
}

int support_dim(const ConstructibleFunction& phi) {
  int d = -1;
  const Complex& K = *phi.complex();
  for (SimplexId i = 0; i < static_cast<SimplexId>(phi.size()); ++i)
    if (!phi[i].is_zero()) d = std::max(d, K.simplex(i).dim());
  return d;
}

ConstructibleFunction reduce_mod_pow2(const ConstructibleFunction& phi,
                                      unsigned k) {
  ConstructibleFunction out = ConstructibleFunction::zero(phi.complex());
  for (SimplexId i = 0; i < static_cast<SimplexId>(phi.size()); ++i)
    out.set(i, Dyadic(phi[i].mod_pow2(k)));
  return out;
}

bool in_ideal_I(const ConstructibleFunction& phi) {
  if (!is_integer_valued(phi))
    throw Error("ideal test needs an integer-valued function");
  const int d = phi.complex()->dim();
  for (int k = 0; k <= d + 1; ++k) {
    ConstructibleFunction r = reduce_mod_pow2(phi, static_cast<unsigned>(k));
    if (support_dim(r) >= k) return false;
  }
  return true;
}

bool in_2I(const ConstructibleFunction& phi) {
  if (!is_integer_valued(phi))
    throw Error("ideal test needs an integer-valued function");
  if (!is_even_valued(phi)) return false;
  return in_ideal_I(phi.scaled(Dyadic(Int(1), 1)));
}

ConstructibleFunction restrict_to_skeleton(const ConstructibleFunction& phi,
                                           int k) {
  ConstructibleFunction out = phi;
  const Complex& K = *phi.complex();
  for (SimplexId i = 0; i < static_cast<SimplexId>(phi.size()); ++i)
    if (K.simplex(i).dim() > k) out.set(i, Dyadic());
  return out;
}

ConstructibleFunction apply_polynomial(const RationalPolynomial& P,
                                       const ConstructibleFunction& phi) {
  ConstructibleFunction out = ConstructibleFunction::zero(phi.complex());
  for (SimplexId i = 0; i < static_cast<SimplexId>(phi.size()); ++i)
    out.set(i, P.eval_dyadic(phi[i]));
  return out;
}

std::array<ConstructibleFunction, 5> standard_operators(
    const ConstructibleFunction& phi) {
  if (!is_integer_valued(phi))
    throw Error("standard operators need an integer-valued function");
  std::array<ConstructibleFunction, 5> out = {
      phi, apply_polynomial(op_sub2(), phi), apply_polynomial(op_sub3(), phi),
      apply_polynomial(op_p4(), phi), apply_polynomial(op_p5(), phi)};
  for (SimplexId i = 0; i < static_cast<SimplexId>(phi.size()); ++i) {
    if (!out[1][i].is_even() || !out[2][i].is_even())
      throw Error("internal: phi_2/phi_3 not even");
    if (out[3][i].mod_pow2(2) != 0 || out[4][i].mod_pow2(2) != 0)
      throw Error("internal: phi_4/phi_5 not divisible by 4");
  }
  return out;
}

}  // namespace confun
