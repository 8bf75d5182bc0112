#include "confun/reference.hpp"

namespace confun::reference {

namespace {

// Sum of f over the sphere of directions around the barycenter of `sigma`.
// A link simplex s spans the join simplex {barycenter} ∪ s in the
// subdivision; near the barycenter that join cell lies in the old open
// simplex carrier({barycenter} ∪ s), which is where the sphere passes.
template <typename Acc, typename Value>
void sphere_sum(const Subdivision& sub, SimplexId sigma, Acc& acc,
                const Value& value) {
  const Complex& Kp = sub.complex;
  const VertexId barycenter = sigma;  // subdivision vertex ids = old simplex ids
  const SimplexId vs = Kp.vertex_simplex(barycenter);
  if (vs < 0) throw Error("simplex has no barycenter vertex");
  for (SimplexId t : Kp.cofaces(vs)) {
    if (t == vs) continue;
    const int link_dim = Kp.simplex(t).dim() - 1;
    if (link_dim % 2 == 0)
      acc += value(sub.carrier[t]);
    else
      acc -= value(sub.carrier[t]);
  }
}

}  // namespace

long long geometric_link_chi(const Complex&, const Subdivision& sub,
                             SimplexId sigma) {
  long long chi = 0;
  sphere_sum(sub, sigma, chi, [](SimplexId) { return 1ll; });
  return chi;
}

Dyadic link_value(const ConstructibleFunction& phi, const Subdivision& sub,
                  SimplexId sigma) {
  Dyadic acc;
  sphere_sum(sub, sigma, acc, [&](SimplexId old) { return phi[old]; });
  return acc;
}

ConstructibleFunction link_op(const ConstructibleFunction& phi) {
  const ComplexPtr& K = phi.complex();
  Subdivision sub = barycentric_subdivision(*K);
  ConstructibleFunction out = ConstructibleFunction::zero(K);
  for (SimplexId s = 0; s < static_cast<SimplexId>(K->size()); ++s)
    out.set(s, link_value(phi, sub, s));
  return out;
}

}  // namespace confun::reference
