#pragma once

#include "confun/constructible.hpp"
#include "confun/simplicial.hpp"

// Reference implementations used as independent cross-checks. They go
// through the simplicial sphere around a point (link of the barycenter in a
// barycentric subdivision) and never touch the coface-poset closed form.
namespace confun::reference {

// Euler characteristic of the sphere of directions around a point in the
// open simplex `sigma`, read off the subdivision.
long long geometric_link_chi(const Complex& K, const Subdivision& sub,
                             SimplexId sigma);

// Link value of phi at sigma: the euler integral of phi over that sphere,
// with values pulled back through the carrier map.
Dyadic link_value(const ConstructibleFunction& phi, const Subdivision& sub,
                  SimplexId sigma);

// Full link operator computed the slow way.
ConstructibleFunction link_op(const ConstructibleFunction& phi);

}  // namespace confun::reference
