#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "confun/constructible.hpp"
#include "confun/invariants.hpp"

// Randomized property suites over generated corpora, runnable from tests and
// from the command line. Each suite reports the number of checks performed
// and any failures.
namespace confun::selfcheck {

struct Options {
  std::uint64_t seed = 0x5eed;
  int size = 50;  // corpus size knob
};

struct Outcome {
  std::string name;
  int checks = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// Random complexes: closures of random simplex families mixed with spheres,
// cones, suspensions, wedges and products, capped in size and dimension.
Complex random_complex(std::mt19937_64& rng, int max_simplices, int max_dim);
ConstructibleFunction random_function(std::mt19937_64& rng, const ComplexPtr& K,
                                      bool integer_only);
// A member of the ideal: dim supp(phi mod 2^k) < k for all k.
ConstructibleFunction random_ideal_element(std::mt19937_64& rng,
                                           const ComplexPtr& K);

// Lifts a function on K to the product K x P constant in the P direction.
ConstructibleFunction lift_to_product(const ConstructibleFunction& phi,
                                      const Complex& P,
                                      const ComplexPtr& prod);

Outcome operator_identity_suite(const Options& opt);  // composition/integral laws
Outcome link_oracle_suite(const Options& opt);        // closed form vs sphere sums
Outcome support_slice_suite(const Options& opt);      // support drop and slicing
Outcome ideal_suite(const Options& opt);              // half-link preserves the ideal
Outcome subdivision_suite(const Options& opt);        // carrier invariance
Outcome polynomial_suite(const Options& opt);         // ring membership routes
Outcome invariants_suite(const Options& opt);         // counts, additivity, congruence
Outcome witness_suite(const Options& opt);            // blocks and small pipelines

std::vector<Outcome> run_all(const Options& opt);

}  // namespace confun::selfcheck
