#include "confun/selfcheck.hpp"

#include <algorithm>
#include <sstream>

#include "confun/reference.hpp"
#include "confun/witness.hpp"

namespace confun::selfcheck {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Complex random_closure(Rng& rng, int max_simplices, int max_dim) {
  const int n = pick(rng, 3, 9);
  const int cells = pick(rng, 2, 10);
  std::vector<std::vector<VertexId>> maximal;
  for (int i = 0; i < cells; ++i) {
    const int d = pick(rng, 0, std::min(max_dim, n - 1));
    std::vector<VertexId> verts;
    while (static_cast<int>(verts.size()) < d + 1) {
      VertexId v = pick(rng, 0, n - 1);
      if (std::find(verts.begin(), verts.end(), v) == verts.end())
        verts.push_back(v);
    }
    maximal.push_back(std::move(verts));
  }
  Complex K = Complex::from_maximal(maximal);
  if (static_cast<int>(K.size()) > max_simplices)
    return Complex::from_maximal({{0, 1}, {1, 2}, {0, 2}});
  return K;
}

Complex sphere(int dim) {
  std::vector<VertexId> all(dim + 2);
  for (int i = 0; i < dim + 2; ++i) all[i] = i;
  std::vector<std::vector<VertexId>> maximal;
  for (int skip = 0; skip < dim + 2; ++skip) {
    std::vector<VertexId> verts;
    for (int i = 0; i < dim + 2; ++i)
      if (i != skip) verts.push_back(all[i]);
    maximal.push_back(std::move(verts));
  }
  return Complex::from_maximal(maximal);
}

}  // namespace

Complex random_complex(Rng& rng, int max_simplices, int max_dim) {
  const int kind = pick(rng, 0, 9);
  Complex K;
  switch (kind) {
    case 0:
      K = sphere(std::min(3, max_dim));
      break;
    case 1: {
      Complex a = random_closure(rng, max_simplices / 2, std::max(1, max_dim - 1));
      K = cone(a).complex;
      break;
    }
    case 2: {
      Complex a = random_closure(rng, max_simplices / 3, std::max(1, max_dim - 1));
      K = suspension(a).complex;
      break;
    }
    case 3: {
      Complex a = random_closure(rng, max_simplices / 2, max_dim);
      Complex b = random_closure(rng, max_simplices / 2, max_dim);
      K = disjoint_union(a, b).complex;
      break;
    }
    case 4: {
      Complex a = random_closure(rng, max_simplices / 2, max_dim);
      Complex b = random_closure(rng, max_simplices / 2, max_dim);
      K = wedge(a, a.vertex_ids()[0], b, b.vertex_ids()[0]).complex;
      break;
    }
    case 5: {
      Complex a = random_closure(rng, max_simplices / 8, std::max(1, max_dim - 1));
      Complex p = Complex::from_maximal({{0, 1}, {1, 2}});
      K = product(a, p);
      break;
    }
    case 6: {
      Complex a = random_closure(rng, max_simplices / 8, max_dim);
      K = barycentric_subdivision(a).complex;
      break;
    }
    default:
      K = random_closure(rng, max_simplices, max_dim);
      break;
  }
  if (static_cast<int>(K.size()) > max_simplices || K.dim() > max_dim)
    return random_closure(rng, max_simplices, max_dim);
  return K;
}

ConstructibleFunction random_function(Rng& rng, const ComplexPtr& K,
                                      bool integer_only) {
  ConstructibleFunction f = ConstructibleFunction::zero(K);
  for (SimplexId i = 0; i < static_cast<SimplexId>(K->size()); ++i) {
    const int num = pick(rng, -8, 8);
    const unsigned exp = integer_only ? 0u : static_cast<unsigned>(pick(rng, 0, 2));
    f.set(i, Dyadic(Int(num), exp));
  }
  return f;
}

ConstructibleFunction random_ideal_element(Rng& rng, const ComplexPtr& K) {
  // 2^k-multiples supported in dimension <= k.
  ConstructibleFunction f = ConstructibleFunction::zero(K);
  for (SimplexId i = 0; i < static_cast<SimplexId>(K->size()); ++i) {
    const int d = K->simplex(i).dim();
    if (d > 3) continue;
    const Int scale = Int(1) << d;
    f.set(i, Dyadic(scale * pick(rng, -2, 2)));
  }
  return f;
}

ConstructibleFunction lift_to_product(const ConstructibleFunction& phi,
                                      const Complex& P,
                                      const ComplexPtr& prod) {
  ConstructibleFunction out = ConstructibleFunction::zero(prod);
  const int nb = P.vertex_bound();
  for (SimplexId i = 0; i < static_cast<SimplexId>(prod->size()); ++i) {
    std::vector<VertexId> averts;
    for (VertexId v : prod->simplex(i).vertices()) {
      VertexId a = v / nb;
      if (averts.empty() || averts.back() != a) averts.push_back(a);
    }
    SimplexId src = phi.complex()->id_of(Simplex(averts));
    if (src < 0) throw Error("product simplex projects outside the factor");
    out.set(i, phi[src]);
  }
  return out;
}

namespace {

struct Checker {
  explicit Checker(const std::string& name, const Options& opt)
      : rng(opt.seed), out{name, 0, {}} {}

  void expect(bool ok, const std::string& what) {
    ++out.checks;
    if (!ok) out.failures.push_back(what);
  }

  Rng rng;
  Outcome out;
};

}  // namespace

Outcome operator_identity_suite(const Options& opt) {
  Checker c("operator identities", opt);
  for (int iter = 0; iter < opt.size; ++iter) {
    auto K = std::make_shared<const Complex>(random_complex(c.rng, 300, 4));
    const ConstructibleFunction phi = random_function(c.rng, K, false);
    const ConstructibleFunction l = link_op(phi);
    const ConstructibleFunction hl = half_link(phi);
    const ConstructibleFunction om = co_half_link(phi);
    c.expect(link_op(l) == l.scaled(Dyadic(2)), "LL = 2L");
    c.expect(hl + om == phi, "half + co-half = identity");
    c.expect(half_link(hl) == hl, "half is idempotent");
    c.expect(co_half_link(om) == om, "co-half is idempotent");
    c.expect(half_link(om) == ConstructibleFunction::zero(K),
             "half after co-half vanishes");
    c.expect(co_half_link(hl) == ConstructibleFunction::zero(K),
             "co-half after half vanishes");
    c.expect(euler_integral(hl).is_zero(), "integral of half-link is zero");
    c.expect(euler_integral(om) == euler_integral(phi),
             "co-half preserves the integral");
  }
  return c.out;
}

Outcome link_oracle_suite(const Options& opt) {
  Checker c("link oracle", opt);
  for (int iter = 0; iter < opt.size; ++iter) {
    auto K = std::make_shared<const Complex>(random_complex(c.rng, 200, 4));
    const ConstructibleFunction phi = random_function(c.rng, K, false);
    c.expect(link_op(phi) == reference::link_op(phi),
             "closed form equals the sphere sum");
    // Euler characteristic of the geometric link against the sphere around
    // a barycenter.
    const Subdivision sub = barycentric_subdivision(*K);
    for (int probe = 0; probe < 5; ++probe) {
      const SimplexId s = pick(c.rng, 0, static_cast<int>(K->size()) - 1);
      const Complex gl = geometric_link(*K, K->simplex(s));
      const long long via_sub = reference::geometric_link_chi(*K, sub, s);
      const long long via_join = gl.empty() ? 0 : euler_characteristic(gl);
      c.expect(via_join == via_sub, "geometric link euler characteristic");
    }
  }
  return c.out;
}

Outcome support_slice_suite(const Options& opt) {
  Checker c("support and slice", opt);
  for (int iter = 0; iter < opt.size; ++iter) {
    auto K = std::make_shared<const Complex>(random_complex(c.rng, 120, 4));
    const ConstructibleFunction phi = random_function(c.rng, K, false);
    const int d = support_dim(phi);
    const int dh = support_dim(half_link(phi));
    const int dc = support_dim(co_half_link(phi));
    // even bound drops for the half-link, odd bound for the co-half-link
    const int even_bound = d <= 0 ? 0 : (d % 2 == 0 ? d : d + 1);
    const int odd_bound = d < 0 ? -1 : (d % 2 == 1 ? d : d + 1);
    c.expect(dh <= even_bound - 1, "support bound for the half-link");
    c.expect(dc <= odd_bound - 1 + 1, "support bound for the co-half-link");
  }
  // Slice across a product with an interval.
  const Complex path = Complex::from_maximal({{0, 1}, {1, 2}});
  for (int iter = 0; iter < std::max(1, opt.size / 2); ++iter) {
    auto K = std::make_shared<const Complex>(random_complex(c.rng, 40, 3));
    auto prod = std::make_shared<const Complex>(product(*K, path));
    const ConstructibleFunction phi = random_function(c.rng, K, false);
    const ConstructibleFunction lift = lift_to_product(phi, path, prod);
    const ConstructibleFunction hl = half_link(lift);
    const ConstructibleFunction om = co_half_link(lift);
    const ConstructibleFunction hK = half_link(phi);
    const ConstructibleFunction oK = co_half_link(phi);
    bool slice_h = true, slice_o = true;
    for (SimplexId i = 0; i < static_cast<SimplexId>(K->size()); ++i) {
      std::vector<VertexId> verts;
      for (VertexId v : K->simplex(i).vertices())
        verts.push_back(product_vertex(path, v, 1));
      const SimplexId mid = prod->id_of(Simplex(verts));
      slice_h = slice_h && hl[mid] == oK[i];
      slice_o = slice_o && om[mid] == hK[i];
    }
    c.expect(slice_h, "half-link restricts to the co-half-link");
    c.expect(slice_o, "co-half-link restricts to the half-link");
  }
  return c.out;
}

Outcome ideal_suite(const Options& opt) {
  Checker c("ideal stability", opt);
  for (int iter = 0; iter < opt.size; ++iter) {
    auto K = std::make_shared<const Complex>(random_complex(c.rng, 150, 4));
    const ConstructibleFunction phi = random_ideal_element(c.rng, K);
    c.expect(in_ideal_I(phi), "generated element lies in the ideal");
    const ConstructibleFunction hl = half_link(phi);
    c.expect(is_integer_valued(hl) && in_ideal_I(hl),
             "half-link stays in the ideal");
  }
  return c.out;
}

Outcome subdivision_suite(const Options& opt) {
  Checker c("subdivision invariance", opt);
  for (int iter = 0; iter < std::max(1, opt.size / 2); ++iter) {
    auto K = std::make_shared<const Complex>(random_complex(c.rng, 60, 3));
    const Subdivision sub = barycentric_subdivision(*K);
    auto Kp = std::make_shared<const Complex>(sub.complex);
    c.expect(euler_characteristic(*K) == euler_characteristic(*Kp),
             "subdivision preserves the euler characteristic");
    const ConstructibleFunction phi = random_function(c.rng, K, false);
    ConstructibleFunction pulled = ConstructibleFunction::zero(Kp);
    for (SimplexId i = 0; i < static_cast<SimplexId>(Kp->size()); ++i)
      pulled.set(i, phi[sub.carrier[i]]);
    const ConstructibleFunction lk = link_op(phi);
    const ConstructibleFunction lkp = link_op(pulled);
    bool carrier_ok = true;
    for (SimplexId i = 0; i < static_cast<SimplexId>(Kp->size()); ++i)
      carrier_ok = carrier_ok && lkp[i] == lk[sub.carrier[i]];
    c.expect(carrier_ok, "link operator commutes with the carrier map");
  }
  return c.out;
}

Outcome polynomial_suite(const Options& opt) {
  Checker c("polynomial ring", opt);
  auto random_poly = [&](int maxdeg) {
    const int deg = pick(c.rng, 0, maxdeg);
    std::vector<Rational> coeffs;
    for (int i = 0; i <= deg; ++i) {
      const int num = pick(c.rng, -12, 12);
      const int den = 1 << pick(c.rng, 0, 3);
      coeffs.emplace_back(num, den);
    }
    return RationalPolynomial(std::move(coeffs));
  };
  for (int iter = 0; iter < opt.size * 20; ++iter) {
    const RationalPolynomial P = random_poly(8);
    c.expect(in_script_P(P) == in_script_P_recursive(P),
             "membership routes agree on " + P.str());
  }
  for (int iter = 0; iter < opt.size; ++iter) {
    // decomposition round-trip on integer-valued polynomials
    BinomialDecomposition d;
    const int len = pick(c.rng, 1, 7);
    for (int i = 0; i < len; ++i) d.n.emplace_back(pick(c.rng, -20, 20));
    const RationalPolynomial P = from_binomial(d);
    auto d2 = binomial_decompose(P);
    c.expect(d2.has_value() && from_binomial(*d2) == P,
             "binomial decomposition round-trip");
    // ring closure under product and translation
    const RationalPolynomial Q = from_binomial([&] {
      BinomialDecomposition e;
      for (int i = 0; i < 4; ++i)
        e.n.emplace_back(pick(c.rng, -4, 4) * (Int(1) << (i / 2)));
      return e;
    }());
    if (in_script_P(P) && in_script_P(Q)) {
      c.expect(in_script_P(P * Q), "ring closed under products");
      c.expect(in_script_P(P.translate(1)), "ring closed under translation");
    }
  }
  return c.out;
}

Outcome invariants_suite(const Options& opt) {
  Checker c("invariant battery", opt);
  const GeneratorCounts base = generator_counts(ProfileMode::kBase);
  const GeneratorCounts ext = generator_counts(ProfileMode::kExtended);
  c.expect(base.s_prime == 26 && ext.s_prime == 40, "generator family sizes");
  c.expect(base.total == (Int(1) << 29) - 29, "base battery total");
  c.expect(ext.total == (Int(1) << 43) - 43, "extended battery total");

  // Additivity over disjoint union: doubling a complex kills every parity.
  for (int iter = 0; iter < std::max(1, opt.size / 10); ++iter) {
    const Complex K = random_complex(c.rng, 60, 3);
    auto dbl =
        std::make_shared<const Complex>(disjoint_union(K, K).complex);
    const BaseProfile p = base_profile(dbl, ProfileMode::kExtended);
    if (!p.integral) continue;
    const NonzeroReport rep =
        nonzero_char_numbers(p, ProfileMode::kExtended, 1 << 16);
    c.expect(rep.enumerated && rep.nonzero.empty(),
             "parities of a doubled complex vanish");
  }

  // Congruence mod twice the ideal: perturbing the inputs never moves a
  // characteristic number.
  for (int iter = 0; iter < std::max(1, opt.size / 10); ++iter) {
    WitnessResult w = generate_witness(
        CharIndex{ProfileMode::kBase, (1ull << 1) | (1ull << 7)});
    const BaseProfile p = base_profile(w.complex, ProfileMode::kExtended);
    ConstructibleFunction beta2 = p.beta;
    const std::vector<VertexId>& vids = w.complex->vertex_ids();
    const VertexId v = vids[pick(c.rng, 0, static_cast<int>(vids.size()) - 1)];
    beta2.set(w.complex->vertex_simplex(v),
              beta2[w.complex->vertex_simplex(v)] + Dyadic(2));
    const BaseProfile q = profile_from_functions(p.phi, beta2, p.gamma,
                                                 p.delta, p.eps,
                                                 ProfileMode::kExtended);
    const CharIndex idx{ProfileMode::kBase, (1ull << 1) | (1ull << 7)};
    c.expect(char_number(p, idx) == char_number(q, idx),
             "characteristic number invariant under 2I perturbation");
  }
  return c.out;
}

Outcome witness_suite(const Options& opt) {
  Checker c("witness pipeline", opt);
  // Parity table rows behind the disc recipes.
  const auto table = disc_parity_table();
  const std::array<std::array<int, 4>, 5> want = {{{0, 0, 0, 0},
                                                   {1, 1, 0, 0},
                                                   {1, 0, 0, 0},
                                                   {0, 0, 1, 0},
                                                   {0, 0, 1, 1}}};
  c.expect(table == want, "disc parity table");

  // Bubble recipes from a clean base.
  auto run = [&](std::initializer_list<int> ls) {
    std::array<Int, 3> abc = {0, 0, 0};
    for (int l : ls) abc = bubble_update(abc, l);
    for (auto& x : abc) x = (x % 4 + 4) % 4;
    return abc;
  };
  c.expect(run({1, 3}) == std::array<Int, 3>{0, 2, 0}, "bubble recipe (0,2,0)");
  c.expect(run({1, 1, 1, 2, 3}) == std::array<Int, 3>{0, 0, 2},
           "bubble recipe (0,0,2)");
  c.expect(run({1, 1, 1, 1, 2}) == std::array<Int, 3>{2, 0, 0},
           "bubble recipe (2,0,0)");

  // Ordering property: each block's designated expression is odd and all
  // later expressions even at every vertex.
  for (int pos = 0; pos < kNumVExprs; ++pos) {
    const DecoratedCurve block = elementary_block(BlockKind::for_expr(pos));
    block.validate();
    bool ok = true;
    bool odd_at_p0 = false;
    for (VertexId v : block.complex->vertex_ids()) {
      const std::uint64_t m = vertex_odd_mask45(block, v);
      if (v == block.p0) odd_at_p0 = (m >> pos) & 1;
      ok = ok && (m >> (pos + 1)) == 0;
    }
    c.expect(odd_at_p0, "designated expression odd: " + vexpr_name(pos));
    c.expect(ok, "later expressions vanish: " + vexpr_name(pos));
  }

  // A couple of tiny end-to-end pipelines.
  std::vector<CharIndex> picks = {
      {ProfileMode::kBase, (1ull << 1) | (1ull << 7)},
      {ProfileMode::kBase, 1ull << 3},
      {ProfileMode::kExtended, (1ull << 2) | (1ull << 31)},
  };
  for (const CharIndex& idx : picks) {
    try {
      WitnessResult w = generate_witness(idx);
      c.expect(true, "witness " + idx.str());
    } catch (const std::exception& e) {
      c.expect(false, "witness " + idx.str() + ": " + e.what());
    }
  }
  return c.out;
}

std::vector<Outcome> run_all(const Options& opt) {
  return {operator_identity_suite(opt), link_oracle_suite(opt),
          support_slice_suite(opt),     ideal_suite(opt),
          subdivision_suite(opt),       polynomial_suite(opt),
          invariants_suite(opt),        witness_suite(opt)};
}

}  // namespace confun::selfcheck
