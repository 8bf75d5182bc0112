// Acceptance suite: one criterion per entry, each printing a pass/fail line.
// Run all with no arguments or a single one with --criterion N.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

#include "confun/io.hpp"
#include "confun/reference.hpp"
#include "confun/selfcheck.hpp"
#include "confun/witness.hpp"

using namespace confun;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> run;
};

using Rng = std::mt19937_64;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --------------------------------------------------------------------------
// 1. operator identities on a random corpus, exact, under 10 s

bool criterion_identities(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  int functions = 0;
  bool ok = true;
  while (functions < 500) {
    auto K = std::make_shared<const Complex>(
        selfcheck::random_complex(rng, 300, 4));
    for (int rep = 0; rep < 5 && functions < 500; ++rep, ++functions) {
      const ConstructibleFunction phi = selfcheck::random_function(rng, K, false);
      const ConstructibleFunction l = link_op(phi);
      const ConstructibleFunction hl = half_link(phi);
      const ConstructibleFunction om = co_half_link(phi);
      ok = ok && link_op(l) == l.scaled(Dyadic(2));
      ok = ok && hl + om == phi;
      ok = ok && half_link(hl) == hl;
      ok = ok && co_half_link(om) == om;
      ok = ok && half_link(om) == ConstructibleFunction::zero(K);
      ok = ok && co_half_link(hl) == ConstructibleFunction::zero(K);
      ok = ok && euler_integral(hl).is_zero();
      ok = ok && euler_integral(om) == euler_integral(phi);
      if (!ok) {
        detail = "identity failed on a corpus complex";
        return false;
      }
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << functions << " functions, " << dt << " s";
  detail = os.str();
  return dt < 10.0;
}

// --------------------------------------------------------------------------
// 2. closed-form link operator vs the sphere-sum reference, under 60 s

bool criterion_oracle(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(2002);
  for (int iter = 0; iter < 100; ++iter) {
    auto K = std::make_shared<const Complex>(
        selfcheck::random_complex(rng, 200, 4));
    const ConstructibleFunction phi = selfcheck::random_function(rng, K, false);
    if (!(link_op(phi) == reference::link_op(phi))) {
      detail = "disagreement at corpus complex " + std::to_string(iter);
      return false;
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "100 complexes, " << dt << " s";
  detail = os.str();
  return dt < 60.0;
}

// --------------------------------------------------------------------------
// 3. support bounds and the slice property

bool criterion_support_slice(std::string& detail) {
  Rng rng(3003);
  for (int iter = 0; iter < 100; ++iter) {
    auto K = std::make_shared<const Complex>(
        selfcheck::random_complex(rng, 200, 4));
    const ConstructibleFunction phi = selfcheck::random_function(rng, K, false);
    const int d = support_dim(phi);
    // dim supp phi <= 2l  =>  dim supp half-link <= 2l - 1
    const int l_even = d < 0 ? 0 : (d + 1) / 2;
    if (support_dim(half_link(phi)) > 2 * l_even - 1) {
      detail = "half-link support bound failed";
      return false;
    }
    // dim supp phi <= 2l + 1  =>  dim supp co-half-link <= 2l
    const int l_odd = d < 1 ? 0 : d / 2;
    if (support_dim(co_half_link(phi)) > 2 * l_odd) {
      detail = "co-half-link support bound failed";
      return false;
    }
  }
  const Complex path = Complex::from_maximal({{0, 1}, {1, 2}});
  for (int iter = 0; iter < 20; ++iter) {
    auto K = std::make_shared<const Complex>(
        selfcheck::random_complex(rng, 40, 3));
    auto prod = std::make_shared<const Complex>(product(*K, path));
    const ConstructibleFunction phi = selfcheck::random_function(rng, K, false);
    const ConstructibleFunction lift =
        selfcheck::lift_to_product(phi, path, prod);
    const ConstructibleFunction hl = half_link(lift);
    const ConstructibleFunction om = co_half_link(lift);
    const ConstructibleFunction hK = half_link(phi);
    const ConstructibleFunction oK = co_half_link(phi);
    for (SimplexId i = 0; i < (SimplexId)K->size(); ++i) {
      std::vector<VertexId> verts;
      for (VertexId v : K->simplex(i).vertices())
        verts.push_back(product_vertex(path, v, 1));
      const SimplexId mid = prod->id_of(Simplex(verts));
      if (!(hl[mid] == oK[i]) || !(om[mid] == hK[i])) {
        detail = "slice identity failed on product " + std::to_string(iter);
        return false;
      }
    }
  }
  detail = "100 support checks, 20 sliced products";
  return true;
}

// --------------------------------------------------------------------------
// 4. counting identities

bool criterion_counts(std::string& detail) {
  const GeneratorCounts base = generator_counts(ProfileMode::kBase);
  const GeneratorCounts ext = generator_counts(ProfileMode::kExtended);
  const bool ok =
      base.s_family == std::array<int, 4>{4, 4, 18, 14} &&
      base.s_prime == 26 && ext.s_prime == 40 &&
      base.novel_depth3 == (Int(1) << 29) - 34 &&
      ext.novel_depth3 == (Int(1) << 43) - 48 &&
      base.total == (Int(1) << 29) - 29 && ext.total == (Int(1) << 43) - 43;
  detail = "|S4| = 18, |S5| = 14, totals 2^29-29 and 2^43-43";
  return ok;
}

// --------------------------------------------------------------------------
// 5. the wedge of two 3-spheres

bool criterion_wedge_spheres(std::string& detail) {
  WitnessResult w = generate_witness_chi();
  const BaseProfile p = base_profile(w.complex, ProfileMode::kExtended);
  if (!p.integral) {
    detail = "profile not integral";
    return false;
  }
  const AkNumbers ak = ak_numbers(p);
  const NonzeroReport nz = nonzero_char_numbers(p, ProfileMode::kExtended);
  const bool ok = ak.chi_parity == 1 &&
                  ak.integral_parity == std::array<int, 4>{0, 0, 0, 0} &&
                  p.beta == ConstructibleFunction::zero(w.complex) &&
                  p.gamma == ConstructibleFunction::zero(w.complex) &&
                  p.delta == ConstructibleFunction::zero(w.complex) &&
                  p.eps == ConstructibleFunction::zero(w.complex) &&
                  nz.enumerated && nz.nonzero.empty();
  detail = "chi odd, depth-2 even, derived functions zero, no nonzero indices";
  return ok;
}

// --------------------------------------------------------------------------
// 6. the block table

bool criterion_blocks(std::string& detail) {
  auto triple = [](const DecoratedCurve& L) {
    auto v = vertex_expressions(L, L.p0);
    return std::array<int, 3>{v[1].is_odd() ? 1 : 0, v[8].is_odd() ? 1 : 0,
                              v[11].is_odd() ? 1 : 0};
  };
  const DecoratedCurve A = elementary_block(BlockKind::A());
  const DecoratedCurve B = elementary_block(BlockKind::B());
  const DecoratedCurve C = elementary_block(BlockKind::C());
  // exact integer values at the distinguished vertex
  auto vA = vertex_expressions(A, A.p0);
  bool ok = vA[1] == Dyadic(1) && vA[8].is_zero() && vA[11].is_zero();
  ok = ok && triple(B) == std::array<int, 3>{0, 1, 0};
  ok = ok && triple(C) == std::array<int, 3>{1, 1, 1};
  if (!ok) {
    detail = "one-function block triples";
    return false;
  }
  for (int pos : {31, 37, 43}) {  // O(ad), O(abd), O(abcd)
    const DecoratedCurve L = elementary_block(BlockKind::for_expr(pos));
    L.validate();
    if (!((vertex_odd_mask45(L, L.p0) >> pos) & 1)) {
      detail = "designated expression even on " + vexpr_name(pos);
      return false;
    }
    for (VertexId v : L.complex->vertex_ids())
      if (vertex_odd_mask45(L, v) >> (pos + 1)) {
        detail = "later expression odd on " + vexpr_name(pos);
        return false;
      }
  }
  detail = "A, B, C triples and the delta-family blocks";
  return true;
}

// --------------------------------------------------------------------------
// 7. bubble recipes

bool criterion_bubbles(std::string& detail) {
  auto run = [&](std::initializer_list<int> ls) {
    std::array<Int, 3> abc = {0, 0, 0};
    for (int l : ls) abc = bubble_update(abc, l);
    for (auto& x : abc) x = (x % 4 + 4) % 4;
    return abc;
  };
  const bool ok = run({1, 3}) == std::array<Int, 3>{0, 2, 0} &&
                  run({1, 1, 1, 2, 3}) == std::array<Int, 3>{0, 0, 2} &&
                  run({1, 1, 1, 1, 2}) == std::array<Int, 3>{2, 0, 0};
  detail = "(0,2,0), (0,0,2), (2,0,0)";
  return ok;
}

// --------------------------------------------------------------------------
// 8. the disc parity table

bool criterion_parity_table(std::string& detail) {
  const auto table = disc_parity_table();
  const std::array<std::array<int, 4>, 5> want = {{{0, 0, 0, 0},
                                                   {1, 1, 0, 0},
                                                   {1, 0, 0, 0},
                                                   {0, 0, 1, 0},
                                                   {0, 0, 1, 1}}};
  detail = "rows t = 1..5";
  return table == want;
}

// --------------------------------------------------------------------------
// 9. sampled independence

std::vector<CharIndex> independence_sample() {
  std::vector<CharIndex> picks;
  // the four depth-2 numbers
  for (int b = 3; b <= 6; ++b)
    picks.push_back({ProfileMode::kBase, 1ull << b});
  // every base generator paired with one plain factor
  for (int b = 3; b <= 28; ++b)
    picks.push_back({ProfileMode::kBase, (1ull << 0) | (1ull << b)});
  // random extended indices of small weight, several with a delta or
  // epsilon factor
  Rng rng(9009);
  std::set<std::uint64_t> seen;
  int with_de = 0, plain = 0;
  while (with_de < 5 || plain < 5) {
    const int nbit = 3 + (int)(rng() % 40);
    std::uint64_t mask = 1ull << nbit;
    if (rng() % 2) mask |= 1ull << (rng() % 3);
    if (rng() % 2) mask |= 1ull << (3 + rng() % 40);
    const CharIndex idx{ProfileMode::kExtended, mask};
    if (!idx.valid() || !idx.novel()) continue;
    if (!seen.insert(mask).second) continue;
    const bool de = (mask >> 29) != 0;
    if (de && with_de < 5) {
      picks.push_back(idx);
      ++with_de;
    } else if (!de && plain < 5) {
      picks.push_back(idx);
      ++plain;
    }
  }
  return picks;
}

bool criterion_independence(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CharIndex> picks = independence_sample();
  for (const CharIndex& idx : picks) {
    try {
      WitnessResult w = generate_witness(idx);  // battery checked inside
      (void)w;
    } catch (const std::exception& e) {
      detail = idx.str() + ": " + e.what();
      return false;
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << picks.size() << " indices, " << dt << " s";
  detail = os.str();
  return dt < 600.0;
}

// --------------------------------------------------------------------------
// 10. thickening congruences

bool criterion_thickening(std::string& detail) {
  int count = 0;
  for (int b = 3; b <= 28 && count < 20; ++b, ++count) {
    const CharIndex idx{ProfileMode::kBase, (1ull << 0) | (1ull << b)};
    DecoratedCurve curve = build_L1_for_index(idx);
    DecoratedSurface surface = fill_cycles(curve);
    adjust_mod4(surface);
    ThickenResult t = thicken(surface);
    try {
      verify_thickening(surface, t.complex);
    } catch (const std::exception& e) {
      detail = idx.str() + ": " + e.what();
      return false;
    }
  }
  detail = std::to_string(count) + " pipeline surfaces, euler + mod 8/4/2";
  return true;
}

// --------------------------------------------------------------------------
// 11. the polynomial ring

bool criterion_polynomials(std::string& detail) {
  Rng rng(1111);
  for (int iter = 0; iter < 10000; ++iter) {
    const int deg = (int)(rng() % 9);
    std::vector<Rational> coeffs;
    for (int i = 0; i <= deg; ++i) {
      const long long num = (long long)(rng() % 25) - 12;
      const long long den = 1ll << (rng() % 4);
      coeffs.emplace_back(num, den);
    }
    const RationalPolynomial P{std::move(coeffs)};
    if (in_script_P(P) != in_script_P_recursive(P)) {
      detail = "routes disagree on " + P.str();
      return false;
    }
  }
  const RationalPolynomial half = RationalPolynomial::parse("0,0,-1/2,0,1/2");
  if (!in_script_P(half) || in_script_P(RationalPolynomial::binomial(2))) {
    detail = "membership examples";
    return false;
  }
  // the displayed identity, exactly
  const RationalPolynomial rhs = op_p4() + RationalPolynomial::parse("0,3") *
                                               RationalPolynomial::parse("-1,1") *
                                               RationalPolynomial::parse("-1,1");
  if (!(half == rhs)) {
    detail = "mod-8 identity";
    return false;
  }
  Mod8Reduction red = mod8_reduce(half);
  RationalPolynomial back = red.residual;
  auto gens = mod8_generators();
  for (int i = 0; i < 6; ++i) back += gens[i].scaled(Rational(red.coords[i]));
  if (!(back == half)) {
    detail = "mod-8 reconstruction";
    return false;
  }
  detail = "10000 random polynomials, examples, mod-8 identity";
  return true;
}

// --------------------------------------------------------------------------
// 12. subdivision invariance on witnesses

bool criterion_subdivision(std::string& detail) {
  Rng rng(1212);
  std::vector<CharIndex> picks;
  for (int b = 3; b <= 6; ++b) picks.push_back({ProfileMode::kBase, 1ull << b});
  for (int b = 7; b <= 22; ++b)
    picks.push_back({ProfileMode::kBase, (1ull << 0) | (1ull << b)});
  int sampled = 0;
  for (const CharIndex& idx : picks) {
    WitnessResult w = generate_witness(idx);
    const Subdivision sub = barycentric_subdivision(*w.complex);
    auto Kp = std::make_shared<const Complex>(sub.complex);
    if (euler_characteristic(*Kp) != euler_characteristic(*w.complex)) {
      detail = "euler characteristic moved under subdivision";
      return false;
    }
    // the link operator through the carrier map
    const ConstructibleFunction phi =
        selfcheck::random_function(rng, w.complex, false);
    ConstructibleFunction pulled = ConstructibleFunction::zero(Kp);
    for (SimplexId s = 0; s < (SimplexId)Kp->size(); ++s)
      pulled.set(s, phi[sub.carrier[s]]);
    const ConstructibleFunction lk = link_op(phi);
    const ConstructibleFunction lkp = link_op(pulled);
    for (SimplexId s = 0; s < (SimplexId)Kp->size(); ++s)
      if (!(lkp[s] == lk[sub.carrier[s]])) {
        detail = "link operator not carrier-invariant";
        return false;
      }
    const BaseProfile p0 = base_profile(w.complex, ProfileMode::kExtended);
    const BaseProfile p1 = base_profile(Kp, ProfileMode::kExtended);
    if (!p0.integral || !p1.integral) {
      detail = "profile lost integrality";
      return false;
    }
    const EulerConditions c0 = euler_conditions(p0), c1 = euler_conditions(p1);
    if (!(c0.all() && c1.all())) {
      detail = "euler verdicts moved";
      return false;
    }
    const AkNumbers a0 = ak_numbers(p0), a1 = ak_numbers(p1);
    if (a0.chi_parity != a1.chi_parity ||
        a0.integral_parity != a1.integral_parity) {
      detail = "depth-2 parities moved";
      return false;
    }
    for (int probe = 0; probe < 5; ++probe) {
      std::uint64_t mask = 0;
      if (rng() % 2) mask |= 1ull << (rng() % 3);
      mask |= 1ull << (3 + rng() % 40);
      if (rng() % 2) mask |= 1ull << (3 + rng() % 40);
      const CharIndex j{ProfileMode::kExtended, mask};
      if (!j.valid()) continue;
      if (char_number(p0, j) != char_number(p1, j)) {
        detail = "a characteristic number moved under subdivision";
        return false;
      }
      ++sampled;
    }
  }
  detail = std::to_string(picks.size()) + " witnesses, " +
           std::to_string(sampled) + " sampled indices";
  return sampled >= 90;
}

std::vector<Criterion> criteria() {
  return {
      {1, "operator identities on the random corpus", criterion_identities},
      {2, "link operator equals the sphere-sum reference", criterion_oracle},
      {3, "support bounds and slice identities", criterion_support_slice},
      {4, "counting identities", criterion_counts},
      {5, "two wedged 3-spheres", criterion_wedge_spheres},
      {6, "elementary block table", criterion_blocks},
      {7, "bubble recipes", criterion_bubbles},
      {8, "disc parity table", criterion_parity_table},
      {9, "sampled independence witnesses", criterion_independence},
      {10, "thickening congruences", criterion_thickening},
      {11, "polynomial operator ring", criterion_polynomials},
      {12, "subdivision invariance", criterion_subdivision},
  };
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
  }
  bool all_pass = true;
  for (const Criterion& c : criteria()) {
    if (only && c.number != only) continue;
    std::string detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.number << ". " << c.title
              << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
