#include "confun/invariants.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace confun {

namespace {

// Factor slots for the products.
enum Slot : int {
  kPhi = 0,
  kBeta,
  kGamma,
  kPhi2,
  kPhi3,
  kBeta2,
  kBeta3,
  kGamma2,
  kGamma3,
  kDelta,
  kEps,
  kNumSlots
};

struct ProductSpec {
  const char* name;
  std::vector<int> slots;
};

// Bits 3..42. Order is canonical and stable: the four plain products, the
// four subscripted singles, the eighteen mixed products, then the
// delta/epsilon family.
const std::vector<ProductSpec>& product_table() {
  static const std::vector<ProductSpec> table = {
      {"phi*beta", {kPhi, kBeta}},
      {"phi*gamma", {kPhi, kGamma}},
      {"beta*gamma", {kBeta, kGamma}},
      {"phi*beta*gamma", {kPhi, kBeta, kGamma}},
      {"beta_2", {kBeta2}},
      {"gamma_2", {kGamma2}},
      {"beta_3", {kBeta3}},
      {"gamma_3", {kGamma3}},
      {"phi*beta_2", {kPhi, kBeta2}},
      {"phi*gamma_2", {kPhi, kGamma2}},
      {"beta*phi_2", {kBeta, kPhi2}},
      {"beta*gamma_2", {kBeta, kGamma2}},
      {"gamma*phi_2", {kGamma, kPhi2}},
      {"gamma*beta_2", {kGamma, kBeta2}},
      {"phi*beta_3", {kPhi, kBeta3}},
      {"phi*gamma_3", {kPhi, kGamma3}},
      {"beta*phi_3", {kBeta, kPhi3}},
      {"beta*gamma_3", {kBeta, kGamma3}},
      {"gamma*phi_3", {kGamma, kPhi3}},
      {"gamma*beta_3", {kGamma, kBeta3}},
      {"phi*beta*gamma_2", {kPhi, kBeta, kGamma2}},
      {"phi*gamma*beta_2", {kPhi, kGamma, kBeta2}},
      {"beta*gamma*phi_2", {kBeta, kGamma, kPhi2}},
      {"phi*beta*gamma_3", {kPhi, kBeta, kGamma3}},
      {"phi*gamma*beta_3", {kPhi, kGamma, kBeta3}},
      {"beta*gamma*phi_3", {kBeta, kGamma, kPhi3}},
      {"phi*delta", {kPhi, kDelta}},
      {"beta*delta", {kBeta, kDelta}},
      {"gamma*delta", {kGamma, kDelta}},
      {"phi*eps", {kPhi, kEps}},
      {"beta*eps", {kBeta, kEps}},
      {"gamma*eps", {kGamma, kEps}},
      {"phi*beta*delta", {kPhi, kBeta, kDelta}},
      {"phi*gamma*delta", {kPhi, kGamma, kDelta}},
      {"beta*gamma*delta", {kBeta, kGamma, kDelta}},
      {"phi*beta*eps", {kPhi, kBeta, kEps}},
      {"phi*gamma*eps", {kPhi, kGamma, kEps}},
      {"beta*gamma*eps", {kBeta, kGamma, kEps}},
      {"phi*beta*gamma*delta", {kPhi, kBeta, kGamma, kDelta}},
      {"phi*beta*gamma*eps", {kPhi, kBeta, kGamma, kEps}},
  };
  return table;
}

}  // namespace

ProfileMode parse_mode(const std::string& s) {
  if (s == "base") return ProfileMode::kBase;
  if (s == "extended" || s == "ext") return ProfileMode::kExtended;
  throw ParseError("unknown mode '" + s + "' (want base or extended)");
}

std::string mode_name(ProfileMode m) {
  return m == ProfileMode::kBase ? "base" : "extended";
}

int quantity_count(ProfileMode m) {
  return m == ProfileMode::kBase ? kNumBaseQuantities : kNumExtendedQuantities;
}

std::string quantity_name(int bit) {
  switch (bit) {
    case 0: return "phi";
    case 1: return "beta";
    case 2: return "gamma";
    default:
      return "O(" + std::string(product_table()[bit - 3].name) + ")";
  }
}

bool CharIndex::valid() const {
  if (n_bits() == 0) return false;
  const int bits = quantity_count(mode);
  return (mask >> bits) == 0;
}

bool CharIndex::novel() const {
  return !(m_bits() == 0 && std::popcount(n_bits()) == 1);
}

bool CharIndex::is_depth2() const {
  return m_bits() == 0 && std::popcount(n_bits()) == 1 &&
         (mask & ~std::uint64_t(0x78)) == 0;
}

std::string CharIndex::str() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%llx",
                static_cast<unsigned long long>(mask));
  return mode_name(mode) + ":" + buf;
}

CharIndex CharIndex::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("index must look like mode:hexmask, got '" + text + "'");
  CharIndex idx;
  idx.mode = parse_mode(text.substr(0, colon));
  const std::string hex = text.substr(colon + 1);
  if (hex.empty()) throw ParseError("empty mask in '" + text + "'");
  std::uint64_t mask = 0;
  for (char c : hex) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw ParseError("bad hex digit in '" + text + "'");
    mask = (mask << 4) | static_cast<std::uint64_t>(d);
  }
  idx.mask = mask;
  if (!idx.valid())
    throw ParseError("index " + text +
                     " is invalid (needs a factor outside the first three "
                     "bits and must fit the mode)");
  return idx;
}

BaseProfile profile_from_functions(const ConstructibleFunction& phi,
                                   const ConstructibleFunction& beta,
                                   const ConstructibleFunction& gamma,
                                   const ConstructibleFunction& delta,
                                   const ConstructibleFunction& eps,
                                   ProfileMode mode) {
  BaseProfile p;
  p.L = phi.complex();
  p.mode = mode;
  if (beta.complex() != p.L || gamma.complex() != p.L ||
      delta.complex() != p.L || eps.complex() != p.L)
    throw Error("profile functions live on different complexes");
  p.phi = phi;
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  p.eps = eps;

  const Complex& K = *p.L;
  std::array<ConstructibleFunction, kNumSlots> slot;
  slot[kPhi] = phi;
  slot[kBeta] = beta;
  slot[kGamma] = gamma;
  slot[kPhi2] = apply_polynomial(op_sub2(), phi);
  slot[kPhi3] = apply_polynomial(op_sub3(), phi);
  slot[kBeta2] = apply_polynomial(op_sub2(), beta);
  slot[kBeta3] = apply_polynomial(op_sub3(), beta);
  slot[kGamma2] = apply_polynomial(op_sub2(), gamma);
  slot[kGamma3] = apply_polynomial(op_sub3(), gamma);
  slot[kDelta] = delta;
  slot[kEps] = eps;

  p.vertices = K.vertex_ids();
  p.quantities.resize(p.vertices.size());
  p.odd_mask.assign(p.vertices.size(), 0);

  // Vertex-local co-half-link of each product: products are evaluated on
  // every simplex, the link sum only reads cofaces of the vertex.
  const auto& table = product_table();
  std::vector<ConstructibleFunction> products;
  products.reserve(table.size());
  for (const auto& spec : table) {
    ConstructibleFunction f = slot[spec.slots[0]];
    for (std::size_t i = 1; i < spec.slots.size(); ++i) f *= slot[spec.slots[i]];
    products.push_back(std::move(f));
  }

  for (std::size_t vi = 0; vi < p.vertices.size(); ++vi) {
    const SimplexId vs = K.vertex_simplex(p.vertices[vi]);
    auto& q = p.quantities[vi];
    q[0] = phi[vs];
    q[1] = beta[vs];
    q[2] = gamma[vs];
    for (std::size_t k = 0; k < products.size(); ++k) {
      const ConstructibleFunction& psi = products[k];
      Dyadic c;  // sum over cofaces with alternating sign by dimension
      for (SimplexId t : K.cofaces(vs)) {
        if (K.simplex(t).dim() % 2 == 0)
          c += psi[t];
        else
          c -= psi[t];
      }
      // co-half-link at a vertex: (psi(p) + c_p) / 2
      q[3 + k] = (psi[vs] + c).half();
    }
    for (int bit = 0; bit < kNumExtendedQuantities; ++bit) {
      if (!q[bit].is_integer()) {
        p.integral = false;
        if (p.integrality_note.empty())
          p.integrality_note = quantity_name(bit) + " is not an integer at vertex " +
                               std::to_string(p.vertices[vi]);
      } else if (q[bit].is_odd()) {
        p.odd_mask[vi] |= std::uint64_t(1) << bit;
      }
    }
  }
  return p;
}

BaseProfile base_profile(ComplexPtr L, ProfileMode mode) {
  if (L->dim() > 3) throw Error("profiles are defined for dimension <= 3");
  ConstructibleFunction one = ConstructibleFunction::constant(L, Dyadic(1));
  ConstructibleFunction phi = co_half_link(one);
  ConstructibleFunction phi2 = apply_polynomial(op_sub2(), phi);
  ConstructibleFunction phi3 = apply_polynomial(op_sub3(), phi);
  ConstructibleFunction phi4 = apply_polynomial(op_p4(), phi);
  ConstructibleFunction phi5 = apply_polynomial(op_p5(), phi);
  ConstructibleFunction beta = half_link(phi2);
  ConstructibleFunction gamma = half_link(phi3);
  ConstructibleFunction delta = half_link(phi4);
  ConstructibleFunction eps = half_link(phi5);
  BaseProfile p = profile_from_functions(phi, beta, gamma, delta, eps, mode);
  p.half_link_phi_zero = half_link(phi) == ConstructibleFunction::zero(L);
  p.beta_routes_agree = half_link(phi * phi) == beta;
  if (p.half_link_phi_zero && !p.beta_routes_agree)
    throw Error("internal: beta routes disagree although the half-link of phi vanishes");
  return p;
}

namespace {

bool euler_or_false(const ConstructibleFunction& f) {
  return is_integer_valued(f) && is_euler(f);
}

}  // namespace

EulerConditions euler_conditions(const BaseProfile& p) {
  EulerConditions c;
  c.one = euler_or_false(ConstructibleFunction::constant(p.L, Dyadic(1)));
  c.phi_beta = euler_or_false(p.phi * p.beta);
  c.phi_gamma = euler_or_false(p.phi * p.gamma);
  c.beta_gamma = euler_or_false(p.beta * p.gamma);
  c.phi_beta_gamma = euler_or_false(p.phi * p.beta * p.gamma);
  return c;
}

EulerConditions euler_conditions(ComplexPtr L) {
  return euler_conditions(base_profile(std::move(L), ProfileMode::kBase));
}

AkNumbers ak_numbers(const BaseProfile& p) {
  if (!euler_conditions(p).all())
    throw Error("depth-2 parities need the euler conditions to hold");
  AkNumbers ak;
  ak.chi_parity = static_cast<int>(euler_characteristic(*p.L) & 1);
  const ConstructibleFunction prods[4] = {p.phi * p.beta, p.phi * p.gamma,
                                          p.beta * p.gamma,
                                          p.phi * p.beta * p.gamma};
  for (int i = 0; i < 4; ++i) {
    Dyadic v = euler_integral(prods[i]);
    ak.integral_parity[i] = v.is_odd() ? 1 : 0;
  }
  return ak;
}

int char_number(const BaseProfile& p, const CharIndex& idx) {
  if (!idx.valid()) throw Error("invalid characteristic-number index");
  if (!p.integral)
    throw Error("characteristic numbers need integer quantities: " +
                p.integrality_note);
  int parity = 0;
  for (std::uint64_t m : p.odd_mask)
    if ((idx.mask & ~m) == 0) parity ^= 1;
  return parity;
}

std::vector<CharIndex> NonzeroReport::nonzero_novel() const {
  std::vector<CharIndex> out;
  for (const CharIndex& idx : nonzero)
    if (idx.novel()) out.push_back(idx);
  return out;
}

NonzeroReport nonzero_char_numbers(const BaseProfile& p, ProfileMode mode,
                                   std::uint64_t cap) {
  if (!p.integral)
    throw Error("characteristic numbers need integer quantities: " +
                p.integrality_note);
  NonzeroReport rep;
  rep.mode = mode;
  const std::uint64_t allowed =
      (quantity_count(mode) == 64) ? ~std::uint64_t(0)
                                   : ((std::uint64_t(1) << quantity_count(mode)) - 1);
  std::unordered_map<std::uint64_t, std::uint64_t> multiset;
  for (std::uint64_t m : p.odd_mask) ++multiset[m & allowed];
  for (const auto& [m, c] : multiset) rep.mask_multiset.emplace_back(m, c);
  std::sort(rep.mask_multiset.begin(), rep.mask_multiset.end());

  std::vector<std::uint64_t> odd_masks;
  std::uint64_t work = 0;
  bool overflow = false;
  for (const auto& [m, c] : rep.mask_multiset) {
    if (c % 2 == 0) continue;
    odd_masks.push_back(m);
    const int pc = std::popcount(m);
    if (pc >= 62 || (std::uint64_t(1) << pc) > (std::uint64_t(1) << 40)) {
      overflow = true;
      break;
    }
    work += std::uint64_t(1) << pc;
  }
  const std::uint64_t budget = std::max<std::uint64_t>(cap * 8, 1u << 21);
  if (overflow || work > budget) {
    rep.enumerated = false;
    return rep;
  }
  // Walk the union of subcubes below the odd-multiplicity masks with parity
  // bookkeeping; never materializes the full index space.
  std::unordered_map<std::uint64_t, int> parity;
  parity.reserve(static_cast<std::size_t>(work * 2 + 16));
  for (std::uint64_t m : odd_masks) {
    std::uint64_t s = m;
    while (true) {
      parity[s] ^= 1;
      if (s == 0) break;
      s = (s - 1) & m;
    }
  }
  std::vector<CharIndex> found;
  for (const auto& [sel, par] : parity) {
    if (!par) continue;
    CharIndex idx{mode, sel};
    if (idx.valid()) found.push_back(idx);
  }
  std::sort(found.begin(), found.end());
  rep.enumerated = true;
  rep.nonzero_count = found.size();
  if (found.size() > cap) {
    found.resize(cap);
    rep.capped = true;
  }
  rep.nonzero = std::move(found);
  return rep;
}

LinkReport link_battery(ComplexPtr L, ProfileMode mode, std::uint64_t cap) {
  LinkReport rep;
  BaseProfile profile = base_profile(std::move(L), mode);
  rep.integral = profile.integral;
  rep.euler = euler_conditions(profile);
  rep.pass = rep.integral && rep.euler.all();
  if (!rep.pass) return rep;
  rep.ak = ak_numbers(profile);
  rep.pass = rep.ak->all_even();
  rep.base_nonzero = nonzero_char_numbers(profile, ProfileMode::kBase, cap);
  rep.pass = rep.pass && rep.base_nonzero->enumerated &&
             rep.base_nonzero->nonzero_novel().empty();
  if (mode == ProfileMode::kExtended) {
    rep.ext_nonzero = nonzero_char_numbers(profile, ProfileMode::kExtended, cap);
    rep.pass = rep.pass && rep.ext_nonzero->enumerated &&
               rep.ext_nonzero->nonzero_novel().empty();
  }
  return rep;
}

SpaceReport check_space(ComplexPtr X, std::uint64_t cap) {
  SpaceReport rep;
  rep.dim = X->dim();
  if (rep.dim > 4) throw Error("spaces of dimension > 4 are out of range");
  if (rep.dim <= 3) {
    SpaceVerdict v;
    v.report.euler = euler_conditions(X);
    v.report.integral = true;
    v.report.pass = v.report.euler.all();
    rep.pass = v.report.pass;
    rep.verdicts.push_back(std::move(v));
    return rep;
  }
  rep.pass = true;
  for (SimplexId s = 0; s < static_cast<SimplexId>(X->size()); ++s) {
    SpaceVerdict v;
    v.at = X->simplex(s);
    auto link = std::make_shared<const Complex>(geometric_link(*X, v.at));
    v.report = link_battery(link, ProfileMode::kExtended, cap);
    rep.pass = rep.pass && v.report.pass;
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

GeneratorCounts generator_counts(ProfileMode mode) {
  GeneratorCounts c;
  c.s_family = {kSFamilySizes[0], kSFamilySizes[1], kSFamilySizes[2],
                kSFamilySizes[3]};
  c.s_prime = mode == ProfileMode::kBase ? 26 : 40;
  c.novel_depth3 = (Int(1) << (c.s_prime + 3)) - 8 - c.s_prime;
  c.total = c.novel_depth3 + 5;  // the four depth-2 numbers and chi
  return c;
}

}  // namespace confun
