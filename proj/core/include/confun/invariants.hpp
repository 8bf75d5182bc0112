#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confun/constructible.hpp"

namespace confun {

enum class ProfileMode { kBase, kExtended };

ProfileMode parse_mode(const std::string& s);  // "base" / "extended"
std::string mode_name(ProfileMode m);

// Bit layout of the quantity vector (fixed, little-endian by bit index):
//   0..2   phi(p), beta(p), gamma(p)
//   3..6   co-half-links of phi*beta, phi*gamma, beta*gamma, phi*beta*gamma
//   7..10  co-half-links of beta_2, gamma_2, beta_3, gamma_3
//   11..28 the eighteen three-letter products with one subscripted factor
//   29..42 the fourteen products with a delta or epsilon factor
inline constexpr int kNumBaseQuantities = 29;
inline constexpr int kNumExtendedQuantities = 43;
inline constexpr int kSFamilySizes[4] = {4, 4, 18, 14};  // S2..S5

int quantity_count(ProfileMode m);
// Name of a quantity bit, e.g. "beta", "O(phi*beta_2)".
std::string quantity_name(int bit);

// Selects factors of a characteristic-number product: the three m-bits pick
// plain factors, the n-bits pick co-half-link factors. At least one n-bit
// must be set.
struct CharIndex {
  ProfileMode mode = ProfileMode::kBase;
  std::uint64_t mask = 0;

  std::uint64_t m_bits() const { return mask & 0x7; }
  std::uint64_t n_bits() const { return mask & ~std::uint64_t(0x7); }
  bool valid() const;
  // Indices with m = 0 and a single n-bit reproduce depth-2 numbers or are
  // automatically even; they are excluded from the novel counts.
  bool novel() const;
  // True for the four depth-2 products (m = 0, single n-bit in 3..6).
  bool is_depth2() const;

  std::string str() const;  // "base:1f", "extended:2c0000007"
  static CharIndex parse(const std::string& text);

  auto operator<=>(const CharIndex&) const = default;
};

// Per-vertex evaluation of all quantities entering the products, plus the
// derived global functions.
struct BaseProfile {
  ComplexPtr L;
  ProfileMode mode = ProfileMode::kBase;
  ConstructibleFunction phi, beta, gamma, delta, eps;
  bool half_link_phi_zero = false;   // whether the half-link of phi vanishes
  bool beta_routes_agree = true;     // half_link(phi^2) == half_link(phi^2-phi)
  bool integral = true;              // every quantity integer at every vertex
  std::string integrality_note;

  std::vector<VertexId> vertices;
  std::vector<std::array<Dyadic, kNumExtendedQuantities>> quantities;
  std::vector<std::uint64_t> odd_mask;  // parity pattern per vertex
};

// Full profile of a complex of dimension <= 3 (phi = co-half-link of 1).
BaseProfile base_profile(ComplexPtr L, ProfileMode mode);

// Profile from explicitly supplied functions (decorated curves, congruence
// perturbation tests). phi plays the role of the first plain factor.
BaseProfile profile_from_functions(const ConstructibleFunction& phi,
                                   const ConstructibleFunction& beta,
                                   const ConstructibleFunction& gamma,
                                   const ConstructibleFunction& delta,
                                   const ConstructibleFunction& eps,
                                   ProfileMode mode);

struct EulerConditions {
  bool one = false, phi_beta = false, phi_gamma = false, beta_gamma = false,
       phi_beta_gamma = false;
  bool all() const {
    return one && phi_beta && phi_gamma && beta_gamma && phi_beta_gamma;
  }
};

EulerConditions euler_conditions(const BaseProfile& p);
EulerConditions euler_conditions(ComplexPtr L);

struct AkNumbers {
  int chi_parity = 0;
  std::array<int, 4> integral_parity{};  // phi*beta, phi*gamma, beta*gamma, all
  bool all_even() const {
    return chi_parity == 0 && integral_parity == std::array<int, 4>{};
  }
};

// Parities of the four depth-2 integrals and of the euler characteristic.
// Requires the euler conditions to hold.
AkNumbers ak_numbers(const BaseProfile& p);

// Parity of the vertex sum of the selected product.
int char_number(const BaseProfile& p, const CharIndex& idx);

struct NonzeroReport {
  ProfileMode mode = ProfileMode::kBase;
  // Exact compressed form: every distinct per-vertex odd mask with its
  // multiplicity.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> mask_multiset;
  bool enumerated = false;  // explicit walk completed within budget
  bool capped = false;      // index list truncated at the cap
  std::uint64_t nonzero_count = 0;  // all valid nonzero indices found
  std::vector<CharIndex> nonzero;   // sorted by mask, truncated at cap
  std::vector<CharIndex> nonzero_novel() const;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 20;

NonzeroReport nonzero_char_numbers(const BaseProfile& p, ProfileMode mode,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// One link's verdicts against the full battery.
struct LinkReport {
  bool integral = true;
  EulerConditions euler;
  std::optional<AkNumbers> ak;
  std::optional<NonzeroReport> base_nonzero;
  std::optional<NonzeroReport> ext_nonzero;  // extended mode only
  bool pass = false;  // no obstruction
};

LinkReport link_battery(ComplexPtr L, ProfileMode mode,
                        std::uint64_t cap = kDefaultEnumerationCap);

struct SpaceVerdict {
  Simplex at;   // the simplex whose link was examined
  LinkReport report;
};

struct SpaceReport {
  int dim = -1;
  bool pass = false;
  // dim <= 3: a single entry (the euler conditions of the space itself).
  std::vector<SpaceVerdict> verdicts;
};

SpaceReport check_space(ComplexPtr X,
                        std::uint64_t cap = kDefaultEnumerationCap);

struct GeneratorCounts {
  std::array<int, 4> s_family;  // |S2|, |S3|, |S4|, |S5|
  int s_prime = 0;              // 26 or 40
  Int novel_depth3;             // 2^29-34 or 2^43-48
  Int total;                    // 2^29-29 or 2^43-43
};

GeneratorCounts generator_counts(ProfileMode mode);

}  // namespace confun
