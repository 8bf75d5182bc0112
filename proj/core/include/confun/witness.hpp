#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confun/constructible.hpp"
#include "confun/invariants.hpp"

namespace confun {

// The 45 vertex expressions on a decorated curve, in their canonical linear
// order. Letters a..e name the five decorations; O(...) is the co-half-link
// of the product; a trailing digit marks a subscripted factor (x2 = x^2-x,
// x3 = x^3-x).
//   0..2   a(p), b(p), c(p)
//   3..6   O(ab), O(ac), O(bc), O(abc)
//   7..12  O(a2), O(b2), O(c2), O(a3), O(b3), O(c3)
//   13..30 O(ab2), O(ac2), O(ba2), O(bc2), O(ca2), O(cb2),
//          O(ab3), O(ac3), O(ba3), O(bc3), O(ca3), O(cb3),
//          O(abc2), O(acb2), O(bca2), O(abc3), O(acb3), O(bca3)
//   31..44 O(ad), O(bd), O(cd), O(ae), O(be), O(ce),
//          O(abd), O(acd), O(bcd), O(abe), O(ace), O(bce),
//          O(abcd), O(abce)
inline constexpr int kNumVExprs = 45;

std::string vexpr_name(int pos);
// Characteristic-number bit for a vertex expression; -1 for O(a2)/O(a3),
// which select no factor of any product.
int char_bit_of_vexpr(int pos);
int vexpr_of_char_bit(int bit);

// A 1-dimensional complex with the five integer decorations and a
// distinguished vertex. Invariants (checked by validate): the co-half-link
// of every decoration vanishes, ab, ac, bc, abc and 1 are euler, and d, e
// are even-valued.
struct DecoratedCurve {
  ComplexPtr complex;
  ConstructibleFunction a, b, c, d, e;
  VertexId p0 = 0;

  const ConstructibleFunction& decoration(int i) const;
  void validate() const;  // throws VerificationError
};

// One elementary block per vertex expression; A, B, C name the three
// one-function examples (the plain, square-subscript and cube-subscript
// blocks of the second decoration).
struct BlockKind {
  int vexpr = -1;

  static BlockKind A() { return {1}; }
  static BlockKind B() { return {8}; }
  static BlockKind C() { return {11}; }
  static BlockKind for_expr(int pos);
  std::string name() const { return vexpr_name(vexpr); }
};

DecoratedCurve elementary_block(BlockKind kind);

// Evaluates all 45 expressions at a vertex.
std::array<Dyadic, kNumVExprs> vertex_expressions(const DecoratedCurve& L,
                                                  VertexId v);
std::uint64_t vertex_odd_mask45(const DecoratedCurve& L, VertexId v);

// Wedge at the distinguished vertices; decorations extend uniquely so their
// co-half-links keep vanishing.
DecoratedCurve wedge_decorated(const DecoratedCurve& L1,
                               const DecoratedCurve& L2);
DecoratedCurve union_decorated(const DecoratedCurve& L1,
                               const DecoratedCurve& L2);

// Curve whose expression parities at p0 are exactly the given set, with the
// off-vertex discipline needed by the independence argument.
DecoratedCurve build_L1(const std::vector<int>& exprs);

// Curve whose only odd characteristic-number sum is the given index
// (divisor sums cancelled by disjoint unions of sub-witnesses).
DecoratedCurve build_L1_for_index(const CharIndex& idx);

// Characteristic-number parities of a decorated curve (the decorations
// standing in for the derived functions).
std::vector<CharIndex> curve_nonzero_set(const DecoratedCurve& L,
                                         ProfileMode mode);

// A 2-complex with a function of vanishing half-link, remembering the curve
// it was built over and the decoration targets on its edges and vertices.
struct DecoratedSurface {
  ComplexPtr complex;
  ConstructibleFunction phi;
  VertexId p0 = 0;
  std::vector<SimplexId> curve_edges;          // ids in `complex`
  std::vector<std::array<Int, 5>> edge_targets;  // a,b,c,d,e per curve edge
  std::vector<VertexId> curve_vertices;
  std::vector<Int> vertex_targets_a;           // a per curve vertex
  std::vector<std::string> provenance;

  void validate() const;  // half-link of phi vanishes everywhere
};

// Attaches discs along the mod-2 cycles of the decoration parities so that
// the derived functions of phi match the decorations mod 2 on open edges.
DecoratedSurface fill_cycles(const DecoratedCurve& L1);

// Per-edge disc multiplicities realizing a parity pattern (a,b,c,d,e); the
// exposed table of the five columns at values 1..5 backs the recipe tests.
std::array<std::array<int, 4>, 5> disc_parity_table();  // rows t=1..5

// Wedges constant-value spheres along curve edges until the derived
// functions match the targets mod 4, then fixes vertex values and the
// parity of the euler integral of phi.
void adjust_mod4(DecoratedSurface& surface);

// Effect of wedging one bubble of value l onto an edge carrying (a, b, c):
// the exact update rule used both by planning and by the recipe tests.
std::array<Int, 3> bubble_update(const std::array<Int, 3>& abc, int l);

struct ThickenResult {
  ComplexPtr complex;
  std::size_t circles = 0, arcs = 0, handles = 0;  // attachment counts
};

// Dimension-raising attachments (circles / parallel arcs / fibered handles)
// making the result euler with its co-half-link of 1 congruent to phi.
ThickenResult thicken(const DecoratedSurface& surface);

// Verifies the three congruences and euler-ness of a thickening.
void verify_thickening(const DecoratedSurface& surface, const ComplexPtr& Y);

struct WitnessResult {
  ComplexPtr complex;
  std::vector<std::string> provenance;
};

// The full pipeline, self-verified against the invariant battery before
// returning. Throws VerificationError if the output fails its checks.
WitnessResult generate_witness(const CharIndex& idx);
// Witness for the euler-characteristic parity: two 3-spheres wedged.
WitnessResult generate_witness_chi();

// Battery check used by generate_witness and the acceptance suite: the
// complete set of odd invariants of L must be exactly {idx} (or just the
// euler characteristic for the chi witness).
void verify_witness_battery(const ComplexPtr& L,
                            const std::optional<CharIndex>& idx);

}  // namespace confun
