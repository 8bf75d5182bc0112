#include "confun/witness.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace confun {

namespace {

// Decoration slots entering the expression products.
enum Slot : int {
  sA = 0,
  sB,
  sC,
  sA2,
  sA3,
  sB2,
  sB3,
  sC2,
  sC3,
  sD,
  sE,
  kSlots
};

struct ExprSpec {
  const char* name;
  std::vector<int> slots;  // empty for the three plain value expressions
};

const std::array<ExprSpec, kNumVExprs>& expr_table() {
  static const std::array<ExprSpec, kNumVExprs> table = {{
      {"a", {}},
      {"b", {}},
      {"c", {}},
      {"O(ab)", {sA, sB}},
      {"O(ac)", {sA, sC}},
      {"O(bc)", {sB, sC}},
      {"O(abc)", {sA, sB, sC}},
      {"O(a2)", {sA2}},
      {"O(b2)", {sB2}},
      {"O(c2)", {sC2}},
      {"O(a3)", {sA3}},
      {"O(b3)", {sB3}},
      {"O(c3)", {sC3}},
      {"O(ab2)", {sA, sB2}},
      {"O(ac2)", {sA, sC2}},
      {"O(ba2)", {sB, sA2}},
      {"O(bc2)", {sB, sC2}},
      {"O(ca2)", {sC, sA2}},
      {"O(cb2)", {sC, sB2}},
      {"O(ab3)", {sA, sB3}},
      {"O(ac3)", {sA, sC3}},
      {"O(ba3)", {sB, sA3}},
      {"O(bc3)", {sB, sC3}},
      {"O(ca3)", {sC, sA3}},
      {"O(cb3)", {sC, sB3}},
      {"O(abc2)", {sA, sB, sC2}},
      {"O(acb2)", {sA, sC, sB2}},
      {"O(bca2)", {sB, sC, sA2}},
      {"O(abc3)", {sA, sB, sC3}},
      {"O(acb3)", {sA, sC, sB3}},
      {"O(bca3)", {sB, sC, sA3}},
      {"O(ad)", {sA, sD}},
      {"O(bd)", {sB, sD}},
      {"O(cd)", {sC, sD}},
      {"O(ae)", {sA, sE}},
      {"O(be)", {sB, sE}},
      {"O(ce)", {sC, sE}},
      {"O(abd)", {sA, sB, sD}},
      {"O(acd)", {sA, sC, sD}},
      {"O(bcd)", {sB, sC, sD}},
      {"O(abe)", {sA, sB, sE}},
      {"O(ace)", {sA, sC, sE}},
      {"O(bce)", {sB, sC, sE}},
      {"O(abcd)", {sA, sB, sC, sD}},
      {"O(abce)", {sA, sB, sC, sE}},
  }};
  return table;
}

constexpr std::uint64_t kV2Mask = 0x78;  // positions 3..6

std::uint64_t bit(int pos) { return std::uint64_t(1) << pos; }

}  // namespace

std::string vexpr_name(int pos) { return expr_table()[pos].name; }

int char_bit_of_vexpr(int pos) {
  if (pos <= 6) return pos;
  switch (pos) {
    case 7: return -1;   // O(a2)
    case 8: return 7;    // O(b2)
    case 9: return 8;    // O(c2)
    case 10: return -1;  // O(a3)
    case 11: return 9;   // O(b3)
    case 12: return 10;  // O(c3)
    default: return pos - 2;  // 13..44 -> 11..42
  }
}

int vexpr_of_char_bit(int b) {
  if (b <= 6) return b;
  switch (b) {
    case 7: return 8;
    case 8: return 9;
    case 9: return 11;
    case 10: return 12;
    default: return b + 2;  // 11..42 -> 13..44
  }
}

const ConstructibleFunction& DecoratedCurve::decoration(int i) const {
  switch (i) {
    case 0: return a;
    case 1: return b;
    case 2: return c;
    case 3: return d;
    default: return e;
  }
}

namespace {

// ---------------------------------------------------------------------------
// Curve assembly

using EdgeValues = std::vector<std::pair<Simplex, std::array<Int, 5>>>;

DecoratedCurve assemble_curve(const Complex& K, const EdgeValues& edge_values,
                              VertexId p0) {
  auto ptr = std::make_shared<const Complex>(K);
  std::array<ConstructibleFunction, 5> fn;
  for (auto& f : fn) f = ConstructibleFunction::zero(ptr);
  for (const auto& [edge, vals] : edge_values) {
    SimplexId id = ptr->id_of(edge);
    if (id < 0) throw VerificationError("curve edge missing from complex");
    for (int k = 0; k < 5; ++k) fn[k].set(id, Dyadic(vals[k]));
  }
  // Vertex values are forced by the vanishing of the co-half-links:
  // f(v) = (sum of f over the edge ends at v) / 2.
  for (VertexId v : ptr->vertex_ids()) {
    const SimplexId vs = ptr->vertex_simplex(v);
    for (int k = 0; k < 5; ++k) {
      Dyadic sum;
      for (SimplexId t : ptr->cofaces(vs))
        if (ptr->simplex(t).dim() == 1) sum += fn[k][t];
      Dyadic val = sum.half();
      if (!val.is_integer())
        throw VerificationError("odd edge-value sum at vertex " +
                                std::to_string(v));
      fn[k].set(vs, val);
    }
  }
  DecoratedCurve out;
  out.complex = ptr;
  out.a = fn[0];
  out.b = fn[1];
  out.c = fn[2];
  out.d = fn[3];
  out.e = fn[4];
  out.p0 = p0;
  return out;
}

struct CurveBuilder {
  std::vector<std::vector<VertexId>> edges;
  EdgeValues values;
  VertexId next = 0;

  VertexId fresh() { return next++; }

  // Path from u to v through `mid` fresh vertices, all edges decorated with
  // vals. u == v needs mid >= 2.
  void arc(VertexId u, VertexId v, const std::array<Int, 5>& vals, int mid) {
    VertexId prev = u;
    for (int i = 0; i < mid; ++i) {
      VertexId x = fresh();
      edges.push_back({prev, x});
      values.emplace_back(Simplex({prev, x}), vals);
      prev = x;
    }
    edges.push_back({prev, v});
    values.emplace_back(Simplex({prev, v}), vals);
  }

  DecoratedCurve finish(VertexId p0) {
    return assemble_curve(Complex::from_maximal(edges), values, p0);
  }
};

std::array<Int, 5> dvals(Int a = 0, Int b = 0, Int c = 0, Int d = 0,
                         Int e = 0) {
  return {std::move(a), std::move(b), std::move(c), std::move(d),
          std::move(e)};
}

struct BlockShape {
  DecoratedCurve curve;
  VertexId second = -1;  // second essential vertex, if any
};

BlockShape two_arc_block(const std::array<Int, 5>& v1,
                         const std::array<Int, 5>& v2) {
  CurveBuilder cb;
  VertexId p = cb.fresh(), q = cb.fresh();
  cb.arc(p, q, v1, 1);
  cb.arc(q, p, v2, 1);
  return {cb.finish(p), q};
}

BlockShape lobe_block(const std::vector<std::array<Int, 5>>& lobes) {
  CurveBuilder cb;
  VertexId p = cb.fresh();
  for (const auto& vals : lobes) cb.arc(p, p, vals, 2);
  return {cb.finish(p), -1};
}

BlockShape four_strand_block(const std::array<Int, 5>& v1,
                             const std::array<Int, 5>& v2,
                             const std::array<Int, 5>& v3,
                             const std::array<Int, 5>& v4) {
  CurveBuilder cb;
  VertexId p = cb.fresh(), q = cb.fresh();
  cb.arc(p, q, v1, 1);
  cb.arc(p, q, v2, 1);
  cb.arc(p, q, v3, 1);
  cb.arc(p, q, v4, 1);
  return {cb.finish(p), q};
}

BlockShape make_block(int pos) {
  auto unit = [](int k, Int v) {
    std::array<Int, 5> x = dvals();
    x[k] = std::move(v);
    return x;
  };
  // V1: one decoration constant 1 on the whole circle.
  if (pos <= 2) return two_arc_block(unit(pos, 1), unit(pos, 1));
  // V2: one lobe per plain factor plus the all-factors lobe.
  if (pos <= 6) {
    std::vector<int> fs;
    switch (pos) {
      case 3: fs = {0, 1}; break;
      case 4: fs = {0, 2}; break;
      case 5: fs = {1, 2}; break;
      default: fs = {0, 1, 2}; break;
    }
    std::vector<std::array<Int, 5>> lobes;
    std::array<Int, 5> all = dvals();
    for (int f : fs) {
      lobes.push_back(unit(f, 1));
      all[f] = 1;
    }
    lobes.push_back(all);
    return lobe_block(lobes);
  }
  // V3: values (1,-1) for a square subscript, (2,0) for a cube subscript.
  if (pos <= 12) {
    const int letter = (pos - 7) % 3;
    const bool cube = pos >= 10;
    if (cube) return two_arc_block(unit(letter, 2), dvals());
    return two_arc_block(unit(letter, 1), unit(letter, -1));
  }
  // V4: plain factors constant 1; the subscripted letter gets (1,-1) or (2,0).
  if (pos <= 30) {
    const auto& slots = expr_table()[pos].slots;
    std::array<Int, 5> v1 = dvals(), v2 = dvals();
    for (int s : slots) {
      if (s <= sC) {
        v1[s] = 1;
        v2[s] = 1;
      } else {
        const int letter = (s - sA2) / 2;  // sA2,sA3 -> a; sB2,sB3 -> b; ...
        const bool cube = ((s - sA2) % 2) == 1;
        v1[letter] = cube ? 2 : 1;
        v2[letter] = cube ? 0 : -1;
      }
    }
    return two_arc_block(v1, v2);
  }
  // V5: four strands; the d/e letter carries 2 on two of them.
  const auto& slots = expr_table()[pos].slots;
  std::array<Int, 5> v1 = dvals(), v2 = dvals(), v3 = dvals(), v4 = dvals();
  for (int s : slots) {
    if (s <= sC) {
      v2[s] = 1;
      v3[s] = 1;
    } else {
      const int letter = (s == sD) ? 3 : 4;
      v1[letter] = 2;
      v2[letter] = 2;
    }
  }
  return four_strand_block(v1, v2, v3, v4);
}

// ---------------------------------------------------------------------------
// Expression evaluation

struct CurveEval {
  explicit CurveEval(const DecoratedCurve& L) : K(L.complex) {
    slot[sA] = L.a;
    slot[sB] = L.b;
    slot[sC] = L.c;
    slot[sA2] = apply_polynomial(op_sub2(), L.a);
    slot[sA3] = apply_polynomial(op_sub3(), L.a);
    slot[sB2] = apply_polynomial(op_sub2(), L.b);
    slot[sB3] = apply_polynomial(op_sub3(), L.b);
    slot[sC2] = apply_polynomial(op_sub2(), L.c);
    slot[sC3] = apply_polynomial(op_sub3(), L.c);
    slot[sD] = L.d;
    slot[sE] = L.e;
    for (int pos = 3; pos < kNumVExprs; ++pos) {
      const auto& spec = expr_table()[pos].slots;
      ConstructibleFunction f = slot[spec[0]];
      for (std::size_t i = 1; i < spec.size(); ++i) f *= slot[spec[i]];
      prod[pos - 3] = std::move(f);
    }
  }

  std::array<Dyadic, kNumVExprs> at(VertexId v) const {
    std::array<Dyadic, kNumVExprs> out;
    const SimplexId vs = K->vertex_simplex(v);
    if (vs < 0) throw Error("no such vertex");
    out[0] = slot[sA][vs];
    out[1] = slot[sB][vs];
    out[2] = slot[sC][vs];
    for (int pos = 3; pos < kNumVExprs; ++pos) {
      const ConstructibleFunction& psi = prod[pos - 3];
      Dyadic edge_sum;
      for (SimplexId t : K->cofaces(vs))
        if (K->simplex(t).dim() == 1) edge_sum += psi[t];
      out[pos] = psi[vs] - edge_sum.half();
    }
    return out;
  }

  ComplexPtr K;
  std::array<ConstructibleFunction, kSlots> slot;
  std::array<ConstructibleFunction, kNumVExprs - 3> prod;
};

std::uint64_t odd_mask_of(const std::array<Dyadic, kNumVExprs>& vals) {
  std::uint64_t m = 0;
  for (int i = 0; i < kNumVExprs; ++i) {
    if (!vals[i].is_integer())
      throw VerificationError("non-integer vertex expression");
    if (vals[i].is_odd()) m |= bit(i);
  }
  return m;
}

}  // namespace

BlockKind BlockKind::for_expr(int pos) {
  if (pos < 0 || pos >= kNumVExprs) throw Error("unknown block kind");
  return {pos};
}

DecoratedCurve elementary_block(BlockKind kind) {
  if (kind.vexpr < 0 || kind.vexpr >= kNumVExprs)
    throw Error("unknown block kind");
  return make_block(kind.vexpr).curve;
}

std::array<Dyadic, kNumVExprs> vertex_expressions(const DecoratedCurve& L,
                                                  VertexId v) {
  return CurveEval(L).at(v);
}

std::uint64_t vertex_odd_mask45(const DecoratedCurve& L, VertexId v) {
  return odd_mask_of(vertex_expressions(L, v));
}

void DecoratedCurve::validate() const {
  if (complex->dim() != 1)
    throw VerificationError("decorated curve must be 1-dimensional");
  for (int i = 0; i < 5; ++i) {
    const ConstructibleFunction& f = decoration(i);
    if (!is_integer_valued(f))
      throw VerificationError("decoration is not integer-valued");
    if (!(co_half_link(f) == ConstructibleFunction::zero(complex)))
      throw VerificationError("decoration has nonvanishing co-half-link");
  }
  if (!is_even_valued(d) || !is_even_valued(e))
    throw VerificationError("d/e decorations must be even-valued");
  const ConstructibleFunction one =
      ConstructibleFunction::constant(complex, Dyadic(1));
  if (!is_euler(one)) throw VerificationError("curve is not euler");
  for (const ConstructibleFunction& f : {a * b, a * c, b * c, a * b * c})
    if (!is_euler(f))
      throw VerificationError("curve product fails the euler condition");
  // Bookkeeping: the vertex sum of every expression outside the
  // wedge-sensitive products is even.
  CurveEval eval(*this);
  std::array<Int, kNumVExprs> sums{};
  for (VertexId v : complex->vertex_ids()) {
    auto vals = eval.at(v);
    for (int i = 0; i < kNumVExprs; ++i) sums[i] += vals[i].as_integer();
  }
  for (int i = 0; i < kNumVExprs; ++i) {
    if (i >= 3 && i <= 6) continue;
    if (bit_test(sums[i], 0))
      throw VerificationError("vertex sum of " + vexpr_name(i) + " is odd");
  }
}

namespace {

// Wedge identifying vertex v of L with M.p0; L keeps its ids and p0.
DecoratedCurve wedge_at(const DecoratedCurve& L, VertexId v,
                        const DecoratedCurve& M) {
  UnionResult res = wedge(*L.complex, v, *M.complex, M.p0);
  EdgeValues values;
  auto collect = [&values](const DecoratedCurve& src,
                           const std::vector<VertexId>& vmap) {
    const Complex& K = *src.complex;
    for (SimplexId id : K.ids_of_dim(1)) {
      const Simplex& s = K.simplex(id);
      std::array<Int, 5> vals;
      for (int k = 0; k < 5; ++k) vals[k] = src.decoration(k)[id].as_integer();
      values.emplace_back(Simplex({vmap[s[0]], vmap[s[1]]}), vals);
    }
  };
  collect(L, res.map_a);
  collect(M, res.map_b);
  return assemble_curve(res.complex, values, L.p0);
}

}  // namespace

DecoratedCurve wedge_decorated(const DecoratedCurve& L1,
                               const DecoratedCurve& L2) {
  return wedge_at(L1, L1.p0, L2);
}

DecoratedCurve union_decorated(const DecoratedCurve& L1,
                               const DecoratedCurve& L2) {
  UnionResult res = disjoint_union(*L1.complex, *L2.complex);
  EdgeValues values;
  auto collect = [&values](const DecoratedCurve& src,
                           const std::vector<VertexId>& vmap) {
    const Complex& K = *src.complex;
    for (SimplexId id : K.ids_of_dim(1)) {
      const Simplex& s = K.simplex(id);
      std::array<Int, 5> vals;
      for (int k = 0; k < 5; ++k) vals[k] = src.decoration(k)[id].as_integer();
      values.emplace_back(Simplex({vmap[s[0]], vmap[s[1]]}), vals);
    }
  };
  collect(L1, res.map_a);
  collect(L2, res.map_b);
  return assemble_curve(res.complex, values, res.map_a[L1.p0]);
}

std::vector<CharIndex> curve_nonzero_set(const DecoratedCurve& L,
                                         ProfileMode mode) {
  BaseProfile p = profile_from_functions(L.a, L.b, L.c, L.d, L.e, mode);
  NonzeroReport rep = nonzero_char_numbers(p, mode, 1ull << 22);
  if (!rep.enumerated)
    throw VerificationError("curve parity masks too dense to enumerate");
  if (rep.capped) throw VerificationError("curve nonzero set above cap");
  return rep.nonzero;
}

namespace {

// ---------------------------------------------------------------------------
// The wedge-and-correct construction

struct CurveFactory {
  std::map<std::uint64_t, DecoratedCurve> memo;  // exact witnesses by mask

  // Makes all expressions except `keep` even at vertex v.
  void neutralize(DecoratedCurve& L, VertexId v, int keep) {
    const std::uint64_t keep_bit = keep >= 0 ? bit(keep) : 0;
    for (int guard = 0;; ++guard) {
      if (guard > 60)
        throw VerificationError("vertex neutralization did not converge");
      std::uint64_t m = vertex_odd_mask45(L, v) & ~keep_bit;
      if (m == 0) return;
      if (m & kV2Mask) {
        // A wedge-sensitive product: its own block flips exactly that bit.
        for (int pos = 3; pos <= 6; ++pos)
          if (m & bit(pos)) L = wedge_at(L, v, make_block(pos).curve);
        continue;
      }
      std::vector<int> exprs;
      for (int pos = 0; pos < kNumVExprs; ++pos)
        if (m & bit(pos)) {
          if (keep >= 0 && pos > keep)
            throw VerificationError("expression after " + vexpr_name(keep) +
                                    " is odd on its block");
          exprs.push_back(pos);
        }
      L = wedge_at(L, v, for_set(exprs));
    }
  }

  // Exactly `u` odd at p0 and at the block's second vertex.
  DecoratedCurve single(int u) {
    BlockShape shape = make_block(u);
    DecoratedCurve L = shape.curve;
    neutralize(L, L.p0, u);
    if (shape.second >= 0) neutralize(L, shape.second, u);
    return L;
  }

  // v(p0) odd exactly for v in exprs.
  DecoratedCurve for_set(std::vector<int> exprs) {
    std::sort(exprs.begin(), exprs.end());
    exprs.erase(std::unique(exprs.begin(), exprs.end()), exprs.end());
    if (exprs.empty()) {
      // A plain circle with all decorations zero.
      return two_arc_block(dvals(), dvals()).curve;
    }
    const int u = exprs.back();
    DecoratedCurve L = single(u);
    if (exprs.size() > 1) {
      std::vector<int> rest(exprs.begin(), exprs.end() - 1);
      L = wedge_decorated(L, for_set(rest));
    }
    std::uint64_t wanted = 0;
    for (int pos : exprs) wanted |= bit(pos);
    for (int guard = 0;; ++guard) {
      if (guard > 60)
        throw VerificationError("wedge correction did not converge");
      std::uint64_t diff = vertex_odd_mask45(L, L.p0) ^ wanted;
      if (diff == 0) break;
      if (diff & ~kV2Mask)
        throw VerificationError("wedge disturbed a non-correctable bit");
      for (int pos = 3; pos <= 6; ++pos)
        if (diff & bit(pos)) L = wedge_at(L, L.p0, make_block(pos).curve);
    }
    return L;
  }

  DecoratedCurve for_index(const CharIndex& idx) {
    auto it = memo.find(idx.mask);
    if (it != memo.end()) return it->second;
    std::vector<int> exprs;
    for (int b = 0; b < kNumExtendedQuantities; ++b)
      if (idx.mask & (std::uint64_t(1) << b))
        exprs.push_back(vexpr_of_char_bit(b));
    DecoratedCurve L = for_set(exprs);
    // Cancel the stray divisor sums by disjoint unions of exact witnesses.
    for (int guard = 0;; ++guard) {
      if (guard > 64)
        throw VerificationError("divisor cancellation did not converge");
      std::vector<CharIndex> nz = curve_nonzero_set(L, idx.mode);
      bool has_idx = false;
      std::vector<CharIndex> strays;
      for (const CharIndex& j : nz) {
        if (j.mask == idx.mask)
          has_idx = true;
        else
          strays.push_back(j);
      }
      if (!has_idx) throw VerificationError("main characteristic sum vanished");
      if (strays.empty()) break;
      for (const CharIndex& j : strays) {
        if ((j.mask & ~idx.mask) != 0)
          throw VerificationError("stray index is not a divisor");
        L = union_decorated(L, for_index(j));
      }
    }
    memo.emplace(idx.mask, L);
    return L;
  }
};

}  // namespace

DecoratedCurve build_L1(const std::vector<int>& exprs) {
  CurveFactory factory;
  return factory.for_set(exprs);
}

DecoratedCurve build_L1_for_index(const CharIndex& idx) {
  if (!idx.valid()) throw Error("invalid characteristic-number index");
  CurveFactory factory;
  return factory.for_index(idx);
}

// ---------------------------------------------------------------------------
// Cycle filling

std::array<std::array<int, 4>, 5> disc_parity_table() {
  std::array<std::array<int, 4>, 5> table{};
  for (int t = 1; t <= 5; ++t) {
    const Rational rt(t);
    const Rational cols[4] = {op_sub2().eval(rt) / 2, op_sub3().eval(rt) / 2,
                              op_p4().eval(rt) / 4, op_p5().eval(rt) / 4};
    for (int j = 0; j < 4; ++j) {
      if (boost::multiprecision::denominator(cols[j]) != 1)
        throw Error("internal: parity table entry not integral");
      table[t - 1][j] =
          bit_test(boost::multiprecision::numerator(cols[j]), 0) ? 1 : 0;
    }
  }
  return table;
}

namespace {

// Disc value multisets realizing each parity pattern of (a, b, c); every
// multiset has even total value and leaves the delta/epsilon columns alone.
const std::vector<int>& abc_move(int pa, int pb, int pc) {
  static const std::vector<int> moves[8] = {
      /*000*/ {},
      /*100*/ {1, 1},
      /*010*/ {3, 1},
      /*110*/ {3, 1, 1, 1},
      /*001*/ {2, 3, 1, 1, 1},
      /*101*/ {2, 3, 1},
      /*011*/ {2, 1, 1},
      /*111*/ {2, 0},
  };
  return moves[pa | (pb << 1) | (pc << 2)];
}

const std::vector<int>& delta_move() {
  static const std::vector<int> m = {4};
  return m;
}

const std::vector<int>& eps_move() {
  static const std::vector<int> m = {4, 5, 1, 1, 1};
  return m;
}

// Decomposes an even-degree edge set into vertex-simple cycles.
std::vector<std::vector<VertexId>> simple_cycles(
    const Complex& K, const std::vector<SimplexId>& edge_ids) {
  std::unordered_map<VertexId, std::vector<std::pair<SimplexId, VertexId>>> adj;
  std::unordered_map<SimplexId, bool> used;
  for (SimplexId e : edge_ids) {
    const Simplex& s = K.simplex(e);
    adj[s[0]].emplace_back(e, s[1]);
    adj[s[1]].emplace_back(e, s[0]);
    used[e] = false;
  }
  std::vector<std::vector<VertexId>> cycles;
  for (SimplexId start : edge_ids) {
    if (used[start]) continue;
    VertexId v0 = K.simplex(start)[0];
    std::vector<VertexId> path = {v0};
    std::unordered_map<VertexId, std::size_t> at;
    at[v0] = 0;
    while (true) {
      VertexId v = path.back();
      SimplexId eid = -1;
      VertexId w = -1;
      for (auto& [cand, other] : adj[v]) {
        if (!used[cand]) {
          eid = cand;
          w = other;
          break;
        }
      }
      if (eid < 0) {
        if (path.size() != 1)
          throw VerificationError("parity class is not a cycle");
        break;
      }
      used[eid] = true;
      auto it = at.find(w);
      if (it != at.end()) {
        const std::size_t k = it->second;
        cycles.emplace_back(path.begin() + k, path.end());
        for (std::size_t i = k + 1; i < path.size(); ++i) at.erase(path[i]);
        path.resize(k + 1);
      } else {
        at[w] = path.size();
        path.push_back(w);
      }
    }
  }
  return cycles;
}

int parity_of(const Int& v) { return bit_test(v, 0) ? 1 : 0; }

}  // namespace

DecoratedSurface fill_cycles(const DecoratedCurve& L1) {
  const Complex& K = *L1.complex;
  const std::vector<SimplexId> curve_edges = K.ids_of_dim(1);

  std::map<std::array<int, 3>, std::vector<SimplexId>> abc_classes;
  std::vector<SimplexId> d_class, e_class;
  for (SimplexId e : curve_edges) {
    const std::array<int, 3> abc = {parity_of(L1.a[e].as_integer()),
                                    parity_of(L1.b[e].as_integer()),
                                    parity_of(L1.c[e].as_integer())};
    if (abc != std::array<int, 3>{0, 0, 0}) abc_classes[abc].push_back(e);
    if (bit_test(L1.d[e].as_integer() >> 1, 0)) d_class.push_back(e);
    if (bit_test(L1.e[e].as_integer() >> 1, 0)) e_class.push_back(e);
  }

  struct Disc {
    std::vector<VertexId> cycle;
    int value;
  };
  std::vector<Disc> discs;
  auto attach = [&](const std::vector<SimplexId>& edges,
                    const std::vector<int>& move) {
    if (edges.empty() || move.empty()) return;
    for (auto& cyc : simple_cycles(K, edges))
      for (int l : move) discs.push_back({cyc, l});
  };
  for (auto& [abc, edges] : abc_classes)
    attach(edges, abc_move(abc[0], abc[1], abc[2]));
  attach(d_class, delta_move());
  attach(e_class, eps_move());

  std::vector<std::vector<VertexId>> maximal;
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i)
    maximal.push_back(K.simplex(i).vertices());
  std::map<Simplex, Int> phi_map;
  std::map<Simplex, Int> edge_weight;
  VertexId next = K.vertex_bound();
  for (const Disc& disc : discs) {
    const VertexId apex = next++;
    phi_map[Simplex({apex})] = disc.value;
    const std::size_t n = disc.cycle.size();
    for (std::size_t i = 0; i < n; ++i) {
      const VertexId u = disc.cycle[i], v = disc.cycle[(i + 1) % n];
      maximal.push_back({apex, u, v});
      phi_map[Simplex({apex, u, v})] = disc.value;
      phi_map[Simplex({apex, u})] = disc.value;
      edge_weight[Simplex({u, v})] += disc.value;
    }
  }
  for (SimplexId e : curve_edges) {
    Int w = edge_weight[K.simplex(e)];
    if (bit_test(w, 0))
      throw VerificationError("odd total disc weight on a curve edge");
    phi_map[K.simplex(e)] = w >> 1;
  }
  for (VertexId v : K.vertex_ids())
    phi_map[Simplex({v})] = L1.a.value_at_vertex(v).mod_pow2(1);

  DecoratedSurface s;
  s.complex = std::make_shared<const Complex>(Complex::from_maximal(maximal));
  s.phi = ConstructibleFunction::zero(s.complex);
  for (SimplexId i = 0; i < static_cast<SimplexId>(s.complex->size()); ++i) {
    auto it = phi_map.find(s.complex->simplex(i));
    if (it != phi_map.end()) s.phi.set(i, Dyadic(it->second));
  }
  s.p0 = L1.p0;
  for (SimplexId e : curve_edges) {
    const Simplex& es = K.simplex(e);
    s.curve_edges.push_back(s.complex->id_of(es));
    s.edge_targets.push_back({L1.a[e].as_integer(), L1.b[e].as_integer(),
                              L1.c[e].as_integer(), L1.d[e].as_integer(),
                              L1.e[e].as_integer()});
  }
  for (VertexId v : K.vertex_ids()) {
    s.curve_vertices.push_back(v);
    s.vertex_targets_a.push_back(L1.a.value_at_vertex(v).as_integer());
  }
  s.provenance.push_back("fill_cycles: " + std::to_string(discs.size()) +
                         " discs over " + std::to_string(curve_edges.size()) +
                         " curve edges");
  s.validate();
  return s;
}

void DecoratedSurface::validate() const {
  if (!(half_link(phi) == ConstructibleFunction::zero(complex)))
    throw VerificationError("surface function has nonvanishing half-link");
}

std::array<Int, 3> bubble_update(const std::array<Int, 3>& abc, int l) {
  const Int& A = abc[0];
  return {A + l, abc[1] + 2 * A * l, abc[2] + 3 * A * l * (A + l)};
}

namespace {

int state_of(const std::array<Int, 3>& abc) {
  int s = 0;
  for (int i = 0; i < 3; ++i) {
    const int r =
        static_cast<int>(((abc[i] % 4 + 4) % 4).convert_to<long long>());
    s |= r << (2 * i);
  }
  return s;
}

// Shortest bubble sequence (values 1..3) carrying (A,B,C) to the target
// residues mod 4.
std::vector<int> plan_bubbles(const std::array<Int, 3>& from,
                              const std::array<Int, 3>& to) {
  const int start = state_of(from), goal = state_of(to);
  if (start == goal) return {};
  std::array<int, 64> prev_state;
  std::array<int, 64> prev_move;
  prev_state.fill(-1);
  prev_move.fill(0);
  std::deque<int> queue = {start};
  prev_state[start] = start;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    const std::array<Int, 3> abc = {Int(s & 3), Int((s >> 2) & 3),
                                    Int((s >> 4) & 3)};
    for (int l = 1; l <= 3; ++l) {
      const int t = state_of(bubble_update(abc, l));
      if (prev_state[t] >= 0) continue;
      prev_state[t] = s;
      prev_move[t] = l;
      if (t == goal) {
        std::vector<int> seq;
        for (int cur = goal; cur != start; cur = prev_state[cur])
          seq.push_back(prev_move[cur]);
        std::reverse(seq.begin(), seq.end());
        return seq;
      }
      queue.push_back(t);
    }
  }
  throw VerificationError("no bubble sequence reaches the target residues");
}

}  // namespace

void adjust_mod4(DecoratedSurface& s) {
  const Complex K = *s.complex;  // copy: ids stay valid while rebuilding
  const ConstructibleFunction phi2 = apply_polynomial(op_sub2(), s.phi);
  const ConstructibleFunction phi3 = apply_polynomial(op_sub3(), s.phi);
  const ConstructibleFunction hb = half_link(phi2);
  const ConstructibleFunction hc = half_link(phi3);

  std::vector<std::pair<Simplex, int>> bubbles;
  for (std::size_t i = 0; i < s.curve_edges.size(); ++i) {
    const SimplexId e = s.curve_edges[i];
    const std::array<Int, 3> current = {s.phi[e].as_integer(),
                                        hb[e].as_integer(),
                                        hc[e].as_integer()};
    const std::array<Int, 3> target = {s.edge_targets[i][0],
                                       s.edge_targets[i][1],
                                       s.edge_targets[i][2]};
    for (int k = 0; k < 3; ++k)
      if (bit_test(current[k] - target[k], 0))
        throw VerificationError("mod-2 mismatch before bubble adjustment");
    for (int l : plan_bubbles(current, target))
      bubbles.emplace_back(K.simplex(e), l);
  }

  std::vector<std::vector<VertexId>> maximal;
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i)
    maximal.push_back(K.simplex(i).vertices());
  std::map<Simplex, Int> phi_map;
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i)
    phi_map[K.simplex(i)] = s.phi[i].as_integer();
  VertexId next = K.vertex_bound();
  for (const auto& [edge, l] : bubbles) {
    const VertexId u = edge[0], v = edge[1];
    const VertexId x = next++, y = next++;
    maximal.push_back({u, v, x});
    maximal.push_back({u, v, y});
    maximal.push_back({u, x, y});
    maximal.push_back({v, x, y});
    phi_map[edge] += l;
    for (const Simplex& sx :
         {Simplex({x}), Simplex({y}), Simplex({u, x}), Simplex({u, y}),
          Simplex({v, x}), Simplex({v, y}), Simplex({x, y}),
          Simplex({u, v, x}), Simplex({u, v, y}), Simplex({u, x, y}),
          Simplex({v, x, y})})
      phi_map[sx] = l;
  }

  // Vertex values: congruent to the first decoration mod 2.
  for (std::size_t i = 0; i < s.curve_vertices.size(); ++i)
    phi_map[Simplex({s.curve_vertices[i]})] =
        bit_test(s.vertex_targets_a[i], 0) ? 1 : 0;

  auto rebuild = [&s](const std::vector<std::vector<VertexId>>& mx,
                      const std::map<Simplex, Int>& values) {
    s.complex = std::make_shared<const Complex>(Complex::from_maximal(mx));
    s.phi = ConstructibleFunction::zero(s.complex);
    for (SimplexId i = 0; i < static_cast<SimplexId>(s.complex->size()); ++i) {
      auto it = values.find(s.complex->simplex(i));
      if (it == values.end())
        throw VerificationError("missing function value after rebuild");
      s.phi.set(i, Dyadic(it->second));
    }
  };
  rebuild(maximal, phi_map);

  // Even euler integral for phi: wedge a sphere of value 1 if needed.
  if (euler_integral(s.phi).is_odd()) {
    const VertexId x = s.complex->vertex_bound(), y = x + 1, z = x + 2;
    maximal.push_back({s.p0, x, y});
    maximal.push_back({s.p0, x, z});
    maximal.push_back({s.p0, y, z});
    maximal.push_back({x, y, z});
    for (const Simplex& sx :
         {Simplex({x}), Simplex({y}), Simplex({z}), Simplex({s.p0, x}),
          Simplex({s.p0, y}), Simplex({s.p0, z}), Simplex({x, y}),
          Simplex({x, z}), Simplex({y, z}), Simplex({s.p0, x, y}),
          Simplex({s.p0, x, z}), Simplex({s.p0, y, z}), Simplex({x, y, z})})
      phi_map[sx] = 1;
    rebuild(maximal, phi_map);
    s.provenance.push_back("adjust_mod4: integral parity sphere at p0");
  }

  // Re-locate the curve edges in the rebuilt complex.
  for (std::size_t i = 0; i < s.curve_edges.size(); ++i)
    s.curve_edges[i] = s.complex->id_of(K.simplex(s.curve_edges[i]));

  s.provenance.push_back("adjust_mod4: " + std::to_string(bubbles.size()) +
                         " bubbles");
  s.validate();

  // Final congruences: targets mod 4 on curve edges, mod 2 at vertices.
  const ConstructibleFunction derived[4] = {
      half_link(apply_polynomial(op_sub2(), s.phi)),
      half_link(apply_polynomial(op_sub3(), s.phi)),
      half_link(apply_polynomial(op_p4(), s.phi)),
      half_link(apply_polynomial(op_p5(), s.phi))};
  for (std::size_t i = 0; i < s.curve_edges.size(); ++i) {
    const SimplexId e = s.curve_edges[i];
    if ((s.phi[e].as_integer() - s.edge_targets[i][0]) % 4 != 0)
      throw VerificationError("phi misses its target mod 4 on a curve edge");
    for (int k = 0; k < 4; ++k)
      if ((derived[k][e].as_integer() - s.edge_targets[i][k + 1]) % 4 != 0)
        throw VerificationError("derived function misses its target mod 4");
  }
  for (std::size_t i = 0; i < s.curve_vertices.size(); ++i) {
    const SimplexId vs = s.complex->vertex_simplex(s.curve_vertices[i]);
    if (bit_test(s.phi[vs].as_integer() - s.vertex_targets_a[i], 0))
      throw VerificationError("phi misses its target mod 2 at a vertex");
  }
  if (!euler_integral(s.phi).is_even())
    throw VerificationError("euler integral of phi is odd");
}

// ---------------------------------------------------------------------------
// Thickening

ThickenResult thicken(const DecoratedSurface& s) {
  const Complex& Y = *s.complex;
  if (Y.dim() > 2) throw Error("thickening expects a surface");
  if (!(half_link(s.phi) == ConstructibleFunction::zero(s.complex)))
    throw Error("thickening needs a vanishing half-link");

  std::vector<std::vector<VertexId>> maximal;
  for (SimplexId i = 0; i < static_cast<SimplexId>(Y.size()); ++i)
    maximal.push_back(Y.simplex(i).vertices());
  VertexId next = Y.vertex_bound();
  ThickenResult out;

  auto residue = [](const Int& v, int mod) {
    return static_cast<int>(((v % mod + mod) % mod).convert_to<long long>());
  };

  for (SimplexId i = 0; i < static_cast<SimplexId>(Y.size()); ++i) {
    const Simplex& sx = Y.simplex(i);
    const Int val = s.phi[i].as_integer();
    if (sx.dim() == 0) {
      // a wedge of m circles, m = 1 - phi mod 2, minimal positive
      const int m = residue(1 - val, 2) == 0 ? 2 : 1;
      for (int j = 0; j < m; ++j) {
        const VertexId y1 = next++, y2 = next++;
        maximal.push_back({sx[0], y1});
        maximal.push_back({y1, y2});
        maximal.push_back({y2, sx[0]});
        ++out.circles;
      }
    } else if (sx.dim() == 1) {
      // m parallel segments counting the edge itself, m = phi mod 4, positive
      const int r = residue(val, 4);
      const int m = r == 0 ? 4 : r;
      for (int j = 0; j < m - 1; ++j) {
        const VertexId x = next++;
        maximal.push_back({sx[0], x});
        maximal.push_back({x, sx[1]});
        ++out.arcs;
      }
    } else {
      // m fibered handles over the triangle, m = 1 - phi mod 8 (0 allowed)
      const int m = residue(1 - val, 8);
      for (int j = 0; j < m; ++j) {
        const VertexId p = next++, q = next++;
        maximal.push_back({sx[0], sx[1], sx[2], p});
        maximal.push_back({sx[0], sx[1], sx[2], q});
        maximal.push_back({sx[0], sx[1], p, q});
        maximal.push_back({sx[0], sx[2], p, q});
        maximal.push_back({sx[1], sx[2], p, q});
        ++out.handles;
      }
    }
  }
  out.complex = std::make_shared<const Complex>(Complex::from_maximal(maximal));
  return out;
}

void verify_thickening(const DecoratedSurface& s, const ComplexPtr& Y) {
  const ConstructibleFunction one =
      ConstructibleFunction::constant(Y, Dyadic(1));
  if (!is_euler(one)) throw VerificationError("thickening is not euler");
  const ConstructibleFunction om = co_half_link(one);
  const Complex& K = *s.complex;
  for (SimplexId i = 0; i < static_cast<SimplexId>(Y->size()); ++i) {
    const Simplex& sx = Y->simplex(i);
    const SimplexId old_id = K.id_of(sx);
    if (old_id < 0) {
      if (!om[i].is_zero())
        throw VerificationError("co-half-link supported off the surface");
      continue;
    }
    const Int diff = om[i].as_integer() - s.phi[old_id].as_integer();
    const int mod = sx.dim() == 2 ? 8 : sx.dim() == 1 ? 4 : 2;
    if (diff % mod != 0)
      throw VerificationError("thickening congruence fails in dimension " +
                              std::to_string(sx.dim()));
  }
  const Int chi = euler_characteristic(*Y);
  if (bit_test(chi - euler_integral(s.phi).as_integer(), 0))
    throw VerificationError("euler characteristic parity mismatch");
}

// ---------------------------------------------------------------------------
// End-to-end generation

void verify_witness_battery(const ComplexPtr& L,
                            const std::optional<CharIndex>& idx) {
  BaseProfile profile = base_profile(L, ProfileMode::kExtended);
  if (!profile.integral)
    throw VerificationError("witness profile not integral: " +
                            profile.integrality_note);
  if (!euler_conditions(profile).all())
    throw VerificationError("witness fails an euler condition");
  AkNumbers ak = ak_numbers(profile);
  const int want_chi = idx ? 0 : 1;
  if (ak.chi_parity != want_chi)
    throw VerificationError(
        "witness has the wrong euler characteristic parity");
  std::array<int, 4> want_ak{};
  if (idx && idx->is_depth2()) {
    for (int b = 3; b <= 6; ++b)
      if (idx->mask == (std::uint64_t(1) << b)) want_ak[b - 3] = 1;
  }
  if (ak.integral_parity != want_ak)
    throw VerificationError("witness has a stray depth-2 parity");
  NonzeroReport rep =
      nonzero_char_numbers(profile, ProfileMode::kExtended, 1ull << 22);
  if (!rep.enumerated)
    throw VerificationError("witness parity masks too dense to enumerate");
  std::vector<std::uint64_t> got;
  for (const CharIndex& j : rep.nonzero) got.push_back(j.mask);
  std::vector<std::uint64_t> expected;
  if (idx) expected.push_back(idx->mask);
  if (got != expected)
    throw VerificationError("witness nonzero set differs from the request");
  if (!(co_half_link(profile.delta) == ConstructibleFunction::zero(L)) ||
      !(co_half_link(profile.eps) == ConstructibleFunction::zero(L)))
    throw VerificationError("delta/eps must have vanishing co-half-links");
}

WitnessResult generate_witness_chi() {
  const std::vector<std::vector<VertexId>> sphere = {
      {0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}};
  const Complex s3 = Complex::from_maximal(sphere);
  UnionResult w = wedge(s3, 0, s3, 0);
  WitnessResult out;
  out.complex = std::make_shared<const Complex>(std::move(w.complex));
  out.provenance = {"chi: two 3-sphere boundaries wedged at a point"};
  verify_witness_battery(out.complex, std::nullopt);
  return out;
}

WitnessResult generate_witness(const CharIndex& idx) {
  if (!idx.valid()) throw Error("invalid characteristic-number index");
  if (!idx.novel() && !idx.is_depth2())
    throw Error("index " + idx.str() +
                " is automatically even; no witness exists");
  WitnessResult out;
  DecoratedCurve curve = build_L1_for_index(idx);
  curve.validate();
  out.provenance.push_back("build_L1_for_index: curve with " +
                           std::to_string(curve.complex->vertex_count()) +
                           " vertices");
  DecoratedSurface surface = fill_cycles(curve);
  adjust_mod4(surface);
  for (const std::string& line : surface.provenance)
    out.provenance.push_back(line);
  ThickenResult thick = thicken(surface);
  out.provenance.push_back("thicken: " + std::to_string(thick.circles) +
                           " circles, " + std::to_string(thick.arcs) +
                           " arcs, " + std::to_string(thick.handles) +
                           " handles");
  verify_thickening(surface, thick.complex);
  verify_witness_battery(thick.complex, idx);
  out.complex = thick.complex;
  out.provenance.push_back("verified: only " + idx.str() + " odd");
  return out;
}

}  // namespace confun
