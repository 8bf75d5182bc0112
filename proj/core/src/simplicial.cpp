#include "confun/simplicial.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace confun {

Simplex::Simplex(std::vector<VertexId> vertices) : verts_(std::move(vertices)) {
  if (verts_.empty()) throw Error("a simplex needs at least one vertex");
  std::sort(verts_.begin(), verts_.end());
  for (std::size_t i = 0; i + 1 < verts_.size(); ++i)
    if (verts_[i] == verts_[i + 1])
      throw Error("repeated vertex " + std::to_string(verts_[i]) +
                  " inside one simplex");
  if (verts_.front() < 0) throw Error("vertex ids must be nonnegative");
}

bool Simplex::contains(VertexId v) const {
  return std::binary_search(verts_.begin(), verts_.end(), v);
}

bool Simplex::has_face(const Simplex& face) const {
  return std::includes(verts_.begin(), verts_.end(), face.verts_.begin(),
                       face.verts_.end());
}

bool Simplex::operator<(const Simplex& o) const {
  if (verts_.size() != o.verts_.size()) return verts_.size() < o.verts_.size();
  return verts_ < o.verts_;
}

std::size_t SimplexHash::operator()(const Simplex& s) const {
  std::size_t h = 1469598103934665603ull;
  for (VertexId v : s.vertices()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// All nonempty subsets of a simplex, as Simplex objects.
void for_each_subset(const Simplex& s,
                     const std::function<void(std::vector<VertexId>&&)>& fn) {
  const auto& v = s.vertices();
  const std::size_t n = v.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<VertexId> sub;
    sub.reserve(std::popcount(mask));
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) sub.push_back(v[i]);
    fn(std::move(sub));
  }
}

}  // namespace

Complex Complex::from_maximal(
    const std::vector<std::vector<VertexId>>& maximal) {
  if (maximal.empty()) throw Error("empty input list");
  std::vector<Simplex> all;
  all.reserve(maximal.size());
  for (const auto& verts : maximal) all.emplace_back(verts);
  return closure_of(all);
}

Complex Complex::closure_of(const std::vector<Simplex>& simplices) {
  Complex K;
  std::unordered_map<Simplex, SimplexId, SimplexHash> seen;
  std::vector<Simplex> out;
  for (const Simplex& s : simplices) {
    for_each_subset(s, [&](std::vector<VertexId>&& verts) {
      Simplex face(std::move(verts));
      if (seen.emplace(face, 0).second) out.push_back(std::move(face));
    });
  }
  std::sort(out.begin(), out.end());
  K.simplices_ = std::move(out);
  K.build_index();
  return K;
}

void Complex::build_index() {
  index_.clear();
  index_.reserve(simplices_.size() * 2);
  dim_ = -1;
  vertex_bound_ = 0;
  for (SimplexId i = 0; i < static_cast<SimplexId>(simplices_.size()); ++i) {
    index_.emplace(simplices_[i], i);
    dim_ = std::max(dim_, simplices_[i].dim());
    vertex_bound_ =
        std::max(vertex_bound_, simplices_[i].vertices().back() + 1);
  }
  vertex_simplex_.assign(vertex_bound_, -1);
  vertex_ids_.clear();
  for (SimplexId i = 0; i < static_cast<SimplexId>(simplices_.size()); ++i) {
    if (simplices_[i].dim() == 0) {
      vertex_simplex_[simplices_[i][0]] = i;
      vertex_ids_.push_back(simplices_[i][0]);
    }
  }
  cofaces_.assign(simplices_.size(), {});
  for (SimplexId t = 0; t < static_cast<SimplexId>(simplices_.size()); ++t) {
    for_each_subset(simplices_[t], [&](std::vector<VertexId>&& verts) {
      Simplex face(std::move(verts));
      cofaces_[index_.at(face)].push_back(t);
    });
  }
}

SimplexId Complex::id_of(const Simplex& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

SimplexId Complex::vertex_simplex(VertexId v) const {
  if (v < 0 || v >= vertex_bound_) return -1;
  return vertex_simplex_[v];
}

std::vector<std::size_t> Complex::counts_by_dim() const {
  std::vector<std::size_t> counts(dim_ + 1, 0);
  for (const auto& s : simplices_) ++counts[s.dim()];
  return counts;
}

std::vector<SimplexId> Complex::ids_of_dim(int d) const {
  std::vector<SimplexId> ids;
  for (SimplexId i = 0; i < static_cast<SimplexId>(simplices_.size()); ++i)
    if (simplices_[i].dim() == d) ids.push_back(i);
  return ids;
}

long long euler_characteristic(const Complex& K) {
  if (K.empty()) throw Error("euler characteristic of the empty complex");
  long long chi = 0;
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i)
    chi += (K.simplex(i).dim() % 2 == 0) ? 1 : -1;
  return chi;
}

LinkResult combinatorial_link(const Complex& K, const Simplex& sigma) {
  SimplexId sid = K.id_of(sigma);
  if (sid < 0) throw Error("simplex not in complex");
  std::vector<Simplex> link_faces;
  for (SimplexId t : K.cofaces(sid)) {
    if (t == sid) continue;
    const Simplex& tau = K.simplex(t);
    std::vector<VertexId> rest;
    rest.reserve(tau.card() - sigma.card());
    for (VertexId v : tau.vertices())
      if (!sigma.contains(v)) rest.push_back(v);
    link_faces.emplace_back(std::move(rest));
  }
  // Relabel densely, preserving vertex order.
  std::vector<VertexId> used;
  for (const auto& f : link_faces)
    for (VertexId v : f.vertices()) used.push_back(v);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::unordered_map<VertexId, VertexId> dense;
  for (std::size_t i = 0; i < used.size(); ++i)
    dense[used[i]] = static_cast<VertexId>(i);
  std::vector<Simplex> relabeled;
  relabeled.reserve(link_faces.size());
  for (const auto& f : link_faces) {
    std::vector<VertexId> verts;
    verts.reserve(f.card());
    for (VertexId v : f.vertices()) verts.push_back(dense[v]);
    relabeled.emplace_back(std::move(verts));
  }
  LinkResult res;
  res.complex = Complex::closure_of(relabeled);
  res.to_ambient = used;
  return res;
}

Complex geometric_link(const Complex& K, const Simplex& sigma) {
  Complex link = combinatorial_link(K, sigma).complex;
  for (int i = 0; i < sigma.dim(); ++i) link = suspension(link).complex;
  return link;
}

Subdivision barycentric_subdivision(const Complex& K) {
  // New vertex v = barycenter of old simplex v. Maximal cells are the
  // full flags sigma_0 ⊂ ... ⊂ sigma_d below each maximal old simplex.
  std::vector<std::vector<VertexId>> maximal_chains;
  std::vector<VertexId> chain;
  auto descend = [&](auto&& self, SimplexId top) -> void {
    chain.push_back(top);
    const Simplex& s = K.simplex(top);
    if (s.dim() == 0) {
      maximal_chains.push_back(chain);
    } else {
      for (std::size_t skip = 0; skip < s.card(); ++skip) {
        std::vector<VertexId> verts;
        verts.reserve(s.card() - 1);
        for (std::size_t i = 0; i < s.card(); ++i)
          if (i != skip) verts.push_back(s[i]);
        self(self, K.id_of(Simplex(std::move(verts))));
      }
    }
    chain.pop_back();
  };
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i) {
    if (K.cofaces(i).size() == 1)  // maximal: only itself
      descend(descend, i);
  }
  Subdivision result;
  result.complex = Complex::from_maximal(maximal_chains);
  result.carrier.assign(result.complex.size(), -1);
  for (SimplexId i = 0; i < static_cast<SimplexId>(result.complex.size());
       ++i) {
    // Vertices of a new simplex form a chain of old ids; the carrier is the
    // largest element of the chain.
    const auto& verts = result.complex.simplex(i).vertices();
    SimplexId best = verts.front();
    for (VertexId v : verts)
      if (K.simplex(v).dim() > K.simplex(best).dim()) best = v;
    result.carrier[i] = best;
  }
  return result;
}

namespace {

std::vector<Simplex> relabel_all(const Complex& K,
                                 const std::vector<VertexId>& vmap) {
  std::vector<Simplex> out;
  out.reserve(K.size());
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i) {
    std::vector<VertexId> verts;
    verts.reserve(K.simplex(i).card());
    for (VertexId v : K.simplex(i).vertices()) verts.push_back(vmap[v]);
    out.emplace_back(std::move(verts));
  }
  return out;
}

}  // namespace

UnionResult disjoint_union(const Complex& A, const Complex& B) {
  UnionResult res;
  res.map_a.resize(A.vertex_bound());
  std::iota(res.map_a.begin(), res.map_a.end(), 0);
  res.map_b.resize(B.vertex_bound());
  std::iota(res.map_b.begin(), res.map_b.end(), A.vertex_bound());
  std::vector<Simplex> all = relabel_all(A, res.map_a);
  auto bs = relabel_all(B, res.map_b);
  all.insert(all.end(), bs.begin(), bs.end());
  res.complex = Complex::closure_of(all);
  return res;
}

UnionResult wedge(const Complex& A, VertexId pa, const Complex& B,
                  VertexId pb) {
  if (A.vertex_simplex(pa) < 0 || B.vertex_simplex(pb) < 0)
    throw Error("wedge point is not a vertex");
  UnionResult res;
  res.map_a.resize(A.vertex_bound());
  std::iota(res.map_a.begin(), res.map_a.end(), 0);
  res.map_b.assign(B.vertex_bound(), -1);
  VertexId next = A.vertex_bound();
  for (VertexId v = 0; v < B.vertex_bound(); ++v) {
    if (B.vertex_simplex(v) < 0) continue;
    res.map_b[v] = (v == pb) ? pa : next++;
  }
  std::vector<Simplex> all = relabel_all(A, res.map_a);
  auto bs = relabel_all(B, res.map_b);
  all.insert(all.end(), bs.begin(), bs.end());
  res.complex = Complex::closure_of(all);
  return res;
}

ConeResult cone(const Complex& K) {
  ConeResult res;
  res.apex = K.vertex_bound();
  std::vector<Simplex> all;
  all.reserve(2 * K.size() + 1);
  all.emplace_back(std::vector<VertexId>{res.apex});
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i) {
    all.push_back(K.simplex(i));
    std::vector<VertexId> verts = K.simplex(i).vertices();
    verts.push_back(res.apex);
    all.emplace_back(std::move(verts));
  }
  res.complex = Complex::closure_of(all);
  return res;
}

SuspensionResult suspension(const Complex& K) {
  SuspensionResult res;
  res.north = K.vertex_bound();
  res.south = K.vertex_bound() + 1;
  std::vector<Simplex> all;
  all.reserve(3 * K.size() + 2);
  all.emplace_back(std::vector<VertexId>{res.north});
  all.emplace_back(std::vector<VertexId>{res.south});
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i) {
    all.push_back(K.simplex(i));
    for (VertexId pole : {res.north, res.south}) {
      std::vector<VertexId> verts = K.simplex(i).vertices();
      verts.push_back(pole);
      all.emplace_back(std::move(verts));
    }
  }
  res.complex = Complex::closure_of(all);
  return res;
}

VertexId product_vertex(const Complex& B, VertexId a, VertexId b) {
  return a * B.vertex_bound() + b;
}

Complex product(const Complex& A, const Complex& B) {
  if (A.empty() || B.empty()) throw Error("product of an empty complex");
  std::vector<std::vector<VertexId>> maximal;
  std::vector<std::pair<std::size_t, std::size_t>> path;
  for (SimplexId ia = 0; ia < static_cast<SimplexId>(A.size()); ++ia) {
    if (A.cofaces(ia).size() != 1) continue;  // maximal cells only
    const Simplex& sa = A.simplex(ia);
    for (SimplexId ib = 0; ib < static_cast<SimplexId>(B.size()); ++ib) {
      if (B.cofaces(ib).size() != 1) continue;
      const Simplex& sb = B.simplex(ib);
      const std::size_t rows = sa.card(), cols = sb.card();
      // Monotone staircases from (0,0) to (rows-1, cols-1).
      auto walk = [&](auto&& self, std::size_t r, std::size_t c) -> void {
        path.emplace_back(r, c);
        if (r == rows - 1 && c == cols - 1) {
          std::vector<VertexId> verts;
          verts.reserve(path.size());
          for (auto [pr, pc] : path)
            verts.push_back(product_vertex(B, sa[pr], sb[pc]));
          maximal.push_back(std::move(verts));
        } else {
          if (r + 1 < rows) self(self, r + 1, c);
          if (c + 1 < cols) self(self, r, c + 1);
        }
        path.pop_back();
      };
      walk(walk, 0, 0);
    }
  }
  return Complex::from_maximal(maximal);
}

GlueResult glue(const Complex& A, const std::map<VertexId, VertexId>& identify) {
  GlueResult res;
  res.vertex_map.resize(A.vertex_bound());
  std::iota(res.vertex_map.begin(), res.vertex_map.end(), 0);
  for (auto [from, to] : identify) {
    if (from < 0 || from >= A.vertex_bound() || A.vertex_simplex(from) < 0)
      throw Error("glue source is not a vertex of the complex");
    res.vertex_map[from] = to;
  }
  // Resolve chains a -> b -> c.
  for (VertexId v = 0; v < A.vertex_bound(); ++v) {
    VertexId t = res.vertex_map[v];
    int steps = 0;
    while (t >= 0 && t < A.vertex_bound() && res.vertex_map[t] != t) {
      t = res.vertex_map[t];
      if (++steps > A.vertex_bound()) throw Error("cyclic glue identification");
    }
    res.vertex_map[v] = t;
  }
  std::vector<Simplex> all;
  all.reserve(A.size());
  for (SimplexId i = 0; i < static_cast<SimplexId>(A.size()); ++i) {
    std::vector<VertexId> verts;
    verts.reserve(A.simplex(i).card());
    for (VertexId v : A.simplex(i).vertices()) verts.push_back(res.vertex_map[v]);
    std::sort(verts.begin(), verts.end());
    for (std::size_t k = 0; k + 1 < verts.size(); ++k)
      if (verts[k] == verts[k + 1])
        throw DegenerateGlueError(
            "identification collapses a simplex; subdivide first");
    all.emplace_back(std::move(verts));
  }
  res.complex = Complex::closure_of(all);
  return res;
}

}  // namespace confun
