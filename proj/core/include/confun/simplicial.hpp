#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "confun/errors.hpp"

namespace confun {

using VertexId = int;
using SimplexId = int;

// A face of an abstract simplicial complex: a strictly increasing, nonempty
// list of vertex identifiers.
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(std::vector<VertexId> vertices);  // sorts and validates

  int dim() const { return static_cast<int>(verts_.size()) - 1; }
  std::size_t card() const { return verts_.size(); }
  const std::vector<VertexId>& vertices() const { return verts_; }
  VertexId operator[](std::size_t i) const { return verts_[i]; }

  bool contains(VertexId v) const;
  bool has_face(const Simplex& face) const;  // face ⊆ *this

  bool operator==(const Simplex&) const = default;
  // Canonical order: by dimension, then lexicographic on vertices.
  bool operator<(const Simplex& o) const;

 private:
  std::vector<VertexId> verts_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const;
};

// A finite abstract simplicial complex: the downward-closed family of
// simplices, indexed in a canonical (dimension, lex) order. Immutable after
// construction; all queries are read-only.
class Complex {
 public:
  Complex() = default;  // the empty complex (used for links of top cells)

  // Downward closure of the given simplices. Duplicate and non-maximal
  // entries are absorbed. Throws on an empty list or a repeated vertex
  // inside one simplex.
  static Complex from_maximal(const std::vector<std::vector<VertexId>>& maximal);

  // Same, but accepts an empty family (yields the empty complex).
  static Complex closure_of(const std::vector<Simplex>& simplices);

  bool empty() const { return simplices_.empty(); }
  std::size_t size() const { return simplices_.size(); }
  int dim() const { return dim_; }
  // One past the largest vertex id in use.
  int vertex_bound() const { return vertex_bound_; }
  std::size_t vertex_count() const { return vertex_ids_.size(); }
  const std::vector<VertexId>& vertex_ids() const { return vertex_ids_; }

  const Simplex& simplex(SimplexId id) const { return simplices_[id]; }
  SimplexId id_of(const Simplex& s) const;  // -1 if absent
  bool contains(const Simplex& s) const { return id_of(s) >= 0; }
  // Id of the 0-simplex {v}, or -1.
  SimplexId vertex_simplex(VertexId v) const;

  // All cofaces tau ⊇ sigma, including sigma itself.
  const std::vector<SimplexId>& cofaces(SimplexId id) const {
    return cofaces_[id];
  }

  std::vector<std::size_t> counts_by_dim() const;
  std::vector<SimplexId> ids_of_dim(int d) const;

  // Vertex labels are metadata only; they never influence any computation.
  std::map<VertexId, std::string> labels;

 private:
  void build_index();

  std::vector<Simplex> simplices_;  // canonical order
  std::unordered_map<Simplex, SimplexId, SimplexHash> index_;
  std::vector<std::vector<SimplexId>> cofaces_;
  std::vector<SimplexId> vertex_simplex_;  // by vertex id, -1 if unused
  std::vector<VertexId> vertex_ids_;
  int dim_ = -1;
  int vertex_bound_ = 0;
};

long long euler_characteristic(const Complex& K);  // throws on empty K

struct LinkResult {
  Complex complex;
  // Link vertex id -> vertex id in the ambient complex.
  std::vector<VertexId> to_ambient;
};

// Lk(sigma) = { tau : tau ∩ sigma = ∅, tau ∪ sigma ∈ K }, with vertices
// relabeled densely. Throws if sigma ∉ K.
LinkResult combinatorial_link(const Complex& K, const Simplex& sigma);

// Triangulates the link of a point in the open simplex sigma: the
// (dim sigma)-fold suspension of the combinatorial link. The suspension of
// the empty complex is two points.
Complex geometric_link(const Complex& K, const Simplex& sigma);

struct Subdivision {
  Complex complex;
  // New simplex id -> id of the unique old open simplex containing it.
  // New vertex v is the barycenter of old simplex v (ids coincide).
  std::vector<SimplexId> carrier;
};

Subdivision barycentric_subdivision(const Complex& K);

struct UnionResult {
  Complex complex;
  std::vector<VertexId> map_a;  // vertex of A -> vertex of the result
  std::vector<VertexId> map_b;
};

UnionResult disjoint_union(const Complex& A, const Complex& B);
// Identifies exactly pa ~ pb.
UnionResult wedge(const Complex& A, VertexId pa, const Complex& B, VertexId pb);

struct ConeResult {
  Complex complex;
  VertexId apex;
};
ConeResult cone(const Complex& K);

struct SuspensionResult {
  Complex complex;
  VertexId north, south;
};
// Defined for the empty complex as well (giving two isolated points).
SuspensionResult suspension(const Complex& K);

// Staircase triangulation of |A| x |B| ordered by vertex ids. The vertex
// (a, b) has id a * B.vertex_bound() + b.
Complex product(const Complex& A, const Complex& B);
VertexId product_vertex(const Complex& B, VertexId a, VertexId b);

struct GlueResult {
  Complex complex;
  std::vector<VertexId> vertex_map;  // old vertex -> new vertex
};

// Identifies vertices per `identify` (v -> target); resulting equal
// simplices are deduplicated. Throws DegenerateGlueError if two vertices of
// one simplex land on the same target (callers must pre-subdivide; two
// barycentric subdivisions suffice for identifying disjoint subcomplexes
// along a simplicial isomorphism).
GlueResult glue(const Complex& A, const std::map<VertexId, VertexId>& identify);

}  // namespace confun
