#include <doctest.h>

#include <set>

#include "confun/reference.hpp"
#include "confun/simplicial.hpp"

using namespace confun;

namespace {

Complex sphere(int dim) {
  std::vector<std::vector<VertexId>> maximal;
  for (int skip = 0; skip < dim + 2; ++skip) {
    std::vector<VertexId> verts;
    for (int i = 0; i < dim + 2; ++i)
      if (i != skip) verts.push_back(i);
    maximal.push_back(verts);
  }
  return Complex::from_maximal(maximal);
}

}  // namespace

TEST_CASE("closure of maximal simplices") {
  Complex circle = Complex::from_maximal({{0, 1}, {1, 2}, {0, 2}});
  CHECK(circle.dim() == 1);
  CHECK(circle.vertex_count() == 3);
  CHECK(circle.counts_by_dim() == std::vector<std::size_t>{3, 3});

  Complex pt = Complex::from_maximal({{0}});
  CHECK(pt.dim() == 0);
  CHECK(pt.size() == 1);

  // mixed local dimension is allowed
  Complex mixed = Complex::from_maximal({{0, 1, 2}, {2, 3}});
  CHECK(mixed.dim() == 2);
  CHECK(mixed.contains(Simplex({2, 3})));
  CHECK(mixed.contains(Simplex({0, 1})));

  // duplicates and non-maximal entries are absorbed
  Complex dup = Complex::from_maximal({{0, 1, 2}, {0, 1}, {0, 1, 2}});
  CHECK(dup.size() == 7);

  CHECK_THROWS_AS(Complex::from_maximal({{0, 0, 1}}), Error);
  CHECK_THROWS_AS(Complex::from_maximal({}), Error);
}

TEST_CASE("combinatorial links") {
  Complex s2 = sphere(2);
  LinkResult lk = combinatorial_link(s2, Simplex({0}));
  CHECK(lk.complex.dim() == 1);
  CHECK(euler_characteristic(lk.complex) == 0);  // a circle
  CHECK(lk.to_ambient.size() == 3);

  Complex edge = Complex::from_maximal({{0, 1}});
  LinkResult one = combinatorial_link(edge, Simplex({0}));
  CHECK(one.complex.size() == 1);
  CHECK(one.complex.dim() == 0);
  CHECK(one.to_ambient == std::vector<VertexId>{1});

  // two triangle boundaries wedged at a vertex: the link is 4 points
  Complex c1 = Complex::from_maximal({{0, 1}, {1, 2}, {0, 2}});
  UnionResult w = wedge(c1, 0, c1, 0);
  LinkResult four = combinatorial_link(w.complex, Simplex({0}));
  CHECK(four.complex.dim() == 0);
  CHECK(four.complex.size() == 4);

  CHECK_THROWS_AS(combinatorial_link(edge, Simplex({5})), Error);
}

TEST_CASE("geometric links via suspension") {
  Complex s2 = sphere(2);
  // link of a point on an open edge: suspension of two points = a circle
  Complex gl = geometric_link(s2, Simplex({0, 1}));
  CHECK(gl.dim() == 1);
  CHECK(euler_characteristic(gl) == 0);

  // a maximal 2-cell: double suspension of the empty complex
  Complex tri = Complex::from_maximal({{0, 1, 2}});
  Complex gl2 = geometric_link(tri, Simplex({0, 1, 2}));
  CHECK(gl2.dim() == 1);
  CHECK(euler_characteristic(gl2) == 0);

  // vertices: the combinatorial link unchanged
  Complex glv = geometric_link(s2, Simplex({0}));
  CHECK(euler_characteristic(glv) == 0);
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(sphere(2)) == 2);
  CHECK(euler_characteristic(Complex::from_maximal({{0}})) == 1);
  Complex s3 = sphere(3);
  UnionResult w = wedge(s3, 0, s3, 0);
  CHECK(euler_characteristic(w.complex) == -1);
  CHECK_THROWS_AS(euler_characteristic(Complex()), Error);
}

TEST_CASE("barycentric subdivision and carriers") {
  Complex edge = Complex::from_maximal({{0, 1}});
  Subdivision se = barycentric_subdivision(edge);
  CHECK(se.complex.counts_by_dim() == std::vector<std::size_t>{3, 2});

  Complex tri = Complex::from_maximal({{0, 1, 2}});
  Subdivision st = barycentric_subdivision(tri);
  CHECK(st.complex.counts_by_dim() == std::vector<std::size_t>{7, 12, 6});

  Complex circle = Complex::from_maximal({{0, 1}, {1, 2}, {0, 2}});
  Subdivision sc = barycentric_subdivision(circle);
  CHECK(sc.complex.counts_by_dim() == std::vector<std::size_t>{6, 6});
  CHECK(euler_characteristic(sc.complex) == euler_characteristic(circle));

  // carrier sends each new simplex to the old simplex of top chain dimension
  for (SimplexId i = 0; i < (SimplexId)st.complex.size(); ++i) {
    const Simplex& s = st.complex.simplex(i);
    int maxdim = -1;
    for (VertexId v : s.vertices()) maxdim = std::max(maxdim, tri.simplex(v).dim());
    CHECK(tri.simplex(st.carrier[i]).dim() == maxdim);
  }
}

TEST_CASE("constructors") {
  Complex two_pts = Complex::from_maximal({{0}, {1}});
  SuspensionResult s = suspension(two_pts);
  CHECK(s.complex.counts_by_dim() == std::vector<std::size_t>{4, 4});
  CHECK(euler_characteristic(s.complex) == 0);

  Complex circle = Complex::from_maximal({{0, 1}, {1, 2}, {0, 2}});
  UnionResult figure8 = wedge(circle, 0, circle, 0);
  CHECK(euler_characteristic(figure8.complex) == -1);

  Complex e = Complex::from_maximal({{0, 1}});
  Complex square = product(e, e);
  CHECK(square.counts_by_dim() == std::vector<std::size_t>{4, 5, 2});
  CHECK(euler_characteristic(square) == 1);

  // multiplicativity and the suspension formula
  Complex k1 = Complex::from_maximal({{0, 1}, {1, 2}, {0, 2}, {3}});
  Complex k2 = Complex::from_maximal({{0, 1, 2}, {2, 3}});
  CHECK(euler_characteristic(product(k1, k2)) ==
        euler_characteristic(k1) * euler_characteristic(k2));
  CHECK(euler_characteristic(suspension(k1).complex) ==
        2 - euler_characteristic(k1));

  ConeResult c = cone(circle);
  CHECK(euler_characteristic(c.complex) == 1);
  CHECK(c.complex.dim() == 2);
}

TEST_CASE("disjoint union keeps both copies") {
  Complex a = Complex::from_maximal({{0, 1, 2}});
  Complex b = Complex::from_maximal({{0, 1}, {1, 2}, {0, 2}});
  UnionResult u = disjoint_union(a, b);
  CHECK(u.complex.size() == a.size() + b.size());
  for (SimplexId i = 0; i < (SimplexId)a.size(); ++i) {
    std::vector<VertexId> verts;
    for (VertexId v : a.simplex(i).vertices()) verts.push_back(u.map_a[v]);
    CHECK(u.complex.contains(Simplex(verts)));
  }
  for (SimplexId i = 0; i < (SimplexId)b.size(); ++i) {
    std::vector<VertexId> verts;
    for (VertexId v : b.simplex(i).vertices()) verts.push_back(u.map_b[v]);
    CHECK(u.complex.contains(Simplex(verts)));
  }
}

TEST_CASE("glue refuses degenerate identifications") {
  Complex e = Complex::from_maximal({{0, 1}});
  CHECK_THROWS_AS(glue(e, {{1, 0}}), DegenerateGlueError);

  // identifying the endpoints of a two-edge path merges the edges into one
  // (the documented deduplication); subdividing first gives the circle
  Complex path2 = Complex::from_maximal({{0, 1}, {1, 2}});
  GlueResult merged = glue(path2, {{2, 0}});
  CHECK(merged.complex.counts_by_dim() == std::vector<std::size_t>{2, 1});
  Subdivision sub = barycentric_subdivision(path2);
  // endpoints 0 and 2 keep their ids as barycenters of their 0-simplices
  VertexId v0 = -1, v2 = -1;
  for (SimplexId i = 0; i < (SimplexId)path2.size(); ++i) {
    if (path2.simplex(i) == Simplex({0})) v0 = i;
    if (path2.simplex(i) == Simplex({2})) v2 = i;
  }
  GlueResult g = glue(sub.complex, {{v2, v0}});
  CHECK(euler_characteristic(g.complex) == 0);  // a circle
  CHECK(g.complex.counts_by_dim() == std::vector<std::size_t>{4, 4});
}

TEST_CASE("geometric link agrees with the sphere around a barycenter") {
  std::vector<Complex> samples;
  samples.push_back(sphere(2));
  samples.push_back(sphere(3));
  samples.push_back(Complex::from_maximal({{0, 1, 2}, {2, 3}, {3, 4, 5, 6}}));
  samples.push_back(cone(sphere(2)).complex);
  for (const Complex& K : samples) {
    Subdivision sub = barycentric_subdivision(K);
    for (SimplexId s = 0; s < (SimplexId)K.size(); ++s) {
      Complex gl = geometric_link(K, K.simplex(s));
      long long via_join = gl.empty() ? 0 : euler_characteristic(gl);
      CHECK(via_join == reference::geometric_link_chi(K, sub, s));
    }
  }
}
