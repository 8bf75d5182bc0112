#include <doctest.h>

#include "confun/io.hpp"

using namespace confun;

TEST_CASE("parse and canonical round trip") {
  const std::string text =
      "# a demo file\n"
      "name: demo\n"
      "simplex: 2 1 0\n"
      "simplex: 2 3\n"
      "label: 3 spur\n"
      "value: 1 0 = 10/4\n"
      "meta: kind = demo\n";
  ComplexFile f = ComplexFile::parse_string(text);
  CHECK(f.name == "demo");
  CHECK(f.simplices == std::vector<std::vector<VertexId>>{{2, 3}, {0, 1, 2}});
  CHECK(f.values.size() == 1);
  CHECK(f.values[0].second == "5/2");  // canonicalized
  const std::string canon = f.serialize();
  CHECK(ComplexFile::parse_string(canon).serialize() == canon);
}

TEST_CASE("builds the closure and the function table") {
  ComplexFile f = ComplexFile::parse_string(
      "simplex: 0 1 2\nvalue: 0 1 = -7/8\nvalue: 2 = 3\n");
  auto K = std::make_shared<const Complex>(f.build());
  CHECK(K->size() == 7);
  ConstructibleFunction fn = f.function(K);
  CHECK(fn[K->id_of(Simplex({0, 1}))] == Dyadic(Int(-7), 3));
  CHECK(fn[K->id_of(Simplex({2}))] == Dyadic(3));
  CHECK(fn[K->id_of(Simplex({0, 1, 2}))].is_zero());
}

TEST_CASE("diagnostics carry line numbers") {
  try {
    ComplexFile::parse_string("simplex: 0 1\nvalue: 0 = 1/3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(ComplexFile::parse_string("simplex: 0 0\n"), Error);
  CHECK_THROWS_AS(ComplexFile::parse_string("frob: 1\n"), ParseError);
  CHECK_THROWS_AS(ComplexFile::parse_string("# nothing\n"), ParseError);
  // a value on a simplex outside the closure
  ComplexFile f = ComplexFile::parse_string("simplex: 0 1\nvalue: 2 = 1\n");
  CHECK_THROWS_AS(f.build(), ParseError);
}

TEST_CASE("reports are deterministic") {
  auto make = [] {
    Report r;
    r.kv("report", "demo");
    r.line(0, "block");
    r.line(1, "x", "1");
    return r.str();
  };
  CHECK(make() == make());
  CHECK(make() == "report: demo\nblock:\n  x: 1\n");
}
