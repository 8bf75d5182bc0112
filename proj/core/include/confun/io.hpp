#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "confun/constructible.hpp"
#include "confun/simplicial.hpp"

namespace confun {

// Line-oriented text format for complexes:
//   name: witness-b7
//   label: 3 apex
//   simplex: 0 1 2
//   value: 0 1 = 5/2
//   meta: stage = thicken
// '#' starts a comment; keys may appear in any order. Values are exact
// strings with power-of-two denominators.
struct ComplexFile {
  std::string name;
  std::map<VertexId, std::string> labels;
  std::vector<std::vector<VertexId>> simplices;  // maximal family as given
  std::vector<std::pair<std::vector<VertexId>, std::string>> values;
  std::vector<std::pair<std::string, std::string>> meta;

  static ComplexFile parse(std::istream& in);
  static ComplexFile parse_string(const std::string& text);
  static ComplexFile load(const std::string& path);

  // Canonical rendering: sorted simplices and labels, canonical value
  // strings, metadata in file order. parse(serialize(f)) == canonical f.
  std::string serialize() const;
  void save(const std::string& path) const;

  Complex build() const;
  // Function table over the closure (zero where unspecified). Every listed
  // simplex must exist; denominators must be powers of two.
  ConstructibleFunction function(const ComplexPtr& K) const;
  bool has_values() const { return !values.empty(); }

  static ComplexFile from_complex(const std::string& name, const Complex& K);
  static ComplexFile from_function(const std::string& name,
                                   const ConstructibleFunction& f);
};

// Deterministic key/value report document; nested keys are indented.
class Report {
 public:
  void line(int indent, const std::string& key, const std::string& value = "");
  void kv(const std::string& key, const std::string& value) {
    line(0, key, value);
  }
  std::string str() const;

 private:
  struct Entry {
    int indent;
    std::string key, value;
  };
  std::vector<Entry> entries_;
};

}  // namespace confun
