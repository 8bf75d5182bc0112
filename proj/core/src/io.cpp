#include "confun/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace confun {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<VertexId> parse_vertices(const std::string& text, int lineno) {
  std::istringstream in(text);
  std::vector<VertexId> verts;
  long long v;
  while (in >> v) {
    if (v < 0) throw ParseError("negative vertex id", lineno);
    verts.push_back(static_cast<VertexId>(v));
  }
  if (!in.eof()) throw ParseError("bad vertex list '" + text + "'", lineno);
  if (verts.empty()) throw ParseError("empty vertex list", lineno);
  return verts;
}

}  // namespace

ComplexFile ComplexFile::parse(std::istream& in) {
  ComplexFile f;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'key: ...' in '" + line + "'", lineno);
    const std::string key = trim(line.substr(0, colon));
    const std::string rest = trim(line.substr(colon + 1));
    if (key == "name") {
      f.name = rest;
    } else if (key == "simplex") {
      f.simplices.push_back(parse_vertices(rest, lineno));
    } else if (key == "label") {
      std::istringstream ls(rest);
      long long v;
      if (!(ls >> v) || v < 0) throw ParseError("bad label line", lineno);
      std::string text;
      std::getline(ls, text);
      f.labels[static_cast<VertexId>(v)] = trim(text);
    } else if (key == "value") {
      auto eq = rest.find('=');
      if (eq == std::string::npos)
        throw ParseError("value line needs 'vertices = value'", lineno);
      auto verts = parse_vertices(trim(rest.substr(0, eq)), lineno);
      std::string val = trim(rest.substr(eq + 1));
      try {
        val = Dyadic::parse(val).str();  // canonicalize, check denominator
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
      f.values.emplace_back(std::move(verts), std::move(val));
    } else if (key == "meta") {
      auto eq = rest.find('=');
      if (eq == std::string::npos)
        throw ParseError("meta line needs 'key = value'", lineno);
      f.meta.emplace_back(trim(rest.substr(0, eq)), trim(rest.substr(eq + 1)));
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  if (f.simplices.empty())
    throw ParseError("file lists no simplices", lineno);
  // canonicalize simplex lists
  for (auto& verts : f.simplices) {
    Simplex s(verts);  // validates
    verts = s.vertices();
  }
  auto cmp = [](const std::vector<VertexId>& a,
                const std::vector<VertexId>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  };
  std::sort(f.simplices.begin(), f.simplices.end(), cmp);
  f.simplices.erase(std::unique(f.simplices.begin(), f.simplices.end()),
                    f.simplices.end());
  std::sort(f.values.begin(), f.values.end(),
            [&](const auto& a, const auto& b) { return cmp(a.first, b.first); });
  return f;
}

ComplexFile ComplexFile::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

ComplexFile ComplexFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse(in);
}

std::string ComplexFile::serialize() const {
  std::ostringstream out;
  if (!name.empty()) out << "name: " << name << "\n";
  for (const auto& [v, text] : labels) out << "label: " << v << " " << text << "\n";
  for (const auto& verts : simplices) {
    out << "simplex:";
    for (VertexId v : verts) out << " " << v;
    out << "\n";
  }
  for (const auto& [verts, val] : values) {
    out << "value:";
    for (VertexId v : verts) out << " " << v;
    out << " = " << val << "\n";
  }
  for (const auto& [k, v] : meta) out << "meta: " << k << " = " << v << "\n";
  return out.str();
}

void ComplexFile::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize();
}

Complex ComplexFile::build() const {
  Complex K = Complex::from_maximal(simplices);
  K.labels = labels;
  for (const auto& [verts, val] : values)
    if (K.id_of(Simplex(verts)) < 0)
      throw ParseError("value listed for a simplex outside the closure");
  return K;
}

ConstructibleFunction ComplexFile::function(const ComplexPtr& K) const {
  ConstructibleFunction f = ConstructibleFunction::zero(K);
  for (const auto& [verts, val] : values) {
    SimplexId id = K->id_of(Simplex(verts));
    if (id < 0)
      throw ParseError("value listed for a simplex outside the closure");
    f.set(id, Dyadic::parse(val));
  }
  return f;
}

ComplexFile ComplexFile::from_complex(const std::string& name,
                                      const Complex& K) {
  ComplexFile f;
  f.name = name;
  f.labels = K.labels;
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i)
    if (K.cofaces(i).size() == 1)  // maximal
      f.simplices.push_back(K.simplex(i).vertices());
  return f;
}

ComplexFile ComplexFile::from_function(const std::string& name,
                                       const ConstructibleFunction& fn) {
  ComplexFile f = from_complex(name, *fn.complex());
  const Complex& K = *fn.complex();
  for (SimplexId i = 0; i < static_cast<SimplexId>(K.size()); ++i)
    if (!fn[i].is_zero())
      f.values.emplace_back(K.simplex(i).vertices(), fn[i].str());
  return f;
}

void Report::line(int indent, const std::string& key,
                  const std::string& value) {
  entries_.push_back({indent, key, value});
}

std::string Report::str() const {
  std::ostringstream out;
  for (const auto& e : entries_) {
    for (int i = 0; i < e.indent; ++i) out << "  ";
    out << e.key << ":";
    if (!e.value.empty()) out << " " << e.value;
    out << "\n";
  }
  return out.str();
}

}  // namespace confun
