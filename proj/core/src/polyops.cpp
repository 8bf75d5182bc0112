#include "confun/polyops.hpp"

#include <algorithm>

namespace confun {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Dyadic rational_to_dyadic(const Rational& r) {
  Int den = denominator(r);
  unsigned exp = 0;
  while (!bit_test(den, 0)) {
    den >>= 1;
    ++exp;
  }
  if (den != 1)
    throw Error("value " + r.str() + " is not a dyadic rational");
  return Dyadic(numerator(r), exp);
}

Rational dyadic_to_rational(const Dyadic& d) {
  return Rational(d.numerator(), Int(1) << d.exponent());
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
  normalize();
}

void RationalPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) {
  return RationalPolynomial({c});
}

RationalPolynomial RationalPolynomial::variable() {
  return RationalPolynomial({Rational(0), Rational(1)});
}

RationalPolynomial RationalPolynomial::binomial(unsigned p) {
  RationalPolynomial r = constant(1);
  Int fact = 1;
  for (unsigned i = 0; i < p; ++i) {
    r *= RationalPolynomial({Rational(-Int(i)), Rational(1)});
    fact *= (i + 1);
  }
  return r.scaled(Rational(1, fact));
}

RationalPolynomial RationalPolynomial::parse(const std::string& text) {
  std::vector<Rational> coeffs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    // trim spaces
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (tok.empty()) throw ParseError("empty coefficient in '" + text + "'");
    try {
      coeffs.emplace_back(tok);
    } catch (const std::exception&) {
      throw ParseError("bad coefficient '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return RationalPolynomial(std::move(coeffs));
}

Rational RationalPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

Rational RationalPolynomial::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + *it;
  return acc;
}

Dyadic RationalPolynomial::eval_dyadic(const Dyadic& x) const {
  return rational_to_dyadic(eval(dyadic_to_rational(x)));
}

RationalPolynomial RationalPolynomial::translate(const Rational& a) const {
  // Horner with respect to (t + a).
  RationalPolynomial acc;
  RationalPolynomial shift({a, Rational(1)});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= shift;
    acc += constant(*it);
  }
  return acc;
}

RationalPolynomial RationalPolynomial::forward_difference() const {
  return translate(1) - *this;
}

bool RationalPolynomial::integer_valued() const {
  for (int t = 0; t <= std::max(degree(), 0); ++t)
    if (denominator(eval(t)) != 1) return false;
  return true;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

RationalPolynomial RationalPolynomial::scaled(const Rational& c) const {
  std::vector<Rational> out = coeffs_;
  for (auto& x : out) x *= c;
  return RationalPolynomial(std::move(out));
}

std::string RationalPolynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ",";
    s += coeffs_[i].str();
  }
  return s;
}

std::optional<BinomialDecomposition> binomial_decompose(
    const RationalPolynomial& P) {
  const int d = std::max(P.degree(), 0);
  std::vector<Rational> row;
  row.reserve(d + 1);
  for (int t = 0; t <= d; ++t) row.push_back(P.eval(t));
  BinomialDecomposition result;
  for (int p = 0; p <= d; ++p) {
    // n_p = (D^p P)(0): the leading entry of the p-th difference row.
    if (denominator(row[0]) != 1) return std::nullopt;
    result.n.push_back(numerator(row[0]));
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
    row.pop_back();
  }
  while (!result.n.empty() && result.n.back().is_zero()) result.n.pop_back();
  return result;
}

RationalPolynomial from_binomial(const BinomialDecomposition& d) {
  RationalPolynomial acc;
  for (std::size_t p = 0; p < d.n.size(); ++p)
    acc += RationalPolynomial::binomial(static_cast<unsigned>(p))
               .scaled(Rational(d.n[p]));
  return acc;
}

bool in_script_P(const RationalPolynomial& P) {
  auto dec = binomial_decompose(P);
  if (!dec) return false;
  for (std::size_t p = 0; p < dec->n.size(); ++p)
    if (dec->n[p] % (Int(1) << (p / 2)) != 0) return false;
  return true;
}

bool in_script_P_recursive(const RationalPolynomial& P) {
  if (!P.integer_valued()) return false;
  if (P.degree() <= 0) return true;
  RationalPolynomial d1 = P.forward_difference();
  RationalPolynomial half_d2 = d1.forward_difference().scaled(Rational(1, 2));
  return in_script_P_recursive(d1) && in_script_P_recursive(half_d2);
}

const RationalPolynomial& op_sub2() {
  static const RationalPolynomial p =
      RationalPolynomial::parse("0,-1,1");  // t^2 - t
  return p;
}

const RationalPolynomial& op_sub3() {
  static const RationalPolynomial p =
      RationalPolynomial::parse("0,-1,0,1");  // t^3 - t
  return p;
}

const RationalPolynomial& op_p4() {
  static const RationalPolynomial p = [] {
    RationalPolynomial r = RationalPolynomial::constant(Rational(1, 2));
    for (int a : {0, 1, 2, 3})
      r *= RationalPolynomial({Rational(-a), Rational(1)});
    return r;
  }();
  return p;
}

const RationalPolynomial& op_p5() {
  static const RationalPolynomial p =
      op_p4() * RationalPolynomial({Rational(-4), Rational(1)});
  return p;
}

std::array<RationalPolynomial, 6> mod8_generators() {
  return {RationalPolynomial::constant(1), RationalPolynomial::variable(),
          op_sub2(), op_sub3(), op_p4(), op_p5()};
}

namespace {

Int mod_pos(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

Mod8Reduction mod8_reduce(const RationalPolynomial& P) {
  auto dec = binomial_decompose(P);
  if (!dec || !in_script_P(P))
    throw Error("polynomial is not in the operator ring");
  std::vector<Int> n = dec->n;
  n.resize(std::max<std::size_t>(n.size(), 6), Int(0));
  Mod8Reduction r;
  // The generators are triangular in the binomial basis:
  // g0=f0, g1=f1, g2=2 f2, g3=6 f2+6 f3, g4=12 f4, g5=60 f5.
  r.coords[5] = mod_pos(n[5] / 4, 2);
  r.coords[4] = mod_pos(n[4] / 4, 2);
  r.coords[3] = mod_pos(3 * (n[3] / 2), 4);
  r.coords[2] = mod_pos((n[2] - 6 * r.coords[3]) / 2, 4);
  r.coords[1] = mod_pos(n[1], 8);
  r.coords[0] = mod_pos(n[0], 8);
  auto gens = mod8_generators();
  r.residual = P;
  for (int i = 0; i < 6; ++i)
    r.residual -= gens[i].scaled(Rational(r.coords[i]));
  auto res_dec = binomial_decompose(r.residual);
  if (!res_dec) throw Error("internal: residual not integer-valued");
  for (const Int& np : res_dec->n)
    if (np % 8 != 0) throw Error("internal: residual not divisible by 8");
  return r;
}

MultiPolynomial MultiPolynomial::from_univariate(const RationalPolynomial& P,
                                                 int var, int nvars) {
  MultiPolynomial out(nvars);
  for (std::size_t i = 0; i < P.coefficients().size(); ++i) {
    if (P.coefficients()[i].is_zero()) continue;
    std::vector<unsigned> exps(nvars, 0);
    exps[var] = static_cast<unsigned>(i);
    out.add_term(std::move(exps), P.coefficients()[i]);
  }
  return out;
}

void MultiPolynomial::add_term(std::vector<unsigned> exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != nvars_)
    throw Error("exponent vector arity mismatch");
  terms_[std::move(exps)] += c;
  prune();
}

void MultiPolynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

Rational MultiPolynomial::eval(const std::vector<Rational>& t) const {
  Rational acc = 0;
  for (const auto& [exps, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < exps[i]; ++e) term *= t[i];
    acc += term;
  }
  return acc;
}

std::vector<unsigned> MultiPolynomial::max_degrees() const {
  std::vector<unsigned> degs(nvars_, 0);
  for (const auto& [exps, c] : terms_)
    for (int i = 0; i < nvars_; ++i) degs[i] = std::max(degs[i], exps[i]);
  return degs;
}

MultiPolynomial& MultiPolynomial::operator+=(const MultiPolynomial& o) {
  for (const auto& [exps, c] : o.terms_) terms_[exps] += c;
  prune();
  return *this;
}

MultiPolynomial& MultiPolynomial::operator*=(const MultiPolynomial& o) {
  std::map<std::vector<unsigned>, Rational> out;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<unsigned> e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out[std::move(e)] += ca * cb;
    }
  terms_ = std::move(out);
  prune();
  return *this;
}

std::optional<MultiDecomposition> binomial_decompose_multi(
    const MultiPolynomial& P) {
  const auto degs = P.max_degrees();
  const int s = P.nvars();
  // Iterated finite differences per variable, computed from the values of P
  // on the integer grid [0, d1] x ... x [0, ds]:
  //   n_p = sum_{q <= p} prod_i (-1)^(p_i - q_i) C(p_i, q_i) P(q).
  std::vector<std::vector<Int>> binom(9, std::vector<Int>(9, 0));
  for (int i = 0; i < 9; ++i) {
    binom[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
  }
  auto for_each_vector = [&](const std::vector<unsigned>& bound, auto&& fn) {
    std::vector<unsigned> v(s, 0);
    while (true) {
      fn(v);
      int i = 0;
      while (i < s && v[i] == bound[i]) v[i++] = 0;
      if (i == s) break;
      ++v[i];
    }
  };
  bool ok = true;
  MultiDecomposition result;
  for_each_vector(degs, [&](const std::vector<unsigned>& p) {
    if (!ok) return;
    Rational acc = 0;
    for_each_vector(p, [&](const std::vector<unsigned>& q) {
      Int coef = 1;
      int parity = 0;
      for (int i = 0; i < s; ++i) {
        coef *= binom[p[i]][q[i]];
        parity += static_cast<int>(p[i] - q[i]);
      }
      std::vector<Rational> t(q.begin(), q.end());
      Rational val = P.eval(t) * Rational(coef);
      acc += (parity % 2 == 0) ? val : -val;
    });
    if (denominator(acc) != 1) {
      ok = false;
      return;
    }
    if (!acc.is_zero()) result.n[p] = numerator(acc);
  });
  if (!ok) return std::nullopt;
  return result;
}

bool in_script_P_multi(const MultiPolynomial& P) {
  auto dec = binomial_decompose_multi(P);
  if (!dec) return false;
  for (const auto& [p, np] : dec->n) {
    unsigned shift = 0;
    for (unsigned pi : p) shift += pi / 2;
    if (np % (Int(1) << shift) != 0) return false;
  }
  return true;
}

}  // namespace confun
