#include "confun/dyadic.hpp"

#include <cstdlib>

namespace confun {

Dyadic::Dyadic(Int numerator, unsigned exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (num_.is_zero()) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && !bit_test(num_, 0)) {
    num_ >>= 1;
    --exp_;
  }
}

const Int& Dyadic::as_integer() const {
  if (exp_ != 0) throw Error("dyadic value " + str() + " is not an integer");
  return num_;
}

Int Dyadic::mod_pow2(unsigned k) const {
  const Int& n = as_integer();
  if (k == 0) return 0;
  Int m = Int(1) << k;
  Int r = n % m;
  if (r < 0) r += m;
  return r;
}

Dyadic Dyadic::operator-() const {
  Dyadic r;
  r.num_ = -num_;
  r.exp_ = exp_;
  return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  if (exp_ == o.exp_) {
    num_ += o.num_;
  } else if (exp_ > o.exp_) {
    num_ += o.num_ << (exp_ - o.exp_);
  } else {
    num_ = (num_ << (o.exp_ - exp_)) + o.num_;
    exp_ = o.exp_;
  }
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) { return *this += -o; }

Dyadic& Dyadic::operator*=(const Dyadic& o) {
  num_ *= o.num_;
  exp_ += o.exp_;
  normalize();
  return *this;
}

std::string Dyadic::str() const {
  std::string s = num_.str();
  if (exp_ > 0) {
    Int den = Int(1) << exp_;
    s += "/" + den.str();
  }
  return s;
}

Dyadic Dyadic::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Dyadic(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den <= 0) throw ParseError("denominator must be positive: " + text);
    unsigned exp = 0;
    while (!bit_test(den, 0)) {
      den >>= 1;
      ++exp;
    }
    if (den != 1)
      throw ParseError("denominator must be a power of 2: " + text);
    return Dyadic(num, exp);
  } catch (const std::runtime_error& e) {
    throw ParseError("bad exact value '" + text + "'");
  }
}

Int sub2(const Int& x) { return x * x - x; }
Int sub3(const Int& x) { return x * x * x - x; }

}  // namespace confun
