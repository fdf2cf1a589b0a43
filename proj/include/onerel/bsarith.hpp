#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "onerel/words.hpp"

namespace onerel {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Element of Z[1/m]: num / base^exp with exp >= 0 and, in canonical form,
// exp = 0 or base not dividing num.
class MAdic {
 public:
  MAdic() : num_(0), exp_(0), base_(2) {}
  MAdic(Int num, int exp, int base) : num_(std::move(num)), exp_(exp), base_(base) {
    if (base < 2) throw std::invalid_argument("MAdic: base must be >= 2");
    if (exp < 0) throw std::invalid_argument("MAdic: exponent must be >= 0");
    canonicalize();
  }
  static MAdic zero(int base) { return MAdic(0, 0, base); }
  static MAdic integer(Int n, int base) { return MAdic(std::move(n), 0, base); }

  const Int& num() const { return num_; }
  int exp() const { return exp_; }
  int base() const { return base_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ == 0; }

  friend MAdic operator+(const MAdic& x, const MAdic& y) {
    x.check_base(y);
    int e = std::max(x.exp_, y.exp_);
    Int n = x.num_ * pow_base(x.base_, e - x.exp_) +
            y.num_ * pow_base(y.base_, e - y.exp_);
    return MAdic(std::move(n), e, x.base_);
  }
  friend MAdic operator-(const MAdic& x, const MAdic& y) { return x + (-y); }
  MAdic operator-() const { return MAdic(-num_, exp_, base_); }

  friend MAdic operator*(const MAdic& x, const MAdic& y) {
    x.check_base(y);
    return MAdic(x.num_ * y.num_, x.exp_ + y.exp_, x.base_);
  }

  // Multiply by base^k (k of either sign).
  MAdic scaled_by_power(int k) const {
    if (k >= 0) {
      int drop = std::min(k, exp_);
      return MAdic(num_ * pow_base(base_, k - drop), exp_ - drop, base_);
    }
    return MAdic(num_, exp_ - k, base_);
  }

  friend bool operator==(const MAdic& x, const MAdic& y) {
    return x.base_ == y.base_ && x.exp_ == y.exp_ && x.num_ == y.num_;
  }

  Rat rational() const { return Rat(num_, pow_base(base_, exp_)); }

  std::string str() const {
    std::ostringstream os;
    if (exp_ == 0)
      os << num_;
    else
      os << num_ << '/' << base_ << '^' << exp_;
    return os.str();
  }

 private:
  static Int pow_base(int base, int k) {
    Int r = 1;
    for (int i = 0; i < k; ++i) r *= base;
    return r;
  }
  void check_base(const MAdic& o) const {
    if (base_ != o.base_) throw std::invalid_argument("MAdic: base mismatch");
  }
  void canonicalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && num_ % base_ == 0) {
      num_ /= base_;
      --exp_;
    }
  }

  Int num_;
  int exp_;
  int base_;
};

// Normal form alpha^i beta^l of BS(1,m) = <alpha, beta | alpha beta
// alpha^-1 = beta^m>, with l in Z[1/m]. Multiplication follows from
// beta^l alpha^j = alpha^j beta^(l m^-j).
struct BSElement {
  long long alpha = 0;
  MAdic beta;

  static BSElement identity(int base) { return {0, MAdic::zero(base)}; }
  static BSElement alpha_pow(long long i, int base) {
    return {i, MAdic::zero(base)};
  }
  static BSElement beta_pow(MAdic l) { return {0, std::move(l)}; }

  int base() const { return beta.base(); }
  bool is_identity() const { return alpha == 0 && beta.is_zero(); }

  friend BSElement operator*(const BSElement& g, const BSElement& h) {
    if (g.base() != h.base())
      throw std::invalid_argument("BSElement: base mismatch");
    return {g.alpha + h.alpha,
            g.beta.scaled_by_power(static_cast<int>(-h.alpha)) + h.beta};
  }

  BSElement inverse() const {
    return {-alpha, (-beta).scaled_by_power(static_cast<int>(alpha))};
  }

  friend bool operator==(const BSElement&, const BSElement&) = default;

  // Exact membership in <alpha>: the normal form has beta part zero.
  std::optional<long long> in_alpha() const {
    if (beta.is_zero()) return alpha;
    return std::nullopt;
  }

  std::string str() const {
    std::ostringstream os;
    os << "a^" << alpha << " b^(" << beta.str() << ")";
    return os.str();
  }
};

inline std::optional<long long> bs_in_alpha(const BSElement& g) {
  return g.in_alpha();
}

// Folds a word over letters a (alpha) and b (beta) into normal form.
inline BSElement bs_normal_form(const Word& w, int base) {
  BSElement acc = BSElement::identity(base);
  for (const auto& l : w.letters()) {
    if (l.indexed)
      throw std::invalid_argument("bs_normal_form: expected letters a, b");
    BSElement g;
    if (l.sym == 'a')
      g = BSElement::alpha_pow(l.sign, base);
    else if (l.sym == 'b')
      g = BSElement::beta_pow(MAdic::integer(l.sign, base));
    else
      throw std::invalid_argument("bs_normal_form: expected letters a, b");
    acc = acc * g;
  }
  return acc;
}

}  // namespace onerel
