#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "onerel/bsarith.hpp"
#include "onerel/words.hpp"

namespace onerel {

// Integer Laurent polynomial in t. Normalized form has minimal exponent 0
// and positive lowest coefficient, which fixes the unit ambiguity of
// Alexander polynomials.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  void add_term(int exp, const Int& coeff) {
    if (coeff == 0) return;
    auto it = coeffs_.find(exp);
    if (it == coeffs_.end()) {
      coeffs_.emplace(exp, coeff);
    } else {
      it->second += coeff;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  bool zero() const { return coeffs_.empty(); }
  const std::map<int, Int>& terms() const { return coeffs_; }

  int min_exp() const { return coeffs_.begin()->first; }
  int max_exp() const { return coeffs_.rbegin()->first; }

  LaurentPoly normalized() const {
    LaurentPoly out;
    if (zero()) return out;
    int lo = min_exp();
    int flip = coeffs_.begin()->second < 0 ? -1 : 1;
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e - lo, c * flip);
    return out;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string str() const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
      if (!first) os << (c > 0 ? " + " : " - ");
      if (first && c < 0) os << '-';
      first = false;
      Int ac = c < 0 ? Int(-c) : c;
      if (ac != 1 || e == 0) os << ac;
      if (e != 0) {
        if (ac != 1) os << '*';
        os << 't';
        if (e != 1) os << '^' << e;
      }
    }
    return os.str();
  }

 private:
  std::map<int, Int> coeffs_;
};

// Alexander polynomial of a zero-t-sum one-relator presentation, read off
// the indexed relator: each occurrence a[i]^e contributes e*t^i. For
// two-generator presentations this is the abelianized Fox derivative
// d(r)/d(a) under a -> 1, t -> t, so it matches the usual definition up
// to units; the normalization then pins the unit.
inline LaurentPoly alexander_poly(const Word& indexed_relator) {
  if (indexed_relator.empty())
    throw std::invalid_argument("alexander_poly: empty relator");
  if (indexed_relator.alphabet() != Alphabet::indexed)
    throw std::invalid_argument("alexander_poly: relator must be indexed");
  LaurentPoly p;
  for (const auto& l : indexed_relator.letters()) p.add_term(l.index, l.sign);
  return p.normalized();
}

namespace sturm {

using Poly = std::vector<Rat>;  // coefficient of degree i at index i

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(i));
  return d;
}

inline Poly remainder(Poly a, const Poly& b) {
  while (degree(a) >= degree(b) && !a.empty()) {
    Rat f = a.back() / b.back();
    int shiftd = degree(a) - degree(b);
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shiftd] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Rat eval(const Poly& p, const Rat& x) {
  Rat r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

inline int sign(const Rat& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }

inline Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Poly divide_exact(const Poly& a, const Poly& b) {
  Poly q(a.size(), Rat(0));
  Poly r = a;
  while (degree(r) >= degree(b) && !r.empty()) {
    Rat f = r.back() / b.back();
    int d = degree(r) - degree(b);
    q[d] = f;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + d] -= f * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
  return q;
}

inline Poly square_free_part(const Poly& p) {
  Poly g = gcd(p, derivative(p));
  if (degree(g) < 1) return p;
  return divide_exact(p, g);
}

inline std::vector<Poly> chain(const Poly& p) {
  std::vector<Poly> out;
  out.push_back(p);
  Poly d = derivative(p);
  trim(d);
  if (!d.empty()) out.push_back(d);
  while (out.size() >= 2) {
    Poly r = remainder(out[out.size() - 2], out.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    out.push_back(std::move(r));
  }
  return out;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Number of distinct real roots in (0, inf), exact over Q.
inline int count_positive_roots(const Poly& p0) {
  Poly p = square_free_part(p0);
  trim(p);
  if (degree(p) < 1) return 0;
  auto seq = chain(p);
  std::vector<int> at_zero, at_inf;
  for (const auto& q : seq) {
    // sign at 0+: lowest nonzero coefficient
    int s0 = 0;
    for (const auto& c : q)
      if (c != 0) {
        s0 = sign(c);
        break;
      }
    at_zero.push_back(s0);
    at_inf.push_back(q.empty() ? 0 : sign(q.back()));
  }
  return variations(at_zero) - variations(at_inf);
}

}  // namespace sturm

inline sturm::Poly to_dense(const LaurentPoly& p) {
  LaurentPoly n = p.normalized();
  sturm::Poly out(n.zero() ? 0 : n.max_exp() + 1, Rat(0));
  for (const auto& [e, c] : n.terms()) out[e] = Rat(c);
  return out;
}

// Exact count of distinct real roots of p in (0, inf). Normalization puts
// the lowest exponent at 0, so the Laurent unit t^k never adds roots.
inline int positive_real_root_count(const LaurentPoly& p) {
  if (p.zero())
    throw std::invalid_argument("positive_real_root_count: zero polynomial");
  return sturm::count_positive_roots(to_dense(p));
}

// Descartes bound: sign variations of the coefficient sequence. Zero
// variations certify zero positive roots.
inline int descartes_positive_bound(const LaurentPoly& p) {
  if (p.zero())
    throw std::invalid_argument("descartes_positive_bound: zero polynomial");
  std::vector<int> signs;
  for (const auto& [e, c] : p.terms())
    signs.push_back(c < 0 ? -1 : 1);
  return sturm::variations(signs);
}

}  // namespace onerel
