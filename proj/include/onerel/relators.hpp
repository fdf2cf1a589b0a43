#pragma once

#include <string>
#include <string_view>

#include "onerel/words.hpp"

namespace onerel {

// Parameters (s, m, W) of the one-relator group built from the relator
// family R_j = a[j+s] (W_j a[j+s+1]) a[j+s]^-1 (W_j a[j+s+1])^-m, where
// W is a positive word over a[0..s-1] and W_j its shift by j.
struct TowerParams {
  int s = 1;
  int m = 2;
  Word w;

  friend bool operator==(const TowerParams&, const TowerParams&) = default;
};

inline void validate_positive_word(const Word& w) {
  if (w.empty()) throw std::invalid_argument("W must be nonempty");
  if (w.alphabet() != Alphabet::indexed)
    throw std::invalid_argument("W must be over the indexed alphabet");
  for (const auto& l : w.letters())
    if (l.sign != +1) throw std::invalid_argument("W must be a positive word");
}

inline bool is_canonical(const TowerParams& p) {
  if (p.s < 1 || p.m < 2 || p.w.empty()) return false;
  auto lo = min_index(p.w), hi = max_index(p.w);
  return lo && *lo == 0 && hi && *hi == p.s - 1;
}

// Shift W so its least index is 0 and shrink s to 1 + max index. The
// tower's free base levels need W to touch both ends of its window, and
// narrowing (s, W) achieves that without rejecting slack input.
inline TowerParams canonicalize(const TowerParams& p) {
  validate_positive_word(p.w);
  if (p.m < 2) throw std::invalid_argument("m must be >= 2");
  if (p.s < 1) throw std::invalid_argument("s must be >= 1");
  auto lo = min_index(p.w);
  Word w = shift(p.w, -*lo);
  TowerParams out{1 + *max_index(w), p.m, w};
  return out;
}

// R_j, reduced, using exactly the index window [j, j+s+1].
inline Word build_relator(const TowerParams& p, int j) {
  if (!is_canonical(p)) throw std::invalid_argument("params not canonical");
  Word wj = shift(p.w, j);
  Word head(std::vector<Letter>{indexed_letter(j + p.s)});
  Word body = concat(wj, Word(std::vector<Letter>{indexed_letter(j + p.s + 1)}));
  Word rel = concat(concat(head, body), head.inverse());
  rel = concat(rel, body.pow(-p.m));
  return reduce(rel);
}

struct GammaPresentation {
  TowerParams params;
  Word relator;  // over {t,a}, reduced
  Word left;     // L with relator = L * R^-1
  Word right;    // R
};

// The one-relator presentation <t, a | r> with r = unrewrite(R_0).
inline GammaPresentation build_gamma_presentation(const TowerParams& p) {
  if (!is_canonical(p)) throw std::invalid_argument("params not canonical");
  Word wj = p.w;
  Word head(std::vector<Letter>{indexed_letter(p.s)});
  Word body = concat(wj, Word(std::vector<Letter>{indexed_letter(p.s + 1)}));
  Word left = reduce(concat(concat(head, body), head.inverse()));
  Word right = body.pow(p.m);
  GammaPresentation g;
  g.params = p;
  g.left = unrewrite(left);
  g.right = unrewrite(right);
  g.relator = reduce(concat(g.left, g.right.inverse()));
  return g;
}

// CLI parameter syntax: s,m,"<positive indexed word>" (quotes optional).
inline TowerParams parse_params(std::string_view text) {
  auto c1 = text.find(',');
  auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
  if (c2 == std::string_view::npos)
    throw parse_error("params must be s,m,\"<word>\"");
  int s = detail::parse_int(text.substr(0, c1), "s");
  int m = detail::parse_int(text.substr(c1 + 1, c2 - c1 - 1), "m");
  std::string_view wtext = text.substr(c2 + 1);
  while (!wtext.empty() && (wtext.front() == '"' || wtext.front() == ' '))
    wtext.remove_prefix(1);
  while (!wtext.empty() && (wtext.back() == '"' || wtext.back() == ' '))
    wtext.remove_suffix(1);
  TowerParams p{s, m, Word::parse(wtext)};
  validate_positive_word(p.w);
  if (p.m < 2) throw parse_error("m must be >= 2");
  if (p.s < 1) throw parse_error("s must be >= 1");
  auto hi = max_index(p.w);
  auto lo = min_index(p.w);
  if (*lo < 0 || *hi > p.s - 1)
    throw parse_error("W must use indices within [0, s-1]");
  return canonicalize(p);
}

}  // namespace onerel
