#pragma once

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace onerel {

// A letter is a signed generator: either a named one (t, a, b) or an
// indexed one a[n], n in Z. Words never mix the two alphabets.
struct Letter {
  char sym = 'a';
  int index = 0;
  bool indexed = false;
  int sign = +1;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;

  Letter inverse() const {
    Letter l = *this;
    l.sign = -l.sign;
    return l;
  }
  bool cancels(const Letter& o) const {
    return sym == o.sym && indexed == o.indexed && index == o.index &&
           sign == -o.sign;
  }
};

inline Letter named_letter(char sym, int sign = +1) {
  return Letter{sym, 0, false, sign};
}
inline Letter indexed_letter(int n, int sign = +1) {
  return Letter{'a', n, true, sign};
}

enum class Alphabet { none, named, indexed };

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Free-group word as a letter sequence. Values are immutable in spirit:
// operations return new words. Not automatically reduced; reduce() is
// explicit so callers control when cancellation happens.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    check_uniform();
  }

  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  Alphabet alphabet() const {
    if (letters_.empty()) return Alphabet::none;
    return letters_.front().indexed ? Alphabet::indexed : Alphabet::named;
  }
  bool is_indexed() const { return alphabet() == Alphabet::indexed; }

  bool compatible_with(const Word& o) const {
    return alphabet() == Alphabet::none || o.alphabet() == Alphabet::none ||
           alphabet() == o.alphabet();
  }

  Word inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      out.push_back(it->inverse());
    Word w;
    w.letters_ = std::move(out);
    return w;
  }

  // Raw concatenation, no reduction.
  friend Word concat(const Word& u, const Word& v) {
    if (!u.compatible_with(v))
      throw std::invalid_argument("concat: mixed alphabets");
    Word w;
    w.letters_.reserve(u.size() + v.size());
    w.letters_ = u.letters_;
    w.letters_.insert(w.letters_.end(), v.letters_.begin(), v.letters_.end());
    return w;
  }

  Word pow(int k) const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  void check_uniform() const {
    if (letters_.empty()) return;
    bool idx = letters_.front().indexed;
    for (const auto& l : letters_)
      if (l.indexed != idx)
        throw std::invalid_argument("word mixes named and indexed alphabets");
  }
  std::vector<Letter> letters_;
};

// Free reduction: cancel adjacent inverse pairs until none remain. The
// result is the unique reduced form of the same free-group element.
inline Word reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const auto& l : w.letters()) {
    if (!stack.empty() && stack.back().cancels(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

// Group multiplication on reduced representatives.
inline Word operator*(const Word& u, const Word& v) {
  return reduce(concat(u, v));
}

inline Word Word::pow(int k) const {
  Word base = k >= 0 ? *this : inverse();
  int n = std::abs(k);
  Word out;
  for (int i = 0; i < n; ++i) out = concat(out, base);
  return reduce(out);
}

// Splits reduced w as conjugator * core * conjugator^-1 with core
// cyclically reduced.
inline std::pair<Word, Word> cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t i = 0, j = ls.size();
  while (j >= i + 2 && ls[i].cancels(ls[j - 1])) {
    ++i;
    --j;
  }
  Word conj(std::vector<Letter>(ls.begin(), ls.begin() + i));
  Word core(std::vector<Letter>(ls.begin() + i, ls.begin() + j));
  return {conj, core};
}

inline bool is_cyclically_reduced(const Word& w) {
  if (w.size() < 2) return reduce(w) == w;
  return reduce(w) == w && !w.letters().front().cancels(w.letters().back());
}

// Cyclic permutation by k letters; rotations of a cyclically reduced word
// stay cyclically reduced.
inline Word rotate_word(const Word& w, int k) {
  const auto& ls = w.letters();
  if (ls.empty()) return w;
  int n = static_cast<int>(ls.size());
  k = ((k % n) + n) % n;
  std::vector<Letter> out;
  out.reserve(ls.size());
  for (int i = 0; i < n; ++i) out.push_back(ls[(i + k) % n]);
  return Word(std::move(out));
}

// Index translation a[n] -> a[n+k]; the shift automorphism of the
// indexed free group.
inline Word shift(const Word& w, int k) {
  if (w.alphabet() == Alphabet::named)
    throw std::invalid_argument("shift: word is not over the indexed alphabet");
  std::vector<Letter> out = w.letters();
  for (auto& l : out) l.index += k;
  return Word(std::move(out));
}

inline int exponent_sum(const Word& w, char sym) {
  int s = 0;
  for (const auto& l : w.letters())
    if (!l.indexed && l.sym == sym) s += l.sign;
  return s;
}

inline int t_exponent_sum(const Word& w) { return exponent_sum(w, 't'); }
inline int a_exponent_sum(const Word& w) { return exponent_sum(w, 'a'); }

inline std::optional<int> min_index(const Word& w) {
  std::optional<int> m;
  for (const auto& l : w.letters())
    if (l.indexed && (!m || l.index < *m)) m = l.index;
  return m;
}

inline std::optional<int> max_index(const Word& w) {
  std::optional<int> m;
  for (const auto& l : w.letters())
    if (l.indexed && (!m || l.index > *m)) m = l.index;
  return m;
}

// Rewrites a zero-t-sum word over {t,a} into the indexed alphabet: while
// scanning, an a^e seen at running t-level k becomes a[k]^e. This is the
// embedding a[n] = t^n a t^-n restricted to the kernel of the t-count.
inline Word magnus_rewrite(const Word& w) {
  if (w.alphabet() == Alphabet::indexed)
    throw std::invalid_argument("magnus_rewrite: input already indexed");
  if (t_exponent_sum(w) != 0)
    throw std::invalid_argument("magnus_rewrite: nonzero t-exponent sum");
  int level = 0;
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    if (l.sym == 't') {
      level += l.sign;
    } else if (l.sym == 'a') {
      out.push_back(indexed_letter(level, l.sign));
    } else {
      throw std::invalid_argument("magnus_rewrite: word not over {t,a}");
    }
  }
  return reduce(Word(std::move(out)));
}

// Inverse direction: substitute a[n]^e -> t^n a^e t^-n and reduce.
inline Word unrewrite(const Word& w) {
  if (w.alphabet() == Alphabet::named)
    throw std::invalid_argument("unrewrite: input is not indexed");
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    for (int i = 0; i < l.index; ++i) out.push_back(named_letter('t'));
    for (int i = 0; i > l.index; --i) out.push_back(named_letter('t', -1));
    out.push_back(named_letter('a', l.sign));
    for (int i = 0; i < l.index; ++i) out.push_back(named_letter('t', -1));
    for (int i = 0; i > l.index; --i) out.push_back(named_letter('t'));
  }
  return reduce(Word(std::move(out)));
}

// ---- text form ----------------------------------------------------------
//
// word  := "1" | term (' ' term)*
// term  := gen ('^' int)?
// gen   := 't' | 'a' | 'b' | 'a[' int ']'
//
// Canonical output groups maximal runs of one letter into an exponent and
// omits ^1.

namespace detail {

inline int parse_int(std::string_view s, std::string_view ctx) {
  if (s.empty()) throw parse_error("empty integer in " + std::string(ctx));
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) throw parse_error("bad integer in " + std::string(ctx));
  long v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw parse_error("bad integer '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > 1000000) throw parse_error("integer out of range");
  }
  return s[0] == '-' ? -static_cast<int>(v) : static_cast<int>(v);
}

}  // namespace detail

inline Word Word::parse(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > start) tokens.push_back(text.substr(start, pos - start));
  }
  if (tokens.size() == 1 && tokens[0] == "1") return Word();
  std::vector<Letter> out;
  for (auto tok : tokens) {
    std::string_view gen = tok;
    int exp = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      gen = tok.substr(0, caret);
      exp = detail::parse_int(tok.substr(caret + 1), "exponent");
    }
    Letter base;
    if (gen == "t" || gen == "a" || gen == "b") {
      base = named_letter(gen[0]);
    } else if (gen.size() >= 4 && gen.substr(0, 2) == "a[" && gen.back() == ']') {
      base = indexed_letter(detail::parse_int(gen.substr(2, gen.size() - 3), "index"));
    } else {
      throw parse_error("bad generator '" + std::string(tok) + "'");
    }
    if (exp < 0) base = base.inverse();
    for (int i = 0; i < std::abs(exp); ++i) out.push_back(base);
  }
  Word w;
  try {
    w = Word(std::move(out));
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
  return w;
}

inline std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    int exp = static_cast<int>(j - i) * letters_[i].sign;
    if (!first) os << ' ';
    first = false;
    if (letters_[i].indexed)
      os << "a[" << letters_[i].index << ']';
    else
      os << letters_[i].sym;
    if (exp != 1) os << '^' << exp;
    i = j;
  }
  return os.str();
}

}  // namespace onerel
