#pragma once

#include <memory>
#include <string>
#include <vector>

#include "onerel/tower.hpp"

namespace onerel {

// A group with a decidable-enough word problem: generators for word
// enumeration plus a triviality verdict. Oracles over the indexed
// alphabet additionally carry the shift action.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Letter> generators() const = 0;
  virtual bool has_shift() const { return false; }
  virtual Verdict is_trivial(const Word& w) = 0;
};

class FreeOracle : public GroupOracle {
 public:
  explicit FreeOracle(std::vector<char> gens = {'t', 'a'}) : gens_(std::move(gens)) {}
  std::string name() const override { return "free" + std::to_string(gens_.size()); }
  std::vector<Letter> generators() const override {
    std::vector<Letter> out;
    for (char g : gens_) out.push_back(named_letter(g));
    return out;
  }
  Verdict is_trivial(const Word& w) override {
    return reduce(w).empty() ? Verdict::trivial : Verdict::nontrivial;
  }

 private:
  std::vector<char> gens_;
};

// Klein bottle group <a, b | b a b^-1 = a^-1>, normal form b^q a^p with
// (q1,p1)(q2,p2) = (q1+q2, p1*(-1)^q2 + p2).
class KleinOracle : public GroupOracle {
 public:
  std::string name() const override { return "klein"; }
  std::vector<Letter> generators() const override {
    return {named_letter('a'), named_letter('b')};
  }
  Verdict is_trivial(const Word& w) override {
    long long q = 0, p = 0;
    for (const auto& l : w.letters()) {
      if (l.indexed) throw std::invalid_argument("klein: expected letters a, b");
      if (l.sym == 'a') {
        p += l.sign;
      } else if (l.sym == 'b') {
        q += l.sign;
        p = -p;
      } else {
        throw std::invalid_argument("klein: expected letters a, b");
      }
    }
    return (q == 0 && p == 0) ? Verdict::trivial : Verdict::nontrivial;
  }
};

class BSOracle : public GroupOracle {
 public:
  explicit BSOracle(int m) : m_(m) {}
  std::string name() const override { return "bs1" + std::to_string(m_); }
  std::vector<Letter> generators() const override {
    return {named_letter('a'), named_letter('b')};
  }
  Verdict is_trivial(const Word& w) override {
    return bs_normal_form(w, m_).is_identity() ? Verdict::trivial
                                               : Verdict::nontrivial;
  }

 private:
  int m_;
};

// Gamma_W over {t, a}; shifts are subsumed by t-conjugation, so the
// oracle exposes no shift action of its own.
class GammaOracle : public GroupOracle {
 public:
  explicit GammaOracle(TowerParams params, int membership_bound = 64)
      : engine_(std::move(params), membership_bound) {}
  std::string name() const override { return "gamma"; }
  std::vector<Letter> generators() const override {
    return {named_letter('t'), named_letter('a')};
  }
  Verdict is_trivial(const Word& w) override {
    return engine_.is_trivial_in_gamma(w);
  }
  TowerEngine& engine() { return engine_; }

 private:
  TowerEngine engine_;
};

// The normal subgroup H over the indexed alphabet, with the genuine shift
// action; words are decided at the level of their support window.
class HLevelOracle : public GroupOracle {
 public:
  HLevelOracle(TowerParams params, int window, int membership_bound = 64)
      : engine_(std::move(params), membership_bound), window_(window) {}
  std::string name() const override { return "h"; }
  std::vector<Letter> generators() const override {
    std::vector<Letter> out;
    for (int i = 0; i <= window_; ++i) out.push_back(indexed_letter(i));
    return out;
  }
  bool has_shift() const override { return true; }
  Verdict is_trivial(const Word& w0) override {
    Word w = reduce(w0);
    if (w.empty()) return Verdict::trivial;
    w = shift(w, -*min_index(w));
    return engine_.is_trivial(w, *max_index(w));
  }
  TowerEngine& engine() { return engine_; }

 private:
  TowerEngine engine_;
  int window_;
};

}  // namespace onerel
