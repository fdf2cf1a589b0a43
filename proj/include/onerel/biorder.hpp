#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "onerel/tower.hpp"
#include "onerel/words.hpp"

namespace onerel {

// ---- presentations, atoms, rule catalog ---------------------------------

struct Atom {
  std::string name;
  Word word;
};

struct OrderPresentation {
  std::string name;
  std::vector<char> generators;
  std::vector<Word> relators;
  // When the single relator comes as a relation L = R, keeping the sides
  // lets certificates display the contradiction chains the way the
  // relation is written.
  std::optional<std::pair<Word, Word>> sides;
};

using TrivialityOracle = std::function<Verdict(const Word&)>;

// Positive-cone derivation rules. Every step asserts "output is in P".
//   hyp : a case assumption of the current branch
//   R1  : u, v in P  =>  uv in P
//   R2  : u in P     =>  h u h^-1 in P          (any conjugator word h)
//   R3  : rewriting by a relator: insert a rotation of the cyclically
//         reduced relator (or its inverse) anywhere, then reduce
//   R5  : u in P     =>  u^n in P, n >= 1
// Transitivity (R4 of the catalog) is the encoding itself: u < v < w
// chains are composed with R1, so no separate rule is needed.
struct DerivStep {
  enum class Rule { hyp, product, conjugate, relator, power };
  Rule rule = Rule::hyp;
  Word output;
  int in1 = -1;
  int in2 = -1;
  Word conjugator;       // R2
  int power = 1;         // R5
  int relator_index = 0; // R3
  int rotation = 0;      // R3: rotation of the cyclically reduced relator
  bool inverted = false; // R3: use the inverse relator
  int position = 0;      // R3: insertion position
};

inline const char* rule_name(DerivStep::Rule r) {
  switch (r) {
    case DerivStep::Rule::hyp: return "hyp";
    case DerivStep::Rule::product: return "R1";
    case DerivStep::Rule::conjugate: return "R2";
    case DerivStep::Rule::relator: return "R3";
    case DerivStep::Rule::power: return "R5";
  }
  return "?";
}

struct Derivation {
  enum class Contra { one_in_p, inverse_pair };
  std::vector<DerivStep> steps;
  Contra contra = Contra::one_in_p;
  int s1 = -1;  // step with empty output, or first of the pair
  int s2 = -1;  // second of the pair
};

inline Word relator_sigma(const Word& relator_cyc, int rotation, bool inverted) {
  Word base = inverted ? relator_cyc.inverse() : relator_cyc;
  return rotate_word(base, rotation);
}

// Recomputes the output of one derivation step; nullopt when the step is
// not an instance of its rule. `prior` holds the outputs of earlier steps.
inline std::optional<Word> apply_step(const DerivStep& s,
                                      const std::vector<Word>& prior,
                                      const std::vector<Word>& relator_cycs,
                                      const std::vector<Word>& hypotheses) {
  auto in_range = [&](int i) { return i >= 0 && i < static_cast<int>(prior.size()); };
  switch (s.rule) {
    case DerivStep::Rule::hyp: {
      Word w = reduce(s.output);
      if (w.empty()) return std::nullopt;
      for (const auto& h : hypotheses)
        if (reduce(h) == w) return w;
      return std::nullopt;
    }
    case DerivStep::Rule::product:
      if (!in_range(s.in1) || !in_range(s.in2)) return std::nullopt;
      return reduce(concat(prior[s.in1], prior[s.in2]));
    case DerivStep::Rule::conjugate:
      if (!in_range(s.in1)) return std::nullopt;
      return reduce(concat(concat(s.conjugator, prior[s.in1]),
                           s.conjugator.inverse()));
    case DerivStep::Rule::power:
      if (!in_range(s.in1) || s.power < 1) return std::nullopt;
      return prior[s.in1].pow(s.power);
    case DerivStep::Rule::relator: {
      if (!in_range(s.in1)) return std::nullopt;
      if (s.relator_index < 0 ||
          s.relator_index >= static_cast<int>(relator_cycs.size()))
        return std::nullopt;
      const Word& rc = relator_cycs[s.relator_index];
      if (rc.empty()) return std::nullopt;
      if (s.rotation < 0 || s.rotation >= static_cast<int>(rc.size()))
        return std::nullopt;
      const Word& w = prior[s.in1];
      if (s.position < 0 || s.position > static_cast<int>(w.size()))
        return std::nullopt;
      Word sigma = relator_sigma(rc, s.rotation, s.inverted);
      std::vector<Letter> out(w.letters().begin(),
                              w.letters().begin() + s.position);
      for (const auto& l : sigma.letters()) out.push_back(l);
      for (std::size_t i = s.position; i < w.size(); ++i)
        out.push_back(w.letters()[i]);
      return reduce(Word(std::move(out)));
    }
  }
  return std::nullopt;
}

inline std::vector<Word> cyclic_relators(const std::vector<Word>& relators) {
  std::vector<Word> out;
  for (const auto& r : relators) out.push_back(cyclic_reduce(reduce(r)).second);
  return out;
}

// ---- certificates --------------------------------------------------------

struct CertNode {
  enum class Kind { split, leaf, oracle_leaf, substitute };
  Kind kind = Kind::leaf;
  Word element;        // split / oracle_leaf / substitute
  std::string label;   // display name of the split element
  std::unique_ptr<CertNode> pos, neg, eq;  // split
  Derivation derivation;                   // leaf
  std::vector<Word> chain;                 // leaf: display chain (may be empty)
  std::unique_ptr<CertNode> child;         // substitute
};

struct ProveStats {
  long leaves = 0;
  long chain_nodes = 0;
  long saturate_attempts = 0;
};

struct Certificate {
  OrderPresentation presentation;
  std::vector<Atom> atoms;
  std::unique_ptr<CertNode> root;
  ProveStats stats;
};

struct CheckResult {
  bool valid = true;
  int step = -1;
  std::string reason;

  static CheckResult ok() { return {}; }
  static CheckResult bad(int step, std::string reason) {
    return {false, step, std::move(reason)};
  }
};

// Replays a derivation against the rule catalog under the given case
// hypotheses. Independent of how the derivation was found.
inline CheckResult check_derivation(const Derivation& d,
                                    const std::vector<Word>& relator_cycs,
                                    const std::vector<Word>& hypotheses) {
  if (d.steps.empty()) return CheckResult::bad(0, "empty derivation");
  std::vector<Word> outputs;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    if (s.in1 >= static_cast<int>(i) || s.in2 >= static_cast<int>(i))
      return CheckResult::bad(static_cast<int>(i), "forward reference");
    auto expect = apply_step(s, outputs, relator_cycs, hypotheses);
    if (!expect)
      return CheckResult::bad(static_cast<int>(i), "not a rule instance");
    if (*expect != reduce(s.output))
      return CheckResult::bad(static_cast<int>(i), "recorded output mismatch");
    outputs.push_back(*expect);
  }
  auto in_range = [&](int i) {
    return i >= 0 && i < static_cast<int>(outputs.size());
  };
  if (d.contra == Derivation::Contra::one_in_p) {
    if (!in_range(d.s1) || !outputs[d.s1].empty())
      return CheckResult::bad(d.s1, "claimed 1-in-P step is not empty");
  } else {
    if (!in_range(d.s1) || !in_range(d.s2) ||
        reduce(concat(outputs[d.s1], outputs[d.s2])) != Word())
      return CheckResult::bad(d.s1, "claimed pair is not inverse");
  }
  return CheckResult::ok();
}

inline CheckResult check_node(const CertNode& node,
                              std::vector<Word>& hypotheses,
                              std::vector<Word>& relator_cycs,
                              const TrivialityOracle& oracle) {
  switch (node.kind) {
    case CertNode::Kind::leaf:
      return check_derivation(node.derivation, relator_cycs, hypotheses);
    case CertNode::Kind::oracle_leaf: {
      if (reduce(node.element).empty())
        return CheckResult::bad(-1, "oracle leaf on the empty word");
      if (oracle(node.element) != Verdict::nontrivial)
        return CheckResult::bad(-1, "oracle does not refute the equality");
      return CheckResult::ok();
    }
    case CertNode::Kind::substitute: {
      if (!node.child) return CheckResult::bad(-1, "substitute without child");
      if (oracle(node.element) != Verdict::trivial)
        return CheckResult::bad(-1, "substituted element is not trivial");
      relator_cycs.push_back(cyclic_reduce(reduce(node.element)).second);
      auto r = check_node(*node.child, hypotheses, relator_cycs, oracle);
      relator_cycs.pop_back();
      return r;
    }
    case CertNode::Kind::split: {
      if (!node.pos || !node.neg || !node.eq)
        return CheckResult::bad(-1, "split does not cover the trichotomy");
      Word g = reduce(node.element);
      if (g.empty()) return CheckResult::bad(-1, "split on the empty word");
      hypotheses.push_back(g);
      auto r = check_node(*node.pos, hypotheses, relator_cycs, oracle);
      hypotheses.pop_back();
      if (!r.valid) return r;
      hypotheses.push_back(g.inverse());
      r = check_node(*node.neg, hypotheses, relator_cycs, oracle);
      hypotheses.pop_back();
      if (!r.valid) return r;
      if (node.eq->kind != CertNode::Kind::oracle_leaf &&
          node.eq->kind != CertNode::Kind::substitute)
        return CheckResult::bad(-1, "equality branch must go to the oracle");
      if (reduce(node.eq->element) != g)
        return CheckResult::bad(-1, "equality branch element mismatch");
      return check_node(*node.eq, hypotheses, relator_cycs, oracle);
    }
  }
  return CheckResult::bad(-1, "unknown node kind");
}

inline CheckResult check_certificate(const Certificate& cert,
                                     const OrderPresentation& pres,
                                     const TrivialityOracle& oracle) {
  if (!cert.root) return CheckResult::bad(-1, "empty certificate");
  std::vector<Word> hyps;
  std::vector<Word> cycs = cyclic_relators(pres.relators);
  return check_node(*cert.root, hyps, cycs, oracle);
}

// ---- saturation ----------------------------------------------------------

struct SaturateOptions {
  std::vector<Word> conjugators;  // R2 conjugator set
  long max_facts = 20000;
  long max_attempts = 200000;
  int max_word_len = 24;  // finite fact universe => fixpoints exist
  int power_max = 3;
};

enum class SatOutcome { contradiction, stable, budget };

struct SaturateResult {
  SatOutcome outcome = SatOutcome::stable;
  Derivation derivation;
  long facts = 0;
  long attempts = 0;
};

namespace detail_biorder {

struct StoreFact {
  Word w;
  DerivStep how;  // in1/in2 reference store indices
};

// Extracts a replayable derivation for `final_step` (whose inputs
// reference store indices), pulling in the ancestor facts it needs.
inline Derivation assemble(const std::vector<StoreFact>& store,
                           DerivStep final_step, int pair_with = -1) {
  std::vector<int> needed;
  std::vector<char> mark(store.size(), 0);
  auto require = [&](auto&& self, int id) -> void {
    if (id < 0 || mark[id]) return;
    mark[id] = 1;
    const auto& how = store[id].how;
    self(self, how.in1);
    self(self, how.in2);
    needed.push_back(id);
  };
  require(require, final_step.in1);
  require(require, final_step.in2);
  require(require, pair_with);
  std::sort(needed.begin(), needed.end());
  std::map<int, int> remap;
  Derivation d;
  for (int id : needed) {
    DerivStep s = store[id].how;
    if (s.in1 >= 0) s.in1 = remap.at(s.in1);
    if (s.in2 >= 0) s.in2 = remap.at(s.in2);
    remap[id] = static_cast<int>(d.steps.size());
    d.steps.push_back(std::move(s));
  }
  if (final_step.in1 >= 0) final_step.in1 = remap.at(final_step.in1);
  if (final_step.in2 >= 0) final_step.in2 = remap.at(final_step.in2);
  d.steps.push_back(std::move(final_step));
  if (pair_with >= 0) {
    d.contra = Derivation::Contra::inverse_pair;
    d.s1 = static_cast<int>(d.steps.size()) - 1;
    d.s2 = remap.at(pair_with);
  } else {
    d.contra = Derivation::Contra::one_in_p;
    d.s1 = static_cast<int>(d.steps.size()) - 1;
  }
  return d;
}

}  // namespace detail_biorder

// Forward-chains the rule catalog from the given facts, breadth-first by
// word length. Facts longer than max_word_len are discarded, which keeps
// the universe finite; exhausting it without contradiction is reported as
// a genuine fixpoint, running out of budget is reported as budget.
inline SaturateResult saturate(const std::vector<Word>& start_facts,
                               const std::vector<Word>& relators,
                               const SaturateOptions& opts) {
  using detail_biorder::StoreFact;
  std::vector<Word> cycs = cyclic_relators(relators);
  std::vector<StoreFact> store;
  std::map<Word, int> index;
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                      std::greater<>>
      agenda;
  SaturateResult res;
  std::optional<Derivation> contra;

  auto push = [&](const Word& raw, DerivStep how) {
    if (contra) return;
    ++res.attempts;
    Word w = reduce(raw);
    how.output = w;
    if (w.empty()) {
      contra = detail_biorder::assemble(store, std::move(how));
      return;
    }
    if (static_cast<int>(w.size()) > opts.max_word_len) return;
    if (index.count(w)) return;
    if (auto it = index.find(w.inverse()); it != index.end()) {
      contra = detail_biorder::assemble(store, std::move(how), it->second);
      return;
    }
    int id = static_cast<int>(store.size());
    store.push_back({w, std::move(how)});
    index.emplace(w, id);
    agenda.emplace(static_cast<int>(w.size()), id);
  };

  for (const auto& f : start_facts) {
    DerivStep s;
    s.rule = DerivStep::Rule::hyp;
    s.output = reduce(f);
    push(f, s);
    if (contra) break;
  }

  auto over_budget = [&] {
    return res.attempts > opts.max_attempts ||
           static_cast<long>(store.size()) > opts.max_facts;
  };

  while (!contra && !agenda.empty() && !over_budget()) {
    auto [len, id] = agenda.top();
    agenda.pop();
    const Word u = store[id].w;
    // R3: shortening relator rewrites
    for (int ri = 0; ri < static_cast<int>(cycs.size()) && !contra; ++ri) {
      if (cycs[ri].empty()) continue;
      for (int inv = 0; inv < 2 && !contra; ++inv) {
        for (int rot = 0; rot < static_cast<int>(cycs[ri].size()) && !contra;
             ++rot) {
          Word sigma = relator_sigma(cycs[ri], rot, inv == 1);
          for (int pos = 0; pos <= static_cast<int>(u.size()) && !contra;
               ++pos) {
            std::vector<Letter> cand(u.letters().begin(),
                                     u.letters().begin() + pos);
            for (const auto& l : sigma.letters()) cand.push_back(l);
            for (std::size_t i = pos; i < u.size(); ++i)
              cand.push_back(u.letters()[i]);
            Word w = reduce(Word(std::move(cand)));
            if (w.size() >= u.size()) {
              ++res.attempts;  // counted, but only shortenings are kept
              continue;
            }
            DerivStep s;
            s.rule = DerivStep::Rule::relator;
            s.in1 = id;
            s.relator_index = ri;
            s.rotation = rot;
            s.inverted = inv == 1;
            s.position = pos;
            push(w, s);
          }
        }
      }
      if (over_budget()) break;
    }
    // R2
    for (const auto& h : opts.conjugators) {
      if (contra || over_budget()) break;
      if (h.empty()) continue;
      DerivStep s;
      s.rule = DerivStep::Rule::conjugate;
      s.in1 = id;
      s.conjugator = h;
      push(concat(concat(h, u), h.inverse()), s);
    }
    // R5
    for (int k = 2; k <= opts.power_max && !contra && !over_budget(); ++k) {
      DerivStep s;
      s.rule = DerivStep::Rule::power;
      s.in1 = id;
      s.power = k;
      push(u.pow(k), s);
    }
    // R1 against every stored fact (both orders)
    for (int vid = 0; vid < static_cast<int>(store.size()); ++vid) {
      if (contra || over_budget()) break;
      DerivStep s;
      s.rule = DerivStep::Rule::product;
      s.in1 = id;
      s.in2 = vid;
      push(concat(u, store[vid].w), s);
      if (contra || over_budget()) break;
      DerivStep t;
      t.rule = DerivStep::Rule::product;
      t.in1 = vid;
      t.in2 = id;
      push(concat(store[vid].w, u), t);
    }
  }

  res.facts = static_cast<long>(store.size());
  if (contra) {
    res.outcome = SatOutcome::contradiction;
    res.derivation = std::move(*contra);
  } else if (!agenda.empty() || over_budget()) {
    res.outcome = SatOutcome::budget;
  } else {
    res.outcome = SatOutcome::stable;
  }
  return res;
}

// Reduced products of at most `len` factors drawn from the given words
// and their inverses; the empty word comes first.
inline std::vector<Word> atom_closure(const std::vector<Word>& alphabet,
                                      int len, std::size_t cap = 4096) {
  std::vector<Word> out{Word()};
  std::set<Word> seen{Word()};
  std::size_t round_begin = 0;
  for (int round = 0; round < len; ++round) {
    std::size_t round_end = out.size();
    for (std::size_t i = round_begin; i < round_end; ++i) {
      for (const auto& a : alphabet) {
        for (int sgn = 0; sgn < 2; ++sgn) {
          Word cand = reduce(concat(out[i], sgn ? a.inverse() : a));
          if (cand.empty() || seen.count(cand)) continue;
          seen.insert(cand);
          out.push_back(cand);
          if (out.size() >= cap) return out;
        }
      }
    }
    round_begin = round_end;
  }
  return out;
}

}  // namespace onerel
