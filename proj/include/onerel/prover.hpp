#pragma once

#include <algorithm>
#include <optional>

#include "onerel/biorder.hpp"

namespace onerel {

struct ProveOptions {
  std::vector<Word> splits;                    // split elements, in order
  std::vector<std::vector<Word>> chain_hints;  // candidate contradiction chains
  int seed_conj_rounds = 3;
  int seed_product_rounds = 3;
  int seed_max_len = 16;
  std::size_t seed_cap = 512;
  int closure_len = 2;
  std::size_t closure_cap = 256;
  int prefix_cap = 16;
  int power_max = 3;
  long chain_nodes = 800;
  bool saturate_fallback = true;
  SaturateOptions saturate;
};

namespace detail_biorder {

struct LeafProof {
  Derivation derivation;
  std::vector<Word> chain;
};

struct Peel {
  int fact = -1;
  Word conjugator;
};

// Contradiction search for one case branch: seeded positive facts, then
// the telescoping chain search (hints first, then breadth-first), then
// budgeted saturation.
class LeafSearch {
 public:
  LeafSearch(const std::vector<Word>& hypotheses,
             const std::vector<Word>& relators,
             const std::optional<std::pair<Word, Word>>& sides,
             const std::vector<Atom>& atoms,
             const std::vector<char>& generators, const ProveOptions& opts,
             ProveStats& stats)
      : hyps_(hypotheses),
        cycs_(cyclic_relators(relators)),
        sides_(sides),
        opts_(opts),
        stats_(stats) {
    for (const auto& a : atoms) alphabet_.push_back(a.word);
    for (char g : generators)
      alphabet_.push_back(Word({named_letter(g)}));
    closure_ = atom_closure(alphabet_, opts.closure_len, opts.closure_cap);
  }

  std::optional<LeafProof> run() {
    if (auto c = seed()) return c;
    for (const auto& hint : opts_.chain_hints) {
      if (auto c = attempt_hint(hint)) return c;
      std::vector<Word> rev(hint.rbegin(), hint.rend());
      if (auto c = attempt_hint(rev)) return c;
    }
    for (const auto& [target, head] : targets())
      if (auto c = chain_bfs(target, head)) return c;
    if (opts_.saturate_fallback) {
      std::vector<Word> rels;
      for (const auto& rc : cycs_) rels.push_back(rc);
      SaturateOptions so = opts_.saturate;
      if (so.conjugators.empty())
        so.conjugators = atom_closure(alphabet_, 1, 64);
      SaturateResult sr = saturate(hyps_, rels, so);
      stats_.saturate_attempts += sr.attempts;
      if (sr.outcome == SatOutcome::contradiction)
        return LeafProof{std::move(sr.derivation), {}};
    }
    return std::nullopt;
  }

 private:
  // -- fact store ---------------------------------------------------------

  std::optional<LeafProof> seed() {
    std::optional<LeafProof> contra;
    auto push = [&](const Word& raw, DerivStep how) -> bool {
      if (contra) return false;
      Word w = reduce(raw);
      how.output = w;
      if (w.empty()) {
        contra = LeafProof{assemble(store_, std::move(how)), {}};
        return false;
      }
      if (static_cast<int>(w.size()) > opts_.seed_max_len) return false;
      if (store_.size() >= opts_.seed_cap) return false;
      if (index_.count(w)) return false;
      if (auto it = index_.find(w.inverse()); it != index_.end()) {
        contra = LeafProof{assemble(store_, std::move(how), it->second), {}};
        return false;
      }
      int id = static_cast<int>(store_.size());
      store_.push_back({w, std::move(how)});
      index_.emplace(w, id);
      return true;
    };

    for (const auto& f : hyps_) {
      DerivStep s;
      s.rule = DerivStep::Rule::hyp;
      push(f, s);
      if (contra) return contra;
    }
    // conjugates by single generators/atoms, a few rounds deep
    std::size_t begin = 0;
    for (int round = 0; round < opts_.seed_conj_rounds && !contra; ++round) {
      std::size_t end = store_.size();
      for (std::size_t i = begin; i < end && !contra; ++i) {
        for (const auto& a : alphabet_) {
          for (int sgn = 0; sgn < 2 && !contra; ++sgn) {
            Word h = sgn ? a.inverse() : a;
            if (h.empty()) continue;
            DerivStep s;
            s.rule = DerivStep::Rule::conjugate;
            s.in1 = static_cast<int>(i);
            s.conjugator = h;
            push(concat(concat(h, store_[i].w), h.inverse()), s);
          }
        }
      }
      begin = 0;  // later rounds may conjugate earlier conjugates again
      if (end == store_.size()) break;
    }
    // powers of the short facts
    std::size_t npow = store_.size();
    for (std::size_t i = 0; i < npow && !contra; ++i) {
      if (store_[i].w.size() > 8) continue;
      for (int k = 2; k <= opts_.power_max && !contra; ++k) {
        DerivStep s;
        s.rule = DerivStep::Rule::power;
        s.in1 = static_cast<int>(i);
        s.power = k;
        push(store_[i].w.pow(k), s);
      }
    }
    // pairwise products, a few rounds
    for (int round = 0; round < opts_.seed_product_rounds && !contra;
         ++round) {
      std::size_t end = store_.size();
      bool grew = false;
      for (std::size_t i = 0; i < end && !contra; ++i) {
        for (std::size_t j = 0; j < end && !contra; ++j) {
          if (i == j) continue;
          DerivStep s;
          s.rule = DerivStep::Rule::product;
          s.in1 = static_cast<int>(i);
          s.in2 = static_cast<int>(j);
          std::size_t before = store_.size();
          push(concat(store_[i].w, store_[j].w), s);
          grew |= store_.size() != before;
        }
      }
      if (!grew) break;
    }
    if (!contra) {
      for (std::size_t i = 0; i < store_.size(); ++i)
        buckets_[store_[i].w.letters().front()].push_back(
            static_cast<int>(i));
    }
    return contra;
  }

  // -- peels ---------------------------------------------------------------

  static int common_prefix(const Word& u, const Word& v) {
    std::size_t n = std::min(u.size(), v.size());
    std::size_t k = 0;
    while (k < n && u.letters()[k] == v.letters()[k]) ++k;
    return static_cast<int>(k);
  }

  std::vector<Word> conj_candidates(const Word& v) const {
    std::vector<Word> out;
    std::set<Word> seen;
    int plen = std::min<int>(opts_.prefix_cap, static_cast<int>(v.size()));
    for (int k = 1; k <= plen; ++k) {
      Word p(std::vector<Letter>(v.letters().begin(),
                                 v.letters().begin() + k));
      if (seen.insert(p).second) out.push_back(p);
    }
    for (const auto& h : closure_) {
      if (h.empty() || static_cast<int>(h.size()) > opts_.prefix_cap) continue;
      if (seen.insert(h).second) out.push_back(h);
    }
    return out;
  }

  // Residual left after peeling the conjugate h f h^-1 off the front of v.
  Word peel_residual(const Word& v, const Word& f, const Word& h) const {
    if (h.empty()) return reduce(concat(f.inverse(), v));
    Word inner = reduce(concat(h.inverse(), v));
    Word mid = reduce(concat(f.inverse(), inner));
    return reduce(concat(h, mid));
  }

  std::optional<Peel> find_peel(const Word& d) const {
    if (auto it = index_.find(d); it != index_.end())
      return Peel{it->second, Word()};
    for (const auto& h : conj_candidates(d)) {
      Word inner = reduce(concat(h.inverse(), d));
      if (inner.empty()) continue;
      auto bit = buckets_.find(inner.letters().front());
      if (bit == buckets_.end()) continue;
      for (int f : bit->second)
        if (peel_residual(d, store_[f].w, h).empty()) return Peel{f, h};
    }
    return std::nullopt;
  }

  std::optional<std::vector<Peel>> find_diff(const Word& d) const {
    if (auto p = find_peel(d)) return std::vector<Peel>{*p};
    for (std::size_t cut = 1; cut < d.size(); ++cut) {
      Word d1(std::vector<Letter>(d.letters().begin(),
                                  d.letters().begin() + cut));
      Word d2(std::vector<Letter>(d.letters().begin() + cut,
                                  d.letters().end()));
      auto p1 = find_peel(d1);
      if (!p1) continue;
      auto p2 = find_peel(d2);
      if (p2) return std::vector<Peel>{*p1, *p2};
    }
    return std::nullopt;
  }

  // -- closing a telescoped product against a relator -----------------------

  struct RelMatch {
    int relator = 0;
    int rotation = 0;
    bool inverted = false;
  };

  std::optional<RelMatch> relator_closure(const Word& core) const {
    Word want = core.inverse();
    for (int ri = 0; ri < static_cast<int>(cycs_.size()); ++ri) {
      const Word& rc = cycs_[ri];
      if (rc.empty() || rc.size() != want.size()) continue;
      for (int inv = 0; inv < 2; ++inv) {
        Word base = inv ? rc.inverse() : rc;
        for (int rot = 0; rot < static_cast<int>(base.size()); ++rot)
          if (rotate_word(base, rot) == want)
            return RelMatch{ri, rot, inv == 1};
      }
    }
    return std::nullopt;
  }

  LeafProof assemble_peels(const std::vector<Peel>& peels, const Word& target,
                           const RelMatch& rm,
                           std::vector<Word> chain) const {
    // ancestors of the used facts
    std::vector<int> needed;
    std::vector<char> mark(store_.size(), 0);
    auto require = [&](auto&& self, int id) -> void {
      if (id < 0 || mark[id]) return;
      mark[id] = 1;
      self(self, store_[id].how.in1);
      self(self, store_[id].how.in2);
      needed.push_back(id);
    };
    for (const auto& p : peels) require(require, p.fact);
    std::sort(needed.begin(), needed.end());
    Derivation d;
    std::map<int, int> remap;
    for (int id : needed) {
      DerivStep s = store_[id].how;
      if (s.in1 >= 0) s.in1 = remap.at(s.in1);
      if (s.in2 >= 0) s.in2 = remap.at(s.in2);
      remap[id] = static_cast<int>(d.steps.size());
      d.steps.push_back(std::move(s));
    }
    int acc = -1;
    Word acc_w;
    for (const auto& p : peels) {
      int u_idx = remap.at(p.fact);
      Word u_w = store_[p.fact].w;
      if (!p.conjugator.empty()) {
        DerivStep s;
        s.rule = DerivStep::Rule::conjugate;
        s.in1 = u_idx;
        s.conjugator = p.conjugator;
        u_w = reduce(concat(concat(p.conjugator, u_w), p.conjugator.inverse()));
        s.output = u_w;
        u_idx = static_cast<int>(d.steps.size());
        d.steps.push_back(std::move(s));
      }
      if (acc < 0) {
        acc = u_idx;
        acc_w = u_w;
      } else {
        DerivStep s;
        s.rule = DerivStep::Rule::product;
        s.in1 = acc;
        s.in2 = u_idx;
        acc_w = reduce(concat(acc_w, u_w));
        s.output = acc_w;
        acc = static_cast<int>(d.steps.size());
        d.steps.push_back(std::move(s));
      }
    }
    if (acc_w != target)
      throw std::logic_error("assemble_peels: telescope mismatch");
    auto [conj, core] = cyclic_reduce(acc_w);
    if (!conj.empty()) {
      DerivStep s;
      s.rule = DerivStep::Rule::conjugate;
      s.in1 = acc;
      s.conjugator = conj.inverse();
      s.output = core;
      acc = static_cast<int>(d.steps.size());
      d.steps.push_back(std::move(s));
    }
    DerivStep fin;
    fin.rule = DerivStep::Rule::relator;
    fin.in1 = acc;
    fin.relator_index = rm.relator;
    fin.rotation = rm.rotation;
    fin.inverted = rm.inverted;
    fin.position = static_cast<int>(core.size());
    fin.output = Word();
    d.steps.push_back(std::move(fin));
    d.contra = Derivation::Contra::one_in_p;
    d.s1 = static_cast<int>(d.steps.size()) - 1;
    return LeafProof{std::move(d), std::move(chain)};
  }

  // -- strategies -----------------------------------------------------------

  std::optional<LeafProof> attempt_hint(const std::vector<Word>& hint) const {
    if (hint.size() < 2) return std::nullopt;
    std::vector<Word> elems;
    for (const auto& e : hint) {
      Word r = reduce(e);
      if (elems.empty() || elems.back() != r) elems.push_back(std::move(r));
    }
    if (elems.size() < 2) return std::nullopt;
    Word target = reduce(concat(elems.front().inverse(), elems.back()));
    if (target.empty()) return std::nullopt;
    auto rm = relator_closure(cyclic_reduce(target).second);
    if (!rm) return std::nullopt;
    std::vector<Peel> peels;
    for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
      Word diff = reduce(concat(elems[i].inverse(), elems[i + 1]));
      if (diff.empty()) continue;
      auto ps = find_diff(diff);
      if (!ps) return std::nullopt;
      for (auto& p : *ps) peels.push_back(std::move(p));
    }
    if (peels.empty()) return std::nullopt;
    return assemble_peels(peels, target, *rm, elems);
  }

  std::vector<std::pair<Word, Word>> targets() const {
    std::vector<std::pair<Word, Word>> out;  // (target, chain head)
    std::set<Word> seen;
    auto add = [&](Word t, Word head) {
      if (t.empty() || !relator_closure(cyclic_reduce(t).second)) return;
      if (seen.insert(t).second) out.emplace_back(std::move(t), std::move(head));
    };
    if (sides_) {
      add(reduce(concat(sides_->first.inverse(), sides_->second)),
          sides_->first);
      add(reduce(concat(sides_->second.inverse(), sides_->first)),
          sides_->second);
    }
    for (const auto& rc : cycs_) {
      add(rc, Word());
      add(rc.inverse(), Word());
    }
    return out;
  }

  std::optional<LeafProof> chain_bfs(const Word& target,
                                     const Word& head) const {
    struct Node {
      Word residual;
      int parent = -1;
      Peel peel;
      int depth = 0;
    };
    std::vector<Node> nodes;
    std::set<Word> visited;
    std::priority_queue<std::pair<int, int>,
                        std::vector<std::pair<int, int>>, std::greater<>>
        pq;
    nodes.push_back({target, -1, {}, 0});
    visited.insert(target);
    pq.emplace(static_cast<int>(target.size()), 0);
    long budget = opts_.chain_nodes;
    auto finish = [&](int node_id) -> LeafProof {
      std::vector<Peel> peels;
      for (int id = node_id; id > 0; id = nodes[id].parent)
        peels.push_back(nodes[id].peel);
      std::reverse(peels.begin(), peels.end());
      std::vector<Word> chain;
      if (!head.empty()) {
        chain.push_back(head);
        Word acc = head;
        for (const auto& p : peels) {
          Word u = store_[p.fact].w;
          if (!p.conjugator.empty())
            u = reduce(
                concat(concat(p.conjugator, u), p.conjugator.inverse()));
          acc = reduce(concat(acc, u));
          chain.push_back(acc);
        }
      }
      auto rm = relator_closure(cyclic_reduce(target).second);
      return assemble_peels(peels, target, *rm, std::move(chain));
    };
    while (!pq.empty() && budget-- > 0) {
      auto [len, id] = pq.top();
      pq.pop();
      Word v = nodes[id].residual;
      ++stats_.chain_nodes;
      auto try_peel = [&](int f, const Word& h) -> std::optional<LeafProof> {
        Word r = peel_residual(v, store_[f].w, h);
        if (r.empty()) {
          nodes.push_back({r, id, {f, h}, nodes[id].depth + 1});
          return finish(static_cast<int>(nodes.size()) - 1);
        }
        if (r.size() > v.size()) return std::nullopt;
        if (visited.count(r)) return std::nullopt;
        visited.insert(r);
        nodes.push_back({r, id, {f, h}, nodes[id].depth + 1});
        pq.emplace(static_cast<int>(r.size()),
                   static_cast<int>(nodes.size()) - 1);
        return std::nullopt;
      };
      // bare facts whose first letter matches
      if (auto bit = buckets_.find(v.letters().front());
          bit != buckets_.end()) {
        for (int f : bit->second) {
          int k = common_prefix(store_[f].w, v);
          if (2 * k < static_cast<int>(store_[f].w.size())) continue;
          if (auto done = try_peel(f, Word())) return done;
        }
      }
      // conjugated facts
      for (const auto& h : conj_candidates(v)) {
        Word inner = reduce(concat(h.inverse(), v));
        if (inner.empty()) continue;
        auto bit = buckets_.find(inner.letters().front());
        if (bit == buckets_.end()) continue;
        for (int f : bit->second) {
          int k = common_prefix(store_[f].w, inner);
          if (2 * k < static_cast<int>(store_[f].w.size())) continue;
          if (auto done = try_peel(f, h)) return done;
        }
      }
    }
    return std::nullopt;
  }

  static Derivation assemble(const std::vector<StoreFact>& store,
                             DerivStep final_step, int pair_with = -1) {
    return detail_biorder::assemble(store, std::move(final_step), pair_with);
  }

  const std::vector<Word>& hyps_;
  std::vector<Word> cycs_;
  std::optional<std::pair<Word, Word>> sides_;
  const ProveOptions& opts_;
  ProveStats& stats_;
  std::vector<Word> alphabet_;
  std::vector<Word> closure_;
  std::vector<StoreFact> store_;
  std::map<Word, int> index_;
  std::map<Letter, std::vector<int>> buckets_;
};

}  // namespace detail_biorder

// Explores the trichotomy tree over the split sequence; every leaf must
// close with a checkable contradiction, equality branches are discharged
// by the word-problem oracle (or substituted as relations when the split
// element really is trivial). No certificate is produced unless every
// branch closes.
inline std::optional<Certificate> prove_non_biorderable(
    const OrderPresentation& pres, const std::vector<Atom>& atoms,
    const ProveOptions& opts, const TrivialityOracle& oracle) {
  Certificate cert;
  cert.presentation = pres;
  cert.atoms = atoms;

  std::vector<Word> splits = opts.splits;
  if (splits.empty())
    for (char g : pres.generators) splits.push_back(Word({named_letter(g)}));

  auto label_of = [&](const Word& w) {
    for (const auto& a : atoms)
      if (reduce(a.word) == w) return a.name;
    return w.str();
  };

  std::function<std::unique_ptr<CertNode>(std::vector<Word>&,
                                          std::vector<Word>&, std::size_t)>
      explore = [&](std::vector<Word>& facts, std::vector<Word>& relators,
                    std::size_t next_split) -> std::unique_ptr<CertNode> {
    ++cert.stats.leaves;
    if (!facts.empty()) {
      detail_biorder::LeafSearch search(facts, relators, pres.sides, atoms,
                                        pres.generators, opts, cert.stats);
      if (auto proof = search.run()) {
        auto leaf = std::make_unique<CertNode>();
        leaf->kind = CertNode::Kind::leaf;
        leaf->derivation = std::move(proof->derivation);
        leaf->chain = std::move(proof->chain);
        return leaf;
      }
    }
    if (next_split >= splits.size()) return nullptr;
    Word g = reduce(splits[next_split]);
    if (g.empty()) return nullptr;
    auto node = std::make_unique<CertNode>();
    node->kind = CertNode::Kind::split;
    node->element = g;
    node->label = label_of(g);
    facts.push_back(g);
    node->pos = explore(facts, relators, next_split + 1);
    facts.pop_back();
    if (!node->pos) return nullptr;
    facts.push_back(g.inverse());
    node->neg = explore(facts, relators, next_split + 1);
    facts.pop_back();
    if (!node->neg) return nullptr;
    Verdict v = oracle(g);
    if (v == Verdict::nontrivial) {
      auto eq = std::make_unique<CertNode>();
      eq->kind = CertNode::Kind::oracle_leaf;
      eq->element = g;
      eq->label = node->label;
      node->eq = std::move(eq);
    } else if (v == Verdict::trivial) {
      auto eq = std::make_unique<CertNode>();
      eq->kind = CertNode::Kind::substitute;
      eq->element = g;
      eq->label = node->label;
      relators.push_back(g);
      eq->child = explore(facts, relators, next_split + 1);
      relators.pop_back();
      if (!eq->child) return nullptr;
      node->eq = std::move(eq);
    } else {
      return nullptr;  // inconclusive oracle: no honest certificate
    }
    return node;
  };

  std::vector<Word> facts;
  std::vector<Word> relators = pres.relators;
  cert.root = explore(facts, relators, 0);
  if (!cert.root) return std::nullopt;
  return cert;
}

}  // namespace onerel
