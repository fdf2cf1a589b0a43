#pragma once

#include <memory>

#include "onerel/biorder.hpp"
#include "onerel/oracles.hpp"
#include "onerel/prover.hpp"
#include "onerel/relators.hpp"

namespace onerel {

// A named group the toolkit can reason about: the Gamma_W family plus the
// control groups used to sanity-check the prover and the torsion search.
struct GroupSpec {
  enum class Kind { gamma, klein, bs, free_group };
  Kind kind = Kind::gamma;
  TowerParams params;        // gamma
  int base = 2;              // bs
  std::vector<char> gens = {'t', 'a'};  // free_group
  int membership_bound = 64;

  static GroupSpec gamma_group(TowerParams p) {
    GroupSpec g;
    g.kind = Kind::gamma;
    g.params = std::move(p);
    return g;
  }
  static GroupSpec klein() {
    GroupSpec g;
    g.kind = Kind::klein;
    return g;
  }
  static GroupSpec bs(int m) {
    GroupSpec g;
    g.kind = Kind::bs;
    g.base = m;
    return g;
  }
  static GroupSpec free2(std::vector<char> gens = {'t', 'a'}) {
    GroupSpec g;
    g.kind = Kind::free_group;
    g.gens = std::move(gens);
    return g;
  }

  std::string name() const {
    switch (kind) {
      case Kind::gamma:
        return "gamma(" + std::to_string(params.s) + "," +
               std::to_string(params.m) + "," + params.w.str() + ")";
      case Kind::klein: return "klein";
      case Kind::bs: return "bs1" + std::to_string(base);
      case Kind::free_group: return "free" + std::to_string(gens.size());
    }
    return "?";
  }
};

inline OrderPresentation make_presentation(const GroupSpec& g) {
  OrderPresentation p;
  p.name = g.name();
  switch (g.kind) {
    case GroupSpec::Kind::gamma: {
      auto gp = build_gamma_presentation(g.params);
      p.generators = {'t', 'a'};
      p.relators = {gp.relator};
      p.sides = {{gp.left, gp.right}};
      break;
    }
    case GroupSpec::Kind::klein: {
      p.generators = {'a', 'b'};
      Word left = Word::parse("b a b^-1");
      Word right = Word::parse("a^-1");
      p.relators = {reduce(concat(left, right.inverse()))};
      p.sides = {{left, right}};
      break;
    }
    case GroupSpec::Kind::bs: {
      p.generators = {'a', 'b'};
      Word left = Word::parse("a b a^-1");
      Word right = Word::parse("b").pow(g.base);
      p.relators = {reduce(concat(left, right.inverse()))};
      p.sides = {{left, right}};
      break;
    }
    case GroupSpec::Kind::free_group: {
      p.generators = g.gens;
      break;
    }
  }
  return p;
}

inline std::unique_ptr<GroupOracle> make_oracle(const GroupSpec& g,
                                                int h_window = 6) {
  switch (g.kind) {
    case GroupSpec::Kind::gamma:
      return std::make_unique<GammaOracle>(g.params, g.membership_bound);
    case GroupSpec::Kind::klein: return std::make_unique<KleinOracle>();
    case GroupSpec::Kind::bs: return std::make_unique<BSOracle>(g.base);
    case GroupSpec::Kind::free_group:
      return std::make_unique<FreeOracle>(g.gens);
  }
  (void)h_window;
  return nullptr;
}

// The proof elements of the ordering argument: a = z_0, b = z_s,
// c = z_{s+1}, D = W(z_0..z_{s-1}) with z_i = t^i a t^-i.
inline std::vector<Atom> default_atoms(const GroupSpec& g) {
  std::vector<Atom> out;
  if (g.kind == GroupSpec::Kind::gamma) {
    const auto& p = g.params;
    out.push_back({"a", unrewrite(Word({indexed_letter(0)}))});
    out.push_back({"b", unrewrite(Word({indexed_letter(p.s)}))});
    out.push_back({"c", unrewrite(Word({indexed_letter(p.s + 1)}))});
    out.push_back({"D", unrewrite(p.w)});
  } else {
    OrderPresentation pres = make_presentation(g);
    for (char gen : pres.generators)
      out.push_back({std::string(1, gen), Word({named_letter(gen)})});
  }
  return out;
}

// Split on the sign of a, then on the sign of z_0^-1 z_1: conjugation by
// t propagates the second comparison along the whole ladder z_k vs
// z_{k+1}, which is what the contradiction chains consume.
inline std::vector<Word> default_splits(const GroupSpec& g) {
  std::vector<Word> out;
  if (g.kind == GroupSpec::Kind::gamma) {
    Word z0 = unrewrite(Word({indexed_letter(0)}));
    Word z1 = unrewrite(Word({indexed_letter(1)}));
    out.push_back(z0);
    out.push_back(reduce(concat(z0.inverse(), z1)));
  } else {
    OrderPresentation pres = make_presentation(g);
    for (char gen : pres.generators)
      out.push_back(Word({named_letter(gen)}));
  }
  return out;
}

// The contradiction chains of the ordering argument, as element
// sequences: ascending case b D c b^-1 < bDc < cDc < (Dc)^2 <= (Dc)^m and
// descending case b D c b^-1 < bD < aD <= D^2 < (Dc)^2 <= (Dc)^m.
// Reversed copies are tried automatically for the mirrored sign branches.
inline std::vector<std::vector<Word>> default_chain_hints(const GroupSpec& g) {
  std::vector<std::vector<Word>> out;
  if (g.kind != GroupSpec::Kind::gamma) return out;
  const auto& p = g.params;
  Word a = unrewrite(Word({indexed_letter(0)}));
  Word b = unrewrite(Word({indexed_letter(p.s)}));
  Word c = unrewrite(Word({indexed_letter(p.s + 1)}));
  Word D = unrewrite(p.w);
  Word Dc = reduce(concat(D, c));
  Word bDc = reduce(concat(b, Dc));
  Word L = reduce(concat(bDc, b.inverse()));
  std::vector<Word> asc{L, bDc, reduce(concat(c, Dc))};
  for (int k = 2; k <= p.m; ++k) asc.push_back(Dc.pow(k));
  out.push_back(std::move(asc));
  std::vector<Word> desc{L, reduce(concat(b, D)), reduce(concat(a, D)),
                         reduce(concat(D, D))};
  for (int k = 2; k <= p.m; ++k) desc.push_back(Dc.pow(k));
  out.push_back(std::move(desc));
  return out;
}

inline ProveOptions default_prove_options(const GroupSpec& g) {
  ProveOptions opts;
  opts.splits = default_splits(g);
  opts.chain_hints = default_chain_hints(g);
  if (g.kind == GroupSpec::Kind::gamma) {
    opts.seed_conj_rounds = std::max(3, g.params.s + 2);
    opts.power_max = std::max(3, g.params.m);
    opts.saturate.power_max = opts.power_max;
  }
  return opts;
}

inline TrivialityOracle oracle_fn(GroupOracle& oracle) {
  return [&oracle](const Word& w) { return oracle.is_trivial(w); };
}

}  // namespace onerel
