#pragma once

#include <json.hpp>

#include "onerel/alexander.hpp"
#include "onerel/gentorsion.hpp"
#include "onerel/groups.hpp"

namespace onerel {

using json = nlohmann::json;

// ---- small values --------------------------------------------------------

inline json to_json(const BSElement& g) {
  return json{{"i", g.alpha},
              {"num", g.beta.num().str()},
              {"den_exp", g.beta.exp()},
              {"base", g.beta.base()}};
}

inline json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(json::array({e, c.convert_to<long long>()}));
  return terms;
}

inline json verdict_json(Verdict v, int level, const Word& w,
                         const TowerStats& stats,
                         const std::vector<Syllable>* sylls = nullptr) {
  json out{{"verdict", to_string(v)},
           {"level", level},
           {"word", w.str()},
           {"stats",
            {{"pinches", stats.pinches},
             {"recursive_calls", stats.recursive_calls}}}};
  if (sylls) {
    json arr = json::array();
    for (const auto& s : *sylls) arr.push_back(s.str());
    out["syllables"] = arr;
  }
  return out;
}

inline json alex_json(const LaurentPoly& p) {
  return json{{"poly", to_json(p)},
              {"positive_real_roots", positive_real_root_count(p)},
              {"descartes_bound", descartes_positive_bound(p)}};
}

// ---- group spec ----------------------------------------------------------

inline json to_json(const GroupSpec& g) {
  json out{{"kind", g.kind == GroupSpec::Kind::gamma   ? "gamma"
                    : g.kind == GroupSpec::Kind::klein ? "klein"
                    : g.kind == GroupSpec::Kind::bs    ? "bs"
                                                       : "free"}};
  if (g.kind == GroupSpec::Kind::gamma) {
    out["params"] = {{"s", g.params.s},
                     {"m", g.params.m},
                     {"w", g.params.w.str()}};
  }
  if (g.kind == GroupSpec::Kind::bs) out["base"] = g.base;
  if (g.kind == GroupSpec::Kind::free_group)
    out["generators"] = std::string(g.gens.begin(), g.gens.end());
  return out;
}

inline GroupSpec group_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "gamma") {
    const auto& p = j.at("params");
    TowerParams tp{p.at("s").get<int>(), p.at("m").get<int>(),
                   Word::parse(p.at("w").get<std::string>())};
    return GroupSpec::gamma_group(canonicalize(tp));
  }
  if (kind == "klein") return GroupSpec::klein();
  if (kind == "bs") return GroupSpec::bs(j.at("base").get<int>());
  if (kind == "free") {
    std::string gens = j.value("generators", "ta");
    return GroupSpec::free2(std::vector<char>(gens.begin(), gens.end()));
  }
  throw std::invalid_argument("unknown group kind: " + kind);
}

// ---- certificates --------------------------------------------------------

inline json to_json(const DerivStep& s) {
  json out{{"rule", rule_name(s.rule)}, {"output", s.output.str()}};
  json inputs = json::array();
  if (s.in1 >= 0) inputs.push_back(s.in1);
  if (s.in2 >= 0) inputs.push_back(s.in2);
  out["inputs"] = inputs;
  if (s.rule == DerivStep::Rule::conjugate)
    out["conjugator"] = s.conjugator.str();
  if (s.rule == DerivStep::Rule::power) out["power"] = s.power;
  if (s.rule == DerivStep::Rule::relator) {
    out["relator"] = s.relator_index;
    out["rotation"] = s.rotation;
    out["inverted"] = s.inverted;
    out["position"] = s.position;
  }
  return out;
}

inline DerivStep step_from_json(const json& j) {
  DerivStep s;
  std::string rule = j.at("rule").get<std::string>();
  if (rule == "hyp") s.rule = DerivStep::Rule::hyp;
  else if (rule == "R1") s.rule = DerivStep::Rule::product;
  else if (rule == "R2") s.rule = DerivStep::Rule::conjugate;
  else if (rule == "R3") s.rule = DerivStep::Rule::relator;
  else if (rule == "R5") s.rule = DerivStep::Rule::power;
  else throw std::invalid_argument("unknown rule: " + rule);
  s.output = Word::parse(j.at("output").get<std::string>());
  const auto& inputs = j.at("inputs");
  if (inputs.size() > 0) s.in1 = inputs[0].get<int>();
  if (inputs.size() > 1) s.in2 = inputs[1].get<int>();
  if (j.contains("conjugator"))
    s.conjugator = Word::parse(j["conjugator"].get<std::string>());
  s.power = j.value("power", 1);
  s.relator_index = j.value("relator", 0);
  s.rotation = j.value("rotation", 0);
  s.inverted = j.value("inverted", false);
  s.position = j.value("position", 0);
  return s;
}

inline json to_json(const Derivation& d) {
  json steps = json::array();
  for (const auto& s : d.steps) steps.push_back(to_json(s));
  json contra{{"kind", d.contra == Derivation::Contra::one_in_p
                           ? "one_in_p"
                           : "inverse_pair"},
              {"s1", d.s1}};
  if (d.contra == Derivation::Contra::inverse_pair) contra["s2"] = d.s2;
  return json{{"steps", steps}, {"contradiction", contra}};
}

inline Derivation derivation_from_json(const json& j) {
  Derivation d;
  for (const auto& s : j.at("steps")) d.steps.push_back(step_from_json(s));
  const auto& c = j.at("contradiction");
  d.contra = c.at("kind").get<std::string>() == "one_in_p"
                 ? Derivation::Contra::one_in_p
                 : Derivation::Contra::inverse_pair;
  d.s1 = c.at("s1").get<int>();
  d.s2 = c.value("s2", -1);
  return d;
}

inline json to_json(const CertNode& n) {
  switch (n.kind) {
    case CertNode::Kind::split: {
      return json{{"kind", "split"},
                  {"element", n.element.str()},
                  {"label", n.label},
                  {"cases",
                   {{"pos", to_json(*n.pos)},
                    {"neg", to_json(*n.neg)},
                    {"eq", to_json(*n.eq)}}}};
    }
    case CertNode::Kind::leaf: {
      json out{{"kind", "leaf"}, {"derivation", to_json(n.derivation)}};
      if (!n.chain.empty()) {
        json chain = json::array();
        for (const auto& w : n.chain) chain.push_back(w.str());
        out["chain"] = chain;
      }
      return out;
    }
    case CertNode::Kind::oracle_leaf:
      return json{{"kind", "oracle"},
                  {"element", n.element.str()},
                  {"label", n.label}};
    case CertNode::Kind::substitute:
      return json{{"kind", "substitute"},
                  {"element", n.element.str()},
                  {"label", n.label},
                  {"child", to_json(*n.child)}};
  }
  return json{};
}

inline std::unique_ptr<CertNode> node_from_json(const json& j) {
  auto n = std::make_unique<CertNode>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "split") {
    n->kind = CertNode::Kind::split;
    n->element = Word::parse(j.at("element").get<std::string>());
    n->label = j.value("label", "");
    n->pos = node_from_json(j.at("cases").at("pos"));
    n->neg = node_from_json(j.at("cases").at("neg"));
    n->eq = node_from_json(j.at("cases").at("eq"));
  } else if (kind == "leaf") {
    n->kind = CertNode::Kind::leaf;
    n->derivation = derivation_from_json(j.at("derivation"));
    if (j.contains("chain"))
      for (const auto& w : j["chain"])
        n->chain.push_back(Word::parse(w.get<std::string>()));
  } else if (kind == "oracle") {
    n->kind = CertNode::Kind::oracle_leaf;
    n->element = Word::parse(j.at("element").get<std::string>());
    n->label = j.value("label", "");
  } else if (kind == "substitute") {
    n->kind = CertNode::Kind::substitute;
    n->element = Word::parse(j.at("element").get<std::string>());
    n->label = j.value("label", "");
    n->child = node_from_json(j.at("child"));
  } else {
    throw std::invalid_argument("unknown certificate node kind: " + kind);
  }
  return n;
}

inline json certificate_json(const Certificate& cert, const GroupSpec& g) {
  json relators = json::array();
  for (const auto& r : cert.presentation.relators) relators.push_back(r.str());
  json atoms = json::array();
  for (const auto& a : cert.atoms)
    atoms.push_back(json{{"name", a.name}, {"word", a.word.str()}});
  json pres{{"name", cert.presentation.name},
            {"generators", std::string(cert.presentation.generators.begin(),
                                       cert.presentation.generators.end())},
            {"relators", relators}};
  if (cert.presentation.sides) {
    pres["left"] = cert.presentation.sides->first.str();
    pres["right"] = cert.presentation.sides->second.str();
  }
  return json{{"result", "certificate"},
              {"group", to_json(g)},
              {"presentation", pres},
              {"atoms", atoms},
              {"tree", to_json(*cert.root)},
              {"stats",
               {{"leaves", cert.stats.leaves},
                {"chain_nodes", cert.stats.chain_nodes},
                {"saturate_attempts", cert.stats.saturate_attempts}}}};
}

struct ParsedCertificate {
  GroupSpec group;
  Certificate certificate;
};

inline ParsedCertificate certificate_from_json(const json& j) {
  ParsedCertificate out{group_from_json(j.at("group")), Certificate{}};
  const auto& pres = j.at("presentation");
  out.certificate.presentation.name = pres.value("name", "");
  std::string gens = pres.value("generators", "");
  out.certificate.presentation.generators.assign(gens.begin(), gens.end());
  for (const auto& r : pres.at("relators"))
    out.certificate.presentation.relators.push_back(
        Word::parse(r.get<std::string>()));
  if (pres.contains("left"))
    out.certificate.presentation.sides = {
        {Word::parse(pres["left"].get<std::string>()),
         Word::parse(pres["right"].get<std::string>())}};
  for (const auto& a : j.value("atoms", json::array()))
    out.certificate.atoms.push_back(
        {a.at("name").get<std::string>(),
         Word::parse(a.at("word").get<std::string>())});
  out.certificate.root = node_from_json(j.at("tree"));
  return out;
}

// ---- torsion search ------------------------------------------------------

inline json to_json(const SearchConfig& c) {
  return json{{"tau_max_length", c.tau_max_length},
              {"conjugator_radius", c.conjugator_radius},
              {"max_factors", c.max_factors},
              {"shift_range", c.shift_range},
              {"budget", c.budget}};
}

inline json to_json(const Finding& f) {
  json conjs = json::array();
  for (const auto& g : f.conjugators) conjs.push_back(g.str());
  return json{{"tau", f.tau.str()},
              {"conjugators", conjs},
              {"shifts", f.shifts},
              {"product", f.product.str()}};
}

inline json to_json(const SearchReport& r) {
  json findings = json::array();
  for (const auto& f : r.findings) findings.push_back(to_json(f));
  return json{{"oracle", r.oracle},
              {"config", to_json(r.config)},
              {"findings", findings},
              {"examined", r.examined},
              {"inconclusive", r.inconclusive},
              {"elapsed_ms", r.elapsed_ms},
              {"budget_exhausted", r.budget_exhausted}};
}

// ---- chain pretty printing ------------------------------------------------

// Re-expresses a chain element as a product of named atoms when a short
// product matches; used to mirror the written form of the contradiction
// chains (e.g. "bacb^-1 < bac < cac < (ac)^2" style output).
inline std::optional<std::string> atom_expression(
    const Word& target, const std::vector<Atom>& atoms, int max_len = 10) {
  struct Entry {
    Word w;
    std::string expr;
  };
  if (target.empty()) return std::string("1");
  std::vector<Entry> frontier{{Word(), ""}};
  std::set<Word> seen{Word()};
  for (int depth = 0; depth < max_len; ++depth) {
    std::vector<Entry> next;
    for (const auto& e : frontier) {
      for (const auto& a : atoms) {
        for (int sgn = 0; sgn < 2; ++sgn) {
          Word aw = sgn ? a.word.inverse() : a.word;
          std::string expr =
              e.expr + (sgn ? a.name + "^-1" : a.name);
          Word w = reduce(concat(e.w, aw));
          if (w == target) return expr;
          if (seen.count(w)) continue;
          seen.insert(w);
          next.push_back({std::move(w), std::move(expr)});
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

inline std::string chain_to_string(const std::vector<Word>& chain,
                                   const std::vector<Atom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += " < ";
    auto expr = atom_expression(chain[i], atoms);
    out += expr ? *expr : chain[i].str();
  }
  return out;
}

}  // namespace onerel
