#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>

#include "onerel/oracles.hpp"

namespace onerel {

struct SearchConfig {
  int tau_max_length = 3;
  int conjugator_radius = 2;
  int max_factors = 2;
  int shift_range = 0;  // only meaningful for oracles with a shift action
  long budget = 200000; // products examined
};

struct Finding {
  Word tau;
  std::vector<Word> conjugators;
  std::vector<int> shifts;
  Word product;
};

struct SearchReport {
  std::string oracle;
  SearchConfig config;
  std::vector<Finding> findings;
  long examined = 0;
  long inconclusive = 0;
  long elapsed_ms = 0;
  bool budget_exhausted = false;
};

// Letter order used for enumeration and necklace representatives:
// positive letters precede their inverses.
inline bool letter_rank_less(const Letter& x, const Letter& y) {
  auto key = [](const Letter& l) {
    return std::make_tuple(l.indexed, l.sym, l.index, l.sign < 0);
  };
  return key(x) < key(y);
}

inline bool word_rank_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.letters()[i] == v.letters()[i]) continue;
    return letter_rank_less(u.letters()[i], v.letters()[i]);
  }
  return false;
}

// All reduced words of length 1..maxlen over the given positive letters,
// in (length, rank) order.
inline std::vector<Word> reduced_words(const std::vector<Letter>& gens,
                                       int maxlen) {
  std::vector<Letter> signed_gens;
  for (const auto& g : gens) {
    signed_gens.push_back(g);
    signed_gens.push_back(g.inverse());
  }
  std::vector<Word> out, frontier{Word()};
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& l : signed_gens) {
        if (!w.empty() && w.letters().back().cancels(l)) continue;
        std::vector<Letter> ls = w.letters();
        ls.push_back(l);
        next.push_back(Word(std::move(ls)));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Canonical representative of tau modulo cyclic permutation and
// inversion: the rank-least rotation of the word or its inverse.
inline bool is_necklace_rep(const Word& w) {
  if (!is_cyclically_reduced(w)) return false;
  int n = static_cast<int>(w.size());
  for (const Word& base : {w, w.inverse()}) {
    for (int k = 0; k < n; ++k) {
      Word rot = rotate_word(base, k);
      if (word_rank_less(rot, w)) return false;
    }
  }
  return true;
}

// Assembles (g_1 tau g_1^-1)^(shift n_1) ... as a reduced word; the shift
// action only exists for indexed-alphabet oracles.
inline Word gt_product(const Word& tau, const std::vector<Word>& conjugators,
                       const std::vector<int>& shifts, bool oracle_has_shift) {
  if (conjugators.empty() || conjugators.size() != shifts.size())
    throw std::invalid_argument("gt_product: factor count mismatch");
  Word out;
  for (std::size_t i = 0; i < conjugators.size(); ++i) {
    Word factor =
        reduce(concat(concat(conjugators[i], tau), conjugators[i].inverse()));
    if (shifts[i] != 0) {
      if (!oracle_has_shift)
        throw std::invalid_argument("gt_product: shift on a shift-less oracle");
      factor = shift(factor, shifts[i]);
    }
    out = reduce(concat(out, factor));
  }
  return out;
}

namespace detail_gt {

// Index tuples of length n over [0, k), ordered by total cost then
// lexicographically.
inline std::vector<std::vector<int>> tuples_by_cost(
    int n, const std::vector<int>& costs) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  int k = static_cast<int>(costs.size());
  for (;;) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == k - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const std::vector<int>& x, const std::vector<int>& y) {
                     int cx = 0, cy = 0;
                     for (int i : x) cx += costs[i];
                     for (int i : y) cy += costs[i];
                     return cx < cy;
                   });
  return out;
}

}  // namespace detail_gt

// Budgeted search for generalized torsion witnesses: nontrivial tau with
// a trivial product of conjugates. Candidates are enumerated smallest
// first (|tau|, factor count, conjugator cost, shift cost); an empty
// result means none within the budget, never a proof of absence.
inline SearchReport search(GroupOracle& oracle, const SearchConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  SearchReport report;
  report.oracle = oracle.name();
  report.config = config;

  std::vector<Word> taus;
  for (const auto& w : reduced_words(oracle.generators(), config.tau_max_length))
    if (is_necklace_rep(w)) taus.push_back(w);

  std::vector<Word> conjs{Word()};
  for (auto& w : reduced_words(oracle.generators(), config.conjugator_radius))
    conjs.push_back(std::move(w));
  std::vector<int> conj_costs;
  for (const auto& w : conjs) conj_costs.push_back(static_cast<int>(w.size()));

  std::vector<int> shift_values{0};
  if (oracle.has_shift()) {
    for (int k = 1; k <= config.shift_range; ++k) {
      shift_values.push_back(k);
      shift_values.push_back(-k);
    }
  }
  std::vector<int> shift_costs;
  for (int v : shift_values) shift_costs.push_back(std::abs(v));

  auto out_of_budget = [&] { return report.examined >= config.budget; };

  for (const auto& tau : taus) {
    if (out_of_budget()) break;
    Verdict tv = oracle.is_trivial(tau);
    if (tv == Verdict::inconclusive) {
      ++report.inconclusive;
      continue;
    }
    if (tv == Verdict::trivial) continue;
    for (int r = 1; r <= config.max_factors && !out_of_budget(); ++r) {
      // with the whole product conjugated, the first factor may be fixed
      auto conj_tuples = detail_gt::tuples_by_cost(r - 1, conj_costs);
      auto shift_tuples = detail_gt::tuples_by_cost(r - 1, shift_costs);
      for (const auto& ct : conj_tuples) {
        if (out_of_budget()) break;
        std::vector<Word> gs{Word()};
        for (int ci : ct) gs.push_back(conjs[ci]);
        for (const auto& st : shift_tuples) {
          if (out_of_budget()) break;
          std::vector<int> ns{0};
          for (int si : st) ns.push_back(shift_values[si]);
          ++report.examined;
          Word prod = gt_product(tau, gs, ns, oracle.has_shift());
          Verdict pv = oracle.is_trivial(prod);
          if (pv == Verdict::inconclusive) {
            ++report.inconclusive;
          } else if (pv == Verdict::trivial) {
            report.findings.push_back({tau, gs, ns, prod});
          }
        }
      }
    }
  }
  report.budget_exhausted = out_of_budget();
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return report;
}

inline bool check_finding(const Finding& f, GroupOracle& oracle) {
  if (f.conjugators.empty() || f.conjugators.size() != f.shifts.size())
    return false;
  if (oracle.is_trivial(f.tau) != Verdict::nontrivial) return false;
  Word prod;
  try {
    prod = gt_product(f.tau, f.conjugators, f.shifts, oracle.has_shift());
  } catch (const std::invalid_argument&) {
    return false;
  }
  if (prod != f.product && reduce(f.product) != prod) return false;
  return oracle.is_trivial(prod) == Verdict::trivial;
}

}  // namespace onerel
