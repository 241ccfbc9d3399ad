#pragma once

// Monotone coupling of a history-dependent Bernoulli process against an
// independent Ber(p) sequence. Joint draws are built so the independent chain
// never exceeds (lower) / never falls below (upper) the process, pathwise.

#include <functional>
#include <random>
#include <span>
#include <vector>

#include "fixpar/errors.hpp"
#include "fixpar/numeric.hpp"
#include "fixpar/pmf.hpp"

namespace fixpar {

// Success probability of trial i may depend on the outcomes of trials 0..i-1.
template <class S>
struct ConditionalTrialProcess {
  int length = 0;
  std::function<S(int index, std::span<const std::uint8_t> history)> success_probability;
};

enum class CouplingDirection {
  lower,  // process always at least p: independent chain is a thinning, v <= u
  upper,  // process always at most p: independent chain is a boost, v >= u
};

struct CoupledPair {
  std::vector<std::uint8_t> process;    // u: the history-dependent draws
  std::vector<std::uint8_t> bernoulli;  // v: marginally i.i.d. Ber(p)
};

namespace detail {

template <class S>
void require_feasible(const S& q, const S& p, CouplingDirection dir) {
  if (q < S(0) || q > S(1)) throw FixparError("conditional probability outside [0,1]");
  if (dir == CouplingDirection::lower && q < p)
    throw FixparError("coupling infeasible: process probability fell below p");
  if (dir == CouplingDirection::upper && q > p)
    throw FixparError("coupling infeasible: process probability rose above p");
}

}  // namespace detail

inline CoupledPair coupled_sample(const ConditionalTrialProcess<double>& process, double p,
                                  CouplingDirection dir, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CoupledPair pair;
  pair.process.reserve(static_cast<std::size_t>(process.length));
  pair.bernoulli.reserve(static_cast<std::size_t>(process.length));
  for (int i = 0; i < process.length; ++i) {
    double q = process.success_probability(i, std::span<const std::uint8_t>(pair.process));
    detail::require_feasible(q, p, dir);
    bool u = unit(rng) < q;
    bool v;
    if (dir == CouplingDirection::lower) {
      v = u && unit(rng) < p / q;
    } else {
      v = u || unit(rng) < (p - q) / (1.0 - q);
    }
    pair.process.push_back(u);
    pair.bernoulli.push_back(v);
  }
  return pair;
}

// One leaf of the joint randomness tree, with its exact probability.
template <class S>
struct CouplingAtom {
  std::vector<std::uint8_t> process;
  std::vector<std::uint8_t> bernoulli;
  S probability;
};

// Expands every nonzero branch of the joint draw. At each step the pair (u,v)
// takes one of at most three values, so there are at most 3^length atoms.
template <class S>
std::vector<CouplingAtom<S>> enumerate_coupling_atoms(const ConditionalTrialProcess<S>& process,
                                                      const S& p, CouplingDirection dir) {
  std::vector<CouplingAtom<S>> atoms;
  CouplingAtom<S> current;
  current.probability = S(1);
  auto descend = [&](auto&& self, int i) -> void {
    if (i == process.length) {
      atoms.push_back(current);
      return;
    }
    S q = process.success_probability(i, std::span<const std::uint8_t>(current.process));
    detail::require_feasible(q, p, dir);
    auto branch = [&](bool u, bool v, const S& prob) {
      if (prob == S(0)) return;
      current.process.push_back(u);
      current.bernoulli.push_back(v);
      S saved = current.probability;
      current.probability *= prob;
      self(self, i + 1);
      current.probability = saved;
      current.process.pop_back();
      current.bernoulli.pop_back();
    };
    if (dir == CouplingDirection::lower) {
      branch(true, true, p);
      branch(true, false, q - p);
      branch(false, false, S(1) - q);
    } else {
      branch(true, true, q);
      branch(false, true, p - q);
      branch(false, false, S(1) - p);
    }
  };
  descend(descend, 0);
  return atoms;
}

template <class S>
struct CouplingCheck {
  bool pathwise_ok = false;           // ordering holds on every atom
  bool process_marginal_ok = false;   // u-marginal equals the process law
  bool bernoulli_marginal_ok = false; // v-marginal is an independent Ber(p) vector
  bool sum_dominance_ok = false;      // success totals are stochastically ordered
  std::size_t atom_count = 0;

  bool all_ok() const {
    return pathwise_ok && process_marginal_ok && bernoulli_marginal_ok && sum_dominance_ok;
  }
};

// Exact verification over the full atom tree (meant for short processes).
template <class S>
CouplingCheck<S> check_coupling_exact(const ConditionalTrialProcess<S>& process, const S& p,
                                      CouplingDirection dir) {
  const int s = process.length;
  auto atoms = enumerate_coupling_atoms(process, p, dir);
  CouplingCheck<S> check;
  check.atom_count = atoms.size();

  check.pathwise_ok = true;
  for (const auto& atom : atoms)
    for (int i = 0; i < s; ++i) {
      bool u = atom.process[static_cast<std::size_t>(i)];
      bool v = atom.bernoulli[static_cast<std::size_t>(i)];
      if (dir == CouplingDirection::lower ? v > u : v < u) check.pathwise_ok = false;
    }

  auto key = [s](const std::vector<std::uint8_t>& bits) {
    std::uint32_t k = 0;
    for (int i = 0; i < s; ++i) k |= static_cast<std::uint32_t>(bits[static_cast<std::size_t>(i)]) << i;
    return k;
  };
  std::vector<S> u_marginal(static_cast<std::size_t>(1) << s, S(0));
  std::vector<S> v_marginal(static_cast<std::size_t>(1) << s, S(0));
  std::vector<S> u_sum(static_cast<std::size_t>(s) + 1, S(0));
  std::vector<S> v_sum(static_cast<std::size_t>(s) + 1, S(0));
  for (const auto& atom : atoms) {
    u_marginal[key(atom.process)] += atom.probability;
    v_marginal[key(atom.bernoulli)] += atom.probability;
    int u_ones = 0, v_ones = 0;
    for (int i = 0; i < s; ++i) {
      u_ones += atom.process[static_cast<std::size_t>(i)];
      v_ones += atom.bernoulli[static_cast<std::size_t>(i)];
    }
    u_sum[static_cast<std::size_t>(u_ones)] += atom.probability;
    v_sum[static_cast<std::size_t>(v_ones)] += atom.probability;
  }

  // Process law, computed independently by walking histories.
  check.process_marginal_ok = true;
  std::vector<std::uint8_t> history;
  for (std::uint32_t word = 0; word < (1u << s); ++word) {
    history.clear();
    S prob(1);
    for (int i = 0; i < s; ++i) {
      S q = process.success_probability(i, std::span<const std::uint8_t>(history));
      bool u = word >> i & 1u;
      prob *= u ? q : S(1) - q;
      history.push_back(u);
    }
    if (u_marginal[word] != prob) check.process_marginal_ok = false;
  }

  // Independent Ber(p) vector law.
  check.bernoulli_marginal_ok = true;
  for (std::uint32_t word = 0; word < (1u << s); ++word) {
    S prob(1);
    for (int i = 0; i < s; ++i) prob *= (word >> i & 1u) ? p : S(1) - p;
    if (v_marginal[word] != prob) check.bernoulli_marginal_ok = false;
  }

  auto u_pmf = Pmf<S>::trusted(u_sum);
  auto v_pmf = Pmf<S>::trusted(v_sum);
  auto order = dir == CouplingDirection::lower ? stochastically_dominates(u_pmf, v_pmf, S(0))
                                               : stochastically_dominates(v_pmf, u_pmf, S(0));
  check.sum_dominance_ok = order.dominates;
  return check;
}

}  // namespace fixpar
