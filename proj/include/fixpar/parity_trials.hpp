#pragma once

// Distributions attached to a round of independent biased coin tosses whose
// total is forced into a parity class: conditioned Poisson binomials, the
// die-then-toss round with one parity-locked coin, their mixture and partition
// decompositions, and the comparison bounds between them.

#include <algorithm>
#include <utility>
#include <vector>

#include "fixpar/errors.hpp"
#include "fixpar/numeric.hpp"
#include "fixpar/pmf.hpp"

namespace fixpar {

// Multiset of success probabilities, each strictly inside (0,1).
template <class S>
class BiasSet {
 public:
  explicit BiasSet(std::vector<S> params) : params_(std::move(params)) {
    if (params_.empty()) throw FixparError("bias set must be nonempty");
    for (const S& p : params_)
      if (!(p > S(0) && p < S(1)))
        throw FixparError("bias parameters must lie strictly inside (0,1)");
  }

  static BiasSet constant(int n, const S& p) {
    return BiasSet(std::vector<S>(static_cast<std::size_t>(n), p));
  }

  int size() const { return static_cast<int>(params_.size()); }
  const S& param(int i) const { return params_[static_cast<std::size_t>(i)]; }
  const std::vector<S>& params() const { return params_; }

  BiasSet without(int i) const {
    std::vector<S> rest = params_;
    rest.erase(rest.begin() + i);
    return BiasSet(std::move(rest));
  }

  BiasSet subset(const std::vector<int>& indices) const {
    std::vector<S> picked;
    picked.reserve(indices.size());
    for (int i : indices) picked.push_back(params_[static_cast<std::size_t>(i)]);
    return BiasSet(std::move(picked));
  }

  bool is_constant() const {
    return std::all_of(params_.begin(), params_.end(),
                       [&](const S& p) { return p == params_.front(); });
  }

  S sum() const {
    S total(0);
    for (const S& p : params_) total += p;
    return total;
  }
  S mean() const { return sum() / S(size()); }

 private:
  std::vector<S> params_;
};

// Die distribution over the coins of a round: nonnegative, sums to one.
template <class S>
class WeightVector {
 public:
  explicit WeightVector(std::vector<S> weights,
                        const S& mass_tol = scalar_traits<S>::mass_tol())
      : weights_(std::move(weights)) {
    if (weights_.empty()) throw FixparError("weight vector must be nonempty");
    S total(0);
    for (const S& w : weights_) {
      if (w < S(0)) throw FixparError("weights must be nonnegative");
      total += w;
    }
    if (!approx_equal<S>(total, S(1), mass_tol))
      throw FixparError("weights must sum to 1");
  }

  static WeightVector uniform(int n) {
    return WeightVector(std::vector<S>(static_cast<std::size_t>(n), S(1) / S(n)));
  }

  int size() const { return static_cast<int>(weights_.size()); }
  const S& weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<S> weights_;
};

template <class S>
struct ParitySplit {
  S even;  // P[success count is even]
  S odd;
};

// Closed form: P[even] = (1 + prod_i (1 - 2 p_i)) / 2.
template <class S>
ParitySplit<S> parity_split(const BiasSet<S>& biases) {
  S prod(1);
  for (const S& p : biases.params()) prod *= S(1) - S(2) * p;
  S even = (S(1) + prod) / S(2);
  return {even, S(1) - even};
}

// Law of the total success count (Poisson binomial).
template <class S>
Pmf<S> poisson_binomial(const BiasSet<S>& biases) {
  Pmf<S> d;
  for (const S& p : biases.params()) d = convolve(d, Pmf<S>::bernoulli(p));
  return d;
}

// Success count conditioned on landing in one parity class.
template <class S>
Pmf<S> conditional_parity_pmf(const BiasSet<S>& biases, Parity b) {
  return condition_on_parity(poisson_binomial(biases), b);
}

// Constant-parameter case: the binomial conditioned on parity.
template <class S>
Pmf<S> conditional_binomial(int n, const S& p, Parity b) {
  return conditional_parity_pmf(BiasSet<S>::constant(n, p), b);
}

namespace detail {

// Given the law of the n-1 free tosses, lock the remaining coin so the total
// lands in parity class b: mass(k) = base(k) + base(k-1) at matching k.
template <class S>
Pmf<S> lock_last_coin(const Pmf<S>& base, int n, Parity b) {
  std::vector<S> out(static_cast<std::size_t>(n) + 1, S(0));
  for (int k = 0; k <= n; ++k)
    if (matches_parity(k, b)) out[static_cast<std::size_t>(k)] = base.mass(k) + base.mass(k - 1);
  return Pmf<S>::trusted(std::move(out));
}

}  // namespace detail

// Parity-locked toss round: a die with the given weights picks one coin, the
// others toss freely, and the picked coin is forced to put the total in b.
template <class S>
Pmf<S> fixed_parity_toss_pmf(const BiasSet<S>& biases, const WeightVector<S>& weights, Parity b) {
  const int n = biases.size();
  if (n < 2) throw FixparError("parity-locked round needs at least two coins");
  if (weights.size() != n) throw FixparError("weight vector length mismatch");
  std::vector<S> out(static_cast<std::size_t>(n) + 1, S(0));
  for (int i = 0; i < n; ++i) {
    if (weights.weight(i) == S(0)) continue;
    Pmf<S> rest = poisson_binomial(biases.without(i));
    for (int k = 0; k <= n; ++k)
      if (matches_parity(k, b))
        out[static_cast<std::size_t>(k)] += weights.weight(i) * (rest.mass(k) + rest.mass(k - 1));
  }
  return Pmf<S>::trusted(std::move(out));
}

// Constant-parameter rounds are die-independent; these build them directly.
template <class S>
Pmf<S> even_sum_toss(int n, const S& p) {
  return detail::lock_last_coin(Pmf<S>::binomial(n - 1, p), n, Parity::even);
}

template <class S>
Pmf<S> odd_sum_toss(int n, const S& p) {
  return detail::lock_last_coin(Pmf<S>::binomial(n - 1, p), n, Parity::odd);
}

namespace detail {

template <class S>
bool pmf_close(const Pmf<S>& a, const Pmf<S>& b, const S& tol) {
  int hi = std::max(a.max_outcome(), b.max_outcome());
  for (int k = 0; k <= hi; ++k)
    if (!approx_equal<S>(a.mass(k), b.mass(k), tol)) return false;
  return true;
}

}  // namespace detail

// The parity-locked round equals the two-stage draw: pick coin i by the die,
// flip one coin to decide the parity class of the other n-1 tosses, then draw
// from their conditioned law, adding 1 when the locked coin came up heads.
template <class S>
bool verify_mixture_representation(const BiasSet<S>& biases, const WeightVector<S>& weights,
                                   Parity b, const S& tol = scalar_traits<S>::verdict_tol()) {
  const int n = biases.size();
  Pmf<S> direct = fixed_parity_toss_pmf(biases, weights, b);
  std::vector<std::pair<S, Pmf<S>>> blend;
  for (int i = 0; i < n; ++i) {
    if (weights.weight(i) == S(0)) continue;
    BiasSet<S> rest = biases.without(i);
    auto split = parity_split(rest);
    if (b == Parity::even) {
      // Total even: locked coin tails + even rest, or heads + odd rest.
      blend.emplace_back(weights.weight(i) * split.even, conditional_parity_pmf(rest, Parity::even));
      blend.emplace_back(weights.weight(i) * split.odd,
                         conditional_parity_pmf(rest, Parity::odd).shifted(1));
    } else {
      blend.emplace_back(weights.weight(i) * split.odd, conditional_parity_pmf(rest, Parity::odd));
      blend.emplace_back(weights.weight(i) * split.even,
                         conditional_parity_pmf(rest, Parity::even).shifted(1));
    }
  }
  if (!detail::pmf_close(direct, mix(blend, std::max(tol, scalar_traits<S>::mass_tol())), tol))
    return false;

  if (biases.is_constant()) {
    // Constant parameters drop the die: one coin flip at the (n-1)-toss parity
    // split decides which conditioned binomial the rest is drawn from.
    const S p = biases.param(0);
    auto split = parity_split(BiasSet<S>::constant(n - 1, p));
    std::vector<std::pair<S, Pmf<S>>> constant_blend;
    if (b == Parity::even) {
      constant_blend.emplace_back(split.even, conditional_binomial(n - 1, p, Parity::even));
      constant_blend.emplace_back(split.odd,
                                  conditional_binomial(n - 1, p, Parity::odd).shifted(1));
      if (!detail::pmf_close(even_sum_toss(n, p),
                             mix(constant_blend, std::max(tol, scalar_traits<S>::mass_tol())), tol))
        return false;
    } else {
      constant_blend.emplace_back(split.odd, conditional_binomial(n - 1, p, Parity::odd));
      constant_blend.emplace_back(split.even,
                                  conditional_binomial(n - 1, p, Parity::even).shifted(1));
      if (!detail::pmf_close(odd_sum_toss(n, p),
                             mix(constant_blend, std::max(tol, scalar_traits<S>::mass_tol())), tol))
        return false;
    }
  }
  return true;
}

// Split I into (I1, I2): the conditioned law of the whole is the two-term
// mixture of convolved conditioned laws whose class parities combine to b.
template <class S>
bool verify_partition_mixture(const BiasSet<S>& biases, const std::vector<int>& first_part,
                              Parity b, const S& tol = scalar_traits<S>::verdict_tol()) {
  const int n = biases.size();
  std::vector<char> in_first(static_cast<std::size_t>(n), 0);
  for (int i : first_part) {
    if (i < 0 || i >= n) throw FixparError("partition index out of range");
    if (in_first[static_cast<std::size_t>(i)]) throw FixparError("partition index repeated");
    in_first[static_cast<std::size_t>(i)] = 1;
  }
  std::vector<int> second_part;
  for (int i = 0; i < n; ++i)
    if (!in_first[static_cast<std::size_t>(i)]) second_part.push_back(i);
  if (first_part.empty() || second_part.empty())
    throw FixparError("both partition cells must be nonempty");

  BiasSet<S> left = biases.subset(first_part);
  BiasSet<S> right = biases.subset(second_part);
  auto split_all = parity_split(biases);
  auto split_left = parity_split(left);
  auto split_right = parity_split(right);

  Pmf<S> lhs = conditional_parity_pmf(biases, b);
  std::vector<std::pair<S, Pmf<S>>> blend;
  if (b == Parity::even) {
    blend.emplace_back(split_left.even * split_right.even / split_all.even,
                       convolve(conditional_parity_pmf(left, Parity::even),
                                conditional_parity_pmf(right, Parity::even)));
    blend.emplace_back(split_left.odd * split_right.odd / split_all.even,
                       convolve(conditional_parity_pmf(left, Parity::odd),
                                conditional_parity_pmf(right, Parity::odd)));
  } else {
    blend.emplace_back(split_left.even * split_right.odd / split_all.odd,
                       convolve(conditional_parity_pmf(left, Parity::even),
                                conditional_parity_pmf(right, Parity::odd)));
    blend.emplace_back(split_left.odd * split_right.even / split_all.odd,
                       convolve(conditional_parity_pmf(left, Parity::odd),
                                conditional_parity_pmf(right, Parity::even)));
  }
  return detail::pmf_close(lhs, mix(blend, std::max(tol, scalar_traits<S>::mass_tol())), tol);
}

// Two- and three-coin conditioned laws collapse to a single rescaled coin.
template <class S>
Pmf<S> rescaled_coin_form(const BiasSet<S>& biases, Parity b) {
  auto split = parity_split(biases);
  if (biases.size() == 2) {
    const S& p1 = biases.param(0);
    const S& p2 = biases.param(1);
    if (b == Parity::even) {
      S heads = p1 * p2 / split.even;  // doubled coin on {0,2}
      return Pmf<S>::trusted({S(1) - heads, S(0), heads});
    }
    return Pmf<S>::delta(1);  // exactly one success
  }
  if (biases.size() == 3) {
    const S& q1 = biases.param(0);
    const S& q2 = biases.param(1);
    const S& q3 = biases.param(2);
    if (b == Parity::even) {
      S heads = S(1) - (S(1) - q1) * (S(1) - q2) * (S(1) - q3) / split.even;
      return Pmf<S>::trusted({S(1) - heads, S(0), heads});
    }
    S heads = q1 * q2 * q3 / split.odd;  // doubled coin shifted to {1,3}
    return Pmf<S>::trusted({S(0), S(1) - heads, S(0), heads});
  }
  throw FixparError("rescaled coin form needs exactly 2 or 3 coins");
}

// Repeatedly peel a doubleton off the end of the bias list via the partition
// mixture until every leaf is a doubleton/tripleton in rescaled-coin form.
template <class S>
Pmf<S> iterated_parity_decomposition(const BiasSet<S>& biases, Parity b) {
  const int n = biases.size();
  if (n <= 3) return rescaled_coin_form(biases, b);
  std::vector<int> head_indices, tail_indices;
  for (int i = 0; i < n - 2; ++i) head_indices.push_back(i);
  tail_indices = {n - 2, n - 1};
  BiasSet<S> head = biases.subset(head_indices);
  BiasSet<S> tail = biases.subset(tail_indices);
  auto split_all = parity_split(biases);
  auto split_head = parity_split(head);
  auto split_tail = parity_split(tail);
  std::vector<std::pair<S, Pmf<S>>> blend;
  if (b == Parity::even) {
    blend.emplace_back(split_head.even * split_tail.even / split_all.even,
                       convolve(iterated_parity_decomposition(head, Parity::even),
                                rescaled_coin_form(tail, Parity::even)));
    blend.emplace_back(split_head.odd * split_tail.odd / split_all.even,
                       convolve(iterated_parity_decomposition(head, Parity::odd),
                                rescaled_coin_form(tail, Parity::odd)));
  } else {
    blend.emplace_back(split_head.even * split_tail.odd / split_all.odd,
                       convolve(iterated_parity_decomposition(head, Parity::even),
                                rescaled_coin_form(tail, Parity::odd)));
    blend.emplace_back(split_head.odd * split_tail.even / split_all.odd,
                       convolve(iterated_parity_decomposition(head, Parity::odd),
                                rescaled_coin_form(tail, Parity::even)));
  }
  return mix(blend, scalar_traits<S>::exact ? S(0) : S(1e-9));
}

// Interleaved tail bounds between the two conditioned binomials:
// P[odd >= 2k-1] >= P[even >= 2k] >= P[odd >= 2k+1] for every k.
template <class S>
bool verify_conditional_binomial_inequalities(int n, const S& p,
                                              const S& tol = scalar_traits<S>::verdict_tol()) {
  Pmf<S> even = conditional_binomial(n, p, Parity::even);
  Pmf<S> odd = conditional_binomial(n, p, Parity::odd);
  for (int k = 0; k <= n / 2 + 2; ++k) {
    if (!geq_within<S>(ccdf(odd, 2 * k - 1), ccdf(even, 2 * k), tol)) return false;
    if (!geq_within<S>(ccdf(even, 2 * k), ccdf(odd, 2 * k + 1), tol)) return false;
  }
  return true;
}

enum class CompositeMode {
  direct,   // coin heads -> 1 + odd-conditioned rest, tails -> even-conditioned rest
  flipped,  // coin heads -> 1 + even-conditioned rest, tails -> odd-conditioned rest
};

// Law of coin + conditioned binomial whose class follows (or opposes) the coin.
// p1 may sit on the closed interval: the endpoints are degenerate coins.
template <class S>
Pmf<S> composite_parity_sum(const S& p1, int n, const S& p, CompositeMode mode) {
  if (p1 < S(0) || p1 > S(1)) throw FixparError("coin bias must lie in [0,1]");
  Parity tails_class = mode == CompositeMode::direct ? Parity::even : Parity::odd;
  std::vector<std::pair<S, Pmf<S>>> blend;
  if (p1 < S(1)) blend.emplace_back(S(1) - p1, conditional_binomial(n, p, tails_class));
  if (p1 > S(0))
    blend.emplace_back(p1, conditional_binomial(n, p, opposite(tails_class)).shifted(1));
  return mix(blend, scalar_traits<S>::mass_tol());
}

template <class S>
struct MedianLowerBoundReport {
  std::pair<int, int> even_toss_median;
  std::pair<int, int> odd_toss_median;
  S bound;  // (n-1)p - 1
  bool holds;
};

// Both parity-locked rounds have all their medians at or above (n-1)p - 1.
template <class S>
MedianLowerBoundReport<S> median_lower_bound_check(int n, const S& p,
                                                   const S& tol = scalar_traits<S>::verdict_tol()) {
  MedianLowerBoundReport<S> report;
  report.even_toss_median = median_interval(even_sum_toss(n, p), tol);
  report.odd_toss_median = median_interval(odd_sum_toss(n, p), tol);
  report.bound = S(n - 1) * p - S(1);
  report.holds = geq_within<S>(S(report.even_toss_median.first), report.bound, tol) &&
                 geq_within<S>(S(report.odd_toss_median.first), report.bound, tol);
  return report;
}

template <class S>
struct IntervalBoundReport {
  S window_probability;           // P[b <= sum of biased tosses <= c]
  S binomial_window_probability;  // same window under the mean-bias binomial
  bool holds;
};

// The mean-parameter binomial never beats the heterogeneous round on a window
// [b, c] that brackets the mean. Requires 0 <= b <= sum(p_i) <= c <= n.
template <class S>
IntervalBoundReport<S> hoeffding_interval_bound(const BiasSet<S>& biases, int b, int c,
                                                const S& tol = scalar_traits<S>::verdict_tol()) {
  const int n = biases.size();
  const S mean_total = biases.sum();
  if (!(b >= 0 && S(b) <= mean_total && mean_total <= S(c) && c <= n))
    throw FixparError("window must satisfy 0 <= b <= n*mean <= c <= n");
  auto window = [&](const Pmf<S>& d) {
    S mass(0);
    for (int k = b; k <= c; ++k) mass += d.mass(k);
    return mass;
  };
  IntervalBoundReport<S> report;
  report.window_probability = window(poisson_binomial(biases));
  report.binomial_window_probability = window(Pmf<S>::binomial(n, biases.mean()));
  report.holds =
      geq_within<S>(report.window_probability, report.binomial_window_probability, tol);
  return report;
}

}  // namespace fixpar
