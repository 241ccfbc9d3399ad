#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "fixpar/errors.hpp"
#include "fixpar/numeric.hpp"

namespace fixpar {

enum class Parity { even, odd };

inline Parity opposite(Parity b) { return b == Parity::even ? Parity::odd : Parity::even; }

inline bool matches_parity(int k, Parity b) {
  return (k % 2 == 0) == (b == Parity::even);
}

// Probability mass function of a nonnegative integer variable with finite,
// explicitly bounded support. masses()[k] is the mass at outcome k.
template <class S>
class Pmf {
 public:
  Pmf() : masses_{S(1)} {}

  static Pmf delta(int k) {
    Pmf d;
    d.masses_.assign(static_cast<std::size_t>(k) + 1, S(0));
    d.masses_[static_cast<std::size_t>(k)] = S(1);
    return d;
  }

  static Pmf bernoulli(const S& p) {
    Pmf d;
    d.masses_ = {S(1) - p, p};
    return d;
  }

  static Pmf binomial(int n, const S& p) {
    Pmf d;
    for (int i = 0; i < n; ++i) d = convolve(d, bernoulli(p));
    return d;
  }

  // Validating constructor for externally supplied mass vectors.
  static Pmf from_masses(std::vector<S> masses, const S& mass_tol = scalar_traits<S>::mass_tol()) {
    if (masses.empty()) throw FixparError("pmf needs at least one mass");
    S total(0);
    for (const S& m : masses) {
      if (m < S(0)) throw FixparError("negative probability mass");
      total += m;
    }
    if (!approx_equal<S>(total, S(1), mass_tol)) throw FixparError("masses do not sum to 1");
    Pmf d;
    d.masses_ = std::move(masses);
    return d;
  }

  // For internal construction where the invariant holds by algebra.
  static Pmf trusted(std::vector<S> masses) {
    Pmf d;
    d.masses_ = std::move(masses);
    return d;
  }

  const std::vector<S>& masses() const { return masses_; }
  int max_outcome() const { return static_cast<int>(masses_.size()) - 1; }

  S mass(int k) const {
    if (k < 0 || k > max_outcome()) return S(0);
    return masses_[static_cast<std::size_t>(k)];
  }

  S total_mass() const {
    S t(0);
    for (const S& m : masses_) t += m;
    return t;
  }

  // Distribution of X + offset.
  Pmf shifted(int offset) const {
    std::vector<S> out(masses_.size() + static_cast<std::size_t>(offset), S(0));
    for (std::size_t k = 0; k < masses_.size(); ++k)
      out[k + static_cast<std::size_t>(offset)] = masses_[k];
    return trusted(std::move(out));
  }

  // Distribution of c - X (used to turn a zero-count law into a positive-count law).
  Pmf reflected(int c) const {
    std::vector<S> out(static_cast<std::size_t>(c) + 1, S(0));
    for (int k = 0; k <= max_outcome(); ++k) {
      if (mass(k) == S(0)) continue;
      out[static_cast<std::size_t>(c - k)] += mass(k);
    }
    return trusted(std::move(out));
  }

  friend Pmf convolve(const Pmf& a, const Pmf& b) {
    std::vector<S> out(a.masses_.size() + b.masses_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.masses_.size(); ++i) {
      if (a.masses_[i] == S(0)) continue;
      for (std::size_t j = 0; j < b.masses_.size(); ++j)
        out[i + j] += a.masses_[i] * b.masses_[j];
    }
    return trusted(std::move(out));
  }

 private:
  std::vector<S> masses_;
};

// Finite mixture sum_i w_i * d_i. Weights must be nonnegative and sum to one.
template <class S>
Pmf<S> mix(const std::vector<std::pair<S, Pmf<S>>>& components,
           const S& mass_tol = scalar_traits<S>::mass_tol()) {
  if (components.empty()) throw FixparError("invalid mixture: no components");
  S weight_sum(0);
  std::size_t width = 1;
  for (const auto& [w, d] : components) {
    if (w < S(0)) throw FixparError("invalid mixture: negative weight");
    weight_sum += w;
    width = std::max(width, d.masses().size());
  }
  if (!approx_equal<S>(weight_sum, S(1), mass_tol))
    throw FixparError("invalid mixture: weights do not sum to 1");
  std::vector<S> out(width, S(0));
  for (const auto& [w, d] : components)
    for (std::size_t k = 0; k < d.masses().size(); ++k) out[k] += w * d.masses()[k];
  return Pmf<S>::trusted(std::move(out));
}

// P[X >= t].
template <class S>
S ccdf(const Pmf<S>& d, int t) {
  S tail(0);
  for (int k = std::max(t, 0); k <= d.max_outcome(); ++k) tail += d.mass(k);
  return tail;
}

template <class S>
S expectation(const Pmf<S>& d) {
  S mean(0);
  for (int k = 1; k <= d.max_outcome(); ++k) mean += S(k) * d.mass(k);
  return mean;
}

// The closed set of medians: every mu in [lo, hi] satisfies both
// P[X <= mu] >= 1/2 and P[X >= mu] >= 1/2. Endpoints are integers.
template <class S>
std::pair<int, int> median_interval(const Pmf<S>& d,
                                    const S& tol = scalar_traits<S>::verdict_tol()) {
  const S half = S(1) / S(2);
  int lo = 0;
  {
    S cdf(0);
    for (int k = 0; k <= d.max_outcome(); ++k) {
      cdf += d.mass(k);
      if (geq_within<S>(cdf, half, tol)) {
        lo = k;
        break;
      }
    }
  }
  int hi = d.max_outcome();
  {
    S tail(0);
    for (int k = d.max_outcome(); k >= 0; --k) {
      tail += d.mass(k);
      if (geq_within<S>(tail, half, tol)) {
        hi = k;
        break;
      }
    }
  }
  return {lo, hi};
}

// Usual stochastic order: X >= Y iff P[X >= t] >= P[Y >= t] for every t.
template <class S>
struct DominanceReport {
  bool dominates = false;
  bool equal_in_distribution = false;
  int first_violation = -1;          // threshold where the order first fails, -1 if none
  std::vector<S> ccdf_gaps;          // ccdf_x(t) - ccdf_y(t) for t = 0..max
};

template <class S>
DominanceReport<S> stochastically_dominates(const Pmf<S>& x, const Pmf<S>& y,
                                            const S& tol = scalar_traits<S>::verdict_tol()) {
  DominanceReport<S> report;
  report.dominates = true;
  report.equal_in_distribution = true;
  int t_max = std::max(x.max_outcome(), y.max_outcome());
  report.ccdf_gaps.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    S gap = ccdf(x, t) - ccdf(y, t);
    report.ccdf_gaps.push_back(gap);
    if (gap < -tol) {
      report.dominates = false;
      if (report.first_violation < 0) report.first_violation = t;
    }
    if (abs_value<S>(gap) > tol) report.equal_in_distribution = false;
  }
  return report;
}

// Unimodality on the support lattice: the masses above tol, taken in outcome
// order, rise to a peak and then fall. Structural zeros (parity gaps, leading
// zeros) are skipped rather than counted as valleys.
template <class S>
bool is_unimodal(const Pmf<S>& d, const S& tol = scalar_traits<S>::verdict_tol()) {
  std::vector<S> support;
  for (const S& m : d.masses())
    if (m > tol) support.push_back(m);
  bool falling = false;
  for (std::size_t i = 1; i < support.size(); ++i) {
    S diff = support[i] - support[i - 1];
    if (diff < -tol) falling = true;
    else if (falling && diff > tol) return false;
  }
  return true;
}

// Unimodality of a plain nonnegative integer sequence (exact; used by surveys).
template <class Int>
bool sequence_is_unimodal(const std::vector<Int>& seq) {
  bool falling = false;
  Int prev{};
  bool have_prev = false;
  for (const Int& v : seq) {
    if (v == Int(0)) continue;  // structural zeros are not valleys
    if (have_prev) {
      if (v < prev) falling = true;
      else if (falling && v > prev) return false;
    }
    prev = v;
    have_prev = true;
  }
  return true;
}

// Restriction of d to outcomes of one parity, renormalized.
template <class S>
Pmf<S> condition_on_parity(const Pmf<S>& d, Parity b) {
  std::vector<S> out(d.masses().size(), S(0));
  S kept(0);
  for (int k = 0; k <= d.max_outcome(); ++k) {
    if (!matches_parity(k, b)) continue;
    out[static_cast<std::size_t>(k)] = d.mass(k);
    kept += d.mass(k);
  }
  if (kept == S(0)) throw FixparError("degenerate conditioning: parity class has zero mass");
  for (S& m : out) m /= kept;
  return Pmf<S>::trusted(std::move(out));
}

}  // namespace fixpar
