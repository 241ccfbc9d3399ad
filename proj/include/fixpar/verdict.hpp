#pragma once

#include <cstdint>
#include <string>

namespace fixpar {

// Outcome labels for verification reports. Sampling-based checks can reach at
// most `statistical_pass`; `pass` is reserved for exact/enumerated evidence.
enum class Verdict { pass, fail, statistical_pass, unverified };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::statistical_pass: return "statistical-pass";
    case Verdict::unverified: return "unverified";
  }
  return "unverified";
}

// Knobs for the sampling fallbacks used when enumeration outgrows its cap.
struct SamplingOptions {
  long long samples = 200000;
  std::uint64_t seed = 20240901;
};

}  // namespace fixpar
