#pragma once

#include <stdexcept>
#include <string>

namespace ehma {

/// An observation had (numerically) zero probability under the current belief.
/// The count filter cannot condition on it; callers decide how to recover
/// (BayesController resets to the stationary prior and counts the event).
class zero_evidence_error : public std::runtime_error {
 public:
  explicit zero_evidence_error(const std::string& what)
      : std::runtime_error(what) {}
};

/// A numerical solver failed to reach its requested accuracy.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ehma
