#pragma once

#include <stdexcept>
#include <string>

namespace dplap {

// Numerical failures. Distinct from precondition violations, which are
// reported as std::invalid_argument / std::domain_error (logic_error family).

// An iteration exhausted its budget without reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation requested at a pole, on a cylinder axis, or at a kink radius.
class SingularityError : public std::runtime_error {
 public:
  explicit SingularityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A counterexample search ran out of room. The message says which parameter
// (larger s, smaller step) would extend the search.
class SearchError : public std::runtime_error {
 public:
  explicit SearchError(const std::string& msg) : std::runtime_error(msg) {}
};

// A radial profile failed a superharmonicity check (e.g. non-monotone
// chord constants beyond the noise tolerance).
class ProfileError : public std::runtime_error {
 public:
  explicit ProfileError(const std::string& msg) : std::runtime_error(msg) {}
};

// A scenario file failed to parse or validate. The message names the
// offending key so the CLI can print it verbatim before exiting 2.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dplap
