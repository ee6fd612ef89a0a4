#pragma once

#include <stdexcept>
#include <string>

namespace qsched {

/// A network/route/config description violates its invariants.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// A scheduling decision would drive a queue negative. Policies are required
/// to emit feasible decisions, so this indicates a policy bug, not bad input.
class FeasibilityError : public std::logic_error {
 public:
  explicit FeasibilityError(const std::string& what) : std::logic_error(what) {}
};

/// The exact solver exceeded its node-expansion budget.
class SolverBudgetError : public std::runtime_error {
 public:
  explicit SolverBudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsched
