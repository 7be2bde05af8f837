#pragma once

#include <stdexcept>
#include <string>

namespace ccomp {

/// A probabilistic-method search ran out of retries/realizations. The object
/// being searched for exists, but the budget missed it.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Input files / parameters failed validation.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ccomp
