#pragma once

#include <stdexcept>
#include <string>

namespace polya {

// Error taxonomy mapped to CLI exit codes:
//   config_error        -> 1  (bad model parameters, unreadable input)
//   solver_error        -> 2  (non-convergence; message carries the last iterate summary)
//   precondition_error  -> 3  (violated operation precondition)
// std::domain_error / std::out_of_range from the math layer also map to 3.

class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Derivative-type operations refuse levels carried by plateaus instead of returning 0/0.
class degenerate_level_error : public precondition_error {
 public:
  explicit degenerate_level_error(const std::string& what) : precondition_error(what) {}
};

// Signals inputs that contradict a model bound (e.g. a Rayleigh quotient below the
// model spectral gap): bad data, not a solver failure.
class inconsistency_error : public precondition_error {
 public:
  explicit inconsistency_error(const std::string& what) : precondition_error(what) {}
};

}  // namespace polya
