#pragma once

#include <stdexcept>
#include <string>

namespace qmetro {

// Invalid input: negative times, weights off the simplex, out-of-range squeezing.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The measured signal has (numerically) zero slope in omega, so error
// propagation is undefined at this point.
class DegenerateSignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The process matrix has an eigenvalue below -1e-8. Indicates a formula bug upstream.
class NonCptpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnachievableTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoFinitePoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense-oracle state construction disagrees with the closed-form moments.
class ConventionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StepSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qmetro
