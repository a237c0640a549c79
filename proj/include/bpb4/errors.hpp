#pragma once

#include <stdexcept>
#include <string>

namespace bpb4 {

/// Input lies outside the mathematical domain of an operation
/// (e.g. a point not on the face E1, a non-unit operator).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A stated precondition (slack, membership, distance) does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested space family or backend combination is not implemented.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A brute-force request exceeds the supported search size.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A postcondition guaranteed by construction failed. Signals a bug or an
/// input that slipped past validation.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bpb4
