#pragma once

#include <stdexcept>
#include <string>

namespace ihlab {

/// Malformed input: dimension mismatch, unparsable file, bad flag value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain (non-isotropic class for a
/// filtration, non-Lefschetz class for an sl2-triple, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The model does not carry the structure an operation needs, e.g. the
/// torus bigrading of a Hodge marking is inconsistent in some degree.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Verbitsky-component builder could not certify its ideal.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No rational isotropic vector was found within the sampling budget.
class ArithmeticObstruction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ihlab
