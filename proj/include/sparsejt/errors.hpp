#ifndef SPARSEJT_ERRORS_HPP
#define SPARSEJT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sparsejt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conflicting or invalid variable domains (state-list mismatch, unknown
/// label or state, subset violations).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A dense size or byte count does not fit in 64 bits.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Normalization of an all-zero table, or a CPT whose conditional slices do
/// not sum to one.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Evidence with probability zero under the model.
class ImpossibleEvidenceError : public Error {
 public:
  using Error::Error;
};

/// Propagation or query requested in the wrong phase.
class PhaseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sparsejt

#endif  // SPARSEJT_ERRORS_HPP
