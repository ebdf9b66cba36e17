#pragma once

#include <stdexcept>
#include <string>

namespace availkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a precondition (negative time, zero trials, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exponential-cost procedure was asked to exceed its configured bound.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// No analytic route is sound for the model; only the oracles apply.
class RequiresOracle : public Error {
 public:
  using Error::Error;
};

/// A gate other than AND/OR/basic was met where a coherent tree is required.
class NonCoherentTree : public Error {
 public:
  using Error::Error;
};

/// An event id has no probability assigned.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace availkit
