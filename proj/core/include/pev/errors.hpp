#pragma once

#include <stdexcept>
#include <string>

namespace pev {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

class InvalidDensity : public Error {
 public:
  using Error::Error;
};

/// Raised when a Lüders update is requested on a branch whose transition
/// probability is below zero_prob_tol.
class ZeroProbabilityBranch : public Error {
 public:
  using Error::Error;
};

/// Raised by path sampling when every branch of a step has zero weight.
class AllBranchesZero : public Error {
 public:
  using Error::Error;
};

class InvalidWidth : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateGrid : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pev
