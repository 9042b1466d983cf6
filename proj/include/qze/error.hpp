#pragma once

#include <stdexcept>
#include <string>

namespace qze {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration (bad grid size, unknown config key, K <= 1, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's contract (mismatched grids, stepping past the stroke end).
class UsageError : public Error {
 public:
  using Error::Error;
};

// A requested eigenstate is not representable on the grid.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// Operation on a state with zero norm.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// The perturbative Zeno predictor was asked for a regime where it has no meaning.
class PredictorRangeError : public Error {
 public:
  using Error::Error;
};

class RunFailedError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(what + ": " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qze
