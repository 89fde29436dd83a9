#pragma once

#include <stdexcept>
#include <string>

namespace qatunnel {

// Base class for every failure raised by this library. `code()` is a short
// machine-readable tag that the CLI forwards on its error line.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

class InvalidInstance : public Error {
 public:
  explicit InvalidInstance(const std::string& what) : Error("invalid_instance", what) {}
};

// Two lowest eigenvalues collapsed below numerical resolution.
class DegenerateSpectrum : public Error {
 public:
  explicit DegenerateSpectrum(const std::string& what) : Error("degenerate_spectrum", what) {}
};

class GapSearchFailure : public Error {
 public:
  explicit GapSearchFailure(const std::string& what) : Error("gap_search_failure", what) {}
};

// A configuration of zero Boltzmann weight was evaluated where a finite value was required.
class ZeroWeight : public Error {
 public:
  explicit ZeroWeight(const std::string& what) : Error("zero_weight", what) {}
};

}  // namespace qatunnel
