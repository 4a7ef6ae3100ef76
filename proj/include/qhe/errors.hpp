#pragma once

#include <stdexcept>
#include <string>

namespace qhe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input to a routine (wrong potential kind, mismatched grids, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(std::size_t band, const std::string& what)
      : Error(what), band_(band) {}
  std::size_t band() const { return band_; }

 private:
  std::size_t band_;
};

class InversionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qhe
