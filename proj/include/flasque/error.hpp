#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flasque {

// Base for every error raised by the library. Mathematical check failures are
// never errors; they are reported as data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input (CLI maps this to exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

// A lattice expected to lie inside another one does not.
class ContainmentError : public Error {
 public:
  ContainmentError(std::size_t witness, const std::string& what)
      : Error(what), witness_(witness) {}
  std::size_t witness() const noexcept { return witness_; }

 private:
  std::size_t witness_;
};

// Requested computation lies outside the supported range.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace flasque
