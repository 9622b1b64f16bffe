#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockdim {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position inside a weight expression. Line and column are 1-based.
struct SourcePos {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourcePos pos, const std::string& message);
  const SourcePos& pos() const noexcept { return pos_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  SourcePos pos_;
  std::string detail_;
};

/// Real/complex tag mismatch (complex root, complex argument of log, ...).
class TypeError : public Error {
 public:
  using Error::Error;
};

/// A weight is undefined or -infinity at the evaluation point (log 0, 0^-1, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error(message) {}
  DomainError(const std::string& message, std::vector<std::complex<double>> point);

  const std::vector<std::complex<double>>& point() const noexcept { return point_; }
  bool has_point() const noexcept { return !point_.empty(); }

 private:
  std::vector<std::complex<double>> point_;
};

class NegativeIntegrand : public Error {
 public:
  using Error::Error;
};

/// The Lelong sampler hit a zero of P on the sampling sphere.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace fockdim
