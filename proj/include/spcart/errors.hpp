#pragma once

#include <stdexcept>
#include <string>

namespace spcart {

/// Base of every error the library raises. The CLI maps each subclass to an
/// exit code (argument 2, input/data 3, degeneracy 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside its documented domain.
class ArgumentError : public Error {
 public:
  ArgumentError(const std::string& parameter, const std::string& domain,
                const std::string& message)
      : Error(parameter + ": " + message + " (expected " + domain + ")"),
        parameter_(parameter),
        domain_(domain) {}

  const std::string& parameter() const noexcept { return parameter_; }
  const std::string& domain() const noexcept { return domain_; }

 private:
  std::string parameter_;
  std::string domain_;
};

/// Input matrices that are malformed: non-finite, asymmetric, wrong shape.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Bundled data failed its integrity check.
class DataIntegrityError : public InputError {
 public:
  using InputError::InputError;
};

/// A factorization hit a rank deficiency the algorithm cannot continue from.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& message, double offending_value)
      : Error(message), offending_value_(offending_value) {}

  double offending_value() const noexcept { return offending_value_; }

 private:
  double offending_value_;
};

}  // namespace spcart
