#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tabgrid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or schema-violating input document.
class InputError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration; carries every violation found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class DegenerateGrid : public Error {
 public:
  using Error::Error;
};

class EmptyBody : public Error {
 public:
  using Error::Error;
};

class InsufficientContext : public Error {
 public:
  using Error::Error;
};

class DuplicateKey : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

}  // namespace tabgrid
