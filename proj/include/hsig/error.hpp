#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hsig {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  ok = 0,
  usage = 1,
  parse = 2,
  validation = 3,
  resource = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const { return ExitCode::usage; }
};

// Mismatched dimensions, truncations or otherwise unusable arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::parse; }
};

struct Diagnostic {
  std::string where;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  ExitCode exit_code() const override { return ExitCode::validation; }

 private:
  std::vector<Diagnostic> diags_;
};

class ResourceError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const override { return ExitCode::resource; }
};

}  // namespace hsig
