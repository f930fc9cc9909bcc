#ifndef AGN_ERRORS_HPP
#define AGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace agn {

// Every error carries a stable machine-readable code string; the CLI maps
// these to its error object and exit status.
class error : public std::runtime_error {
public:
  error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

// Out-of-regime parameters, violated preconditions.
class parameter_error : public error {
public:
  explicit parameter_error(const std::string& message)
      : error("parameter_error", message) {}
};

// Malformed or inconsistent files.
class io_error : public error {
public:
  io_error(std::string code, const std::string& message)
      : error(std::move(code), message) {}
};

// Inputs on which the requested functional is undefined (f == 0, flat
// directions, empty support).
class degenerate_input_error : public error {
public:
  explicit degenerate_input_error(const std::string& message)
      : error("degenerate_input", message) {}
};

// Iterative solver failures (divergence diagnostics).
class solver_error : public error {
public:
  explicit solver_error(const std::string& message)
      : error("solver_error", message) {}
};

}  // namespace agn

#endif  // AGN_ERRORS_HPP
