#ifndef GROUPQUANT_ERRORS_HPP
#define GROUPQUANT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gq {

// Error taxonomy mirrors the CLI exit codes: configuration problems (2),
// ellipticity/invariance certificate failures (3), band/grid resolution
// problems (4).

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class EllipticityError : public std::runtime_error {
public:
  EllipticityError(const std::string& what, std::string witness = {})
      : std::runtime_error(witness.empty() ? what : what + " [witness: " + witness + "]"),
        witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

private:
  std::string witness_;
};

class InvarianceError : public std::runtime_error {
public:
  explicit InvarianceError(const std::string& what) : std::runtime_error(what) {}
};

class ResolutionError : public std::runtime_error {
public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gq

#endif
