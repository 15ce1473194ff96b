#ifndef ZSLAB_ERRORS_HPP_
#define ZSLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace zslab {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Matrix/vector shapes do not match the operation.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// An element lies outside the domain of a table-defined structure.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A product or image left the configured finite window.
class WindowOverflowError : public Error {
 public:
  explicit WindowOverflowError(const std::string& msg) : Error(msg) {}
};

/// Operation requires structure the object does not have (e.g. right LCM).
class UnsupportedStructureError : public Error {
 public:
  explicit UnsupportedStructureError(const std::string& msg) : Error(msg) {}
};

/// A builder refused to construct an object; carries the reason.
class ConstructionError : public Error {
 public:
  explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

/// Generator data does not extend to a consistent action.
class ExtensionError : public ConstructionError {
 public:
  explicit ExtensionError(const std::string& msg) : ConstructionError(msg) {}
};

/// Configuration text failed to parse or resolve.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, int line)
      : Error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace zslab

#endif  // ZSLAB_ERRORS_HPP_
