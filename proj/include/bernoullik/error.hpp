#ifndef BERNOULLIK_ERROR_HPP
#define BERNOULLIK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bernoullik {

enum class ErrorKind {
  CapExceeded,
  ElementNotInGroup,
  NotASubgroup,
  WindowRequired,
  ShapeMismatch,
  GcdNotOne,
  ActionNotFree,
  NotComputable,
  ZNotInfinite,
  NotFinitelyGenerated,
  InvalidInput,
  Internal,
};

const char* to_string(ErrorKind kind);

/// Every failure surfaced by the library carries one of the kinds above so
/// the command-line front end can map it to an exit status.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::WindowRequired: return "WindowRequired";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::GcdNotOne: return "GcdNotOne";
    case ErrorKind::ActionNotFree: return "ActionNotFree";
    case ErrorKind::NotComputable: return "NotComputable";
    case ErrorKind::ZNotInfinite: return "ZNotInfinite";
    case ErrorKind::NotFinitelyGenerated: return "NotFinitelyGenerated";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace bernoullik

#endif  // BERNOULLIK_ERROR_HPP
