#include "reachbound/common/errors.h"

namespace reachbound {
namespace {

std::string Join(const std::vector<std::string>& lines) {
  std::string s = "invalid problem specification";
  for (const auto& l : lines) s += "\n  - " + l;
  return s;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> diagnostics)
    : InputError(Join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace reachbound
