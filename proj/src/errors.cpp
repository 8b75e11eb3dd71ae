#include "errors.hpp"

namespace dra {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string msg = "validation failed";
  for (const auto& issue : issues) {
    msg += "\n  - ";
    msg += issue;
  }
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

}  // namespace dra
