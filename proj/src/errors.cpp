#include "gdpwage/errors.hpp"

#include <sstream>

namespace gdpwage {
namespace {

std::string summarize(const std::vector<Issue>& issues) {
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i > 0) out << "; ";
    if (issues[i].line > 0) out << "line " << issues[i].line << ": ";
    out << issues[i].message;
  }
  return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : std::runtime_error(summarize(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(const std::string& message)
    : std::runtime_error(message), issues_{{0, message}} {}

}  // namespace gdpwage
