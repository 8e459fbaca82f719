#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gdpwage {

/// Raised when an operation's numeric precondition does not hold.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Issue {
  int line = 0;  // 0 when not tied to a source line
  std::string message;
};

/// Raised for malformed input data. Carries every problem found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  explicit ValidationError(const std::string& message);

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace gdpwage
