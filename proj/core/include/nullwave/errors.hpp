#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nullwave {

/// Invalid grid, preset, alignment or other configuration problem.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what), messages_{what} {}
  explicit ConfigError(std::vector<std::string> messages)
      : std::invalid_argument(join(messages)), messages_(std::move(messages)) {}

  /// Every validation failure, not just the first.
  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  static std::string join(const std::vector<std::string>& messages) {
    std::string out;
    for (const auto& m : messages) {
      if (!out.empty()) out += '\n';
      out += m;
    }
    return out;
  }

  std::vector<std::string> messages_;
};

/// Index, rectangle or stencil point outside the sampled region.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Fields combined from different noise realizations.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Statistical input that cannot be processed (nonpositive norms, too few points).
class DataError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace nullwave
