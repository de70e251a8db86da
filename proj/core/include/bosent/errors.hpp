#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bosent {

/// Input violates a documented invariant. `what()` lists every violation,
/// one per line; `violations()` gives them individually.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message)
      : std::runtime_error(message), violations_{message} {}
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += '\n';
      out += p;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// The convex solver stopped without certifying its duality gap.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& message, double gap, double dual_residual, int iterations)
      : std::runtime_error(message),
        gap_(gap),
        dual_residual_(dual_residual),
        iterations_(iterations) {}

  double gap() const noexcept { return gap_; }
  double dual_residual() const noexcept { return dual_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double gap_;
  double dual_residual_;
  int iterations_;
};

}  // namespace bosent
