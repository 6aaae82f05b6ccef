#pragma once

#include <stdexcept>
#include <string>

namespace atomsim {

struct BasisMismatch : std::runtime_error {
  explicit BasisMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct NonCliffordAngle : std::runtime_error {
  explicit NonCliffordAngle(const std::string& m) : std::runtime_error(m) {}
};
struct LayoutMismatch : std::runtime_error {
  explicit LayoutMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct OrderingViolation : std::runtime_error {
  explicit OrderingViolation(const std::string& m) : std::runtime_error(m) {}
};
struct NonBipartite : std::runtime_error {
  explicit NonBipartite(const std::string& m) : std::runtime_error(m) {}
};
struct InvalidSyndromeLength : std::runtime_error {
  explicit InvalidSyndromeLength(const std::string& m) : std::runtime_error(m) {}
};
struct LengthMismatch : std::runtime_error {
  explicit LengthMismatch(const std::string& m) : std::runtime_error(m) {}
};
struct DimensionOverflow : std::runtime_error {
  explicit DimensionOverflow(const std::string& m) : std::runtime_error(m) {}
};
struct UnknownExperiment : std::runtime_error {
  explicit UnknownExperiment(const std::string& m) : std::runtime_error(m) {}
};
struct ExperimentMismatch : std::runtime_error {
  explicit ExperimentMismatch(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace atomsim
