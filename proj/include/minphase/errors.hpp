#pragma once

#include <stdexcept>
#include <string>

namespace minphase {

/// Cholesky pivot <= 0: the (lifted) prototype is not positive definite.
/// Carries the failing pivot index for waterfall diagnostics.
struct NotPositiveDefinite : std::runtime_error {
  NotPositiveDefinite(int pivot, double value)
      : std::runtime_error("matrix not positive definite at pivot " +
                           std::to_string(pivot) + " (value " +
                           std::to_string(value) + ")"),
        pivot_index(pivot),
        pivot_value(value) {}
  int pivot_index;
  double pivot_value;
};

struct DesignFailure : std::runtime_error {
  explicit DesignFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace minphase
