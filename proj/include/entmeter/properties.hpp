#pragma once

// Numerical audits of the structural properties of the measure. Each check
// draws its fixture from a seed and reports the observed error next to the
// tolerance; failures are findings, never clipped.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "entmeter/norms.hpp"

namespace entmeter {

struct PropertyCheck {
  std::string property;
  std::uint64_t seed = 0;
  bool passed = false;
  /// Violation magnitude: -eps for semipositivity, |deviation| otherwise.
  double error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// semipositivity, nullification, additivity, local_unitary_invariance,
/// continuity, scale_invariance, idempotence, permutation_covariance.
const std::vector<std::string>& property_names();

/// Fixtures: random densities on 2 qubits (even seeds) or 3 qubits (odd
/// seeds); variational mode, base 2.
PropertyCheck run_property(std::string_view name, std::uint64_t seed,
                           const NormOptions& opts = {});

}  // namespace entmeter
