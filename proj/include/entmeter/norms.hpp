#pragma once

// Operator norms over the full space and over the disentangled set of
// product states.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "entmeter/tensor.hpp"

namespace entmeter {

/// Variational: supremum of |<f|A|f>| over all normalized product states.
/// Basis: supremum over computational product-basis states only.
/// FullSpace: largest singular value over the whole space.
enum class NormMode { Variational, Basis, FullSpace };

const char* to_string(NormMode mode) noexcept;
NormMode parse_norm_mode(std::string_view name);

struct NormOptions {
  std::size_t restarts = 32;
  std::size_t max_sweeps = 200;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  /// Worker threads for independent restarts; 0 picks the hardware count.
  std::size_t threads = 1;
  /// Keep the per-sweep objective of every restart in NormResult::history.
  bool record_history = false;

  void validate() const;
};

struct NormResult {
  double value = 0.0;
  std::optional<ProductState> maximizer;
  /// Sweeps taken by the restart that produced `value`.
  std::size_t sweeps_used = 0;
  /// At least one restart met the tolerance within max_sweeps.
  bool converged = false;
  std::size_t restarts = 0;
  std::size_t restarts_converged = 0;
  std::size_t restarts_agreeing = 0;
  /// The objective never decreased between consecutive updates, in any
  /// restart (tolerance kMonotoneTol).
  bool monotone = true;
  std::vector<std::vector<double>> history;
};

inline constexpr double kMonotoneTol = 1e-12;
inline constexpr double kEigenTieTol = 1e-12;

/// Largest singular value; max |eigenvalue| for hermitian operators.
double full_norm(const Operator& a);

/// Multistart alternating spectral iteration. Each update replaces one
/// factor by the eigenvector of its effective matrix whose eigenvalue has
/// the largest magnitude, which never decreases |<f|A|f>|.
/// Throws InvalidArgument for non-hermitian input. Non-convergence is
/// reported through NormResult::converged; see require_converged().
NormResult restricted_norm_variational(const Operator& a, const NormOptions& opts = {});

/// max |<n_1...n_K|A|n_1...n_K>| over the product basis.
NormResult restricted_norm_basis(const Operator& a);

/// Lower bound on the variational norm from `samples` random product
/// states, each refined by up to 50 alternating sweeps. Effective matrices
/// are built from embedded product vectors, independently of the contraction
/// path used by restricted_norm_variational.
double restricted_norm_oracle(const Operator& a, std::size_t samples, std::uint64_t seed);

/// Exact D-norm of scalar * (F_1 (x) ... (x) F_K) for hermitian factors:
/// |scalar| * prod_i max|eig(F_i)|.
double factorized_restricted_norm(std::span<const Operator> factors, cplx scalar);

/// Basis-mode norm of the same product operator: |scalar| * prod_i max|diag(F_i)|.
double factorized_basis_norm(std::span<const Operator> factors, cplx scalar);

/// Dispatches on mode. FullSpace fills only `value`.
NormResult restricted_norm(const Operator& a, NormMode mode, const NormOptions& opts = {});

/// Throws NonConvergence when no restart converged.
void require_converged(const NormResult& result);

/// Index of the eigenvalue of largest magnitude; ties within kEigenTieTol go
/// to the lowest index.
Eigen::Index dominant_index(const Eigen::VectorXd& eigenvalues);

/// Rotates v so that its first largest-magnitude component is real positive.
void fix_phase(Vector& v);

}  // namespace entmeter
