#pragma once

// Dense multipartite linear algebra: composite spaces, states, operators,
// tensor products and partial traces.
//
// Basis convention: parts are indexed 0..K-1 and the composite basis is
// row-major, i.e. |n_0 n_1 ... n_{K-1}> has flat index
// ((n_0 * d_1 + n_1) * d_2 + n_2) ... with part 0 varying slowest.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entmeter {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kHermitianTol = 1e-10;

class SpaceShape {
 public:
  explicit SpaceShape(std::vector<std::size_t> dims);

  static SpaceShape uniform(std::size_t parts, std::size_t dim);

  std::size_t parts() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t part) const { return dims_.at(part); }
  std::size_t total() const noexcept { return total_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  /// Shape of the parts listed in `keep`, in that order.
  SpaceShape subset(std::span<const std::size_t> keep) const;
  SpaceShape concat(const SpaceShape& other) const;

  std::vector<std::size_t> digits(std::size_t flat) const;
  std::size_t flat(std::span<const std::size_t> digits) const;

  std::string str() const;

  bool operator==(const SpaceShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

class PureState {
 public:
  PureState(SpaceShape shape, Vector amplitudes);

  const SpaceShape& shape() const noexcept { return shape_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = kNormalizationTol) const;

 private:
  SpaceShape shape_;
  Vector amplitudes_;
};

/// An element of the disentangled set: one unit vector per part.
class ProductState {
 public:
  explicit ProductState(std::vector<Vector> factors);

  /// The computational product-basis state |digits[0] digits[1] ...>.
  static ProductState basis(const SpaceShape& shape,
                            std::span<const std::size_t> digits);

  std::size_t parts() const noexcept { return factors_.size(); }
  const Vector& factor(std::size_t part) const { return factors_.at(part); }
  const std::vector<Vector>& factors() const noexcept { return factors_; }
  SpaceShape shape() const;

 private:
  std::vector<Vector> factors_;
};

enum class Hermiticity { Yes, No, Unknown };

class Operator {
 public:
  Operator(SpaceShape shape, Matrix matrix,
           Hermiticity hermitian = Hermiticity::Unknown);

  static Operator identity(const SpaceShape& shape);

  const SpaceShape& shape() const noexcept { return shape_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  Hermiticity declared_hermiticity() const noexcept { return hermitian_; }

  /// Declared flag, or an entrywise check against kHermitianTol when the
  /// flag is Unknown.
  bool is_hermitian() const;

  cplx trace() const { return matrix_.trace(); }
  Operator scaled(cplx factor) const;

 private:
  SpaceShape shape_;
  Matrix matrix_;
  Hermiticity hermitian_;
};

double max_abs_antihermitian(const Matrix& m);

/// Kronecker product; the result shape concatenates the input shapes.
Operator tensor_product(std::span<const Operator> ops);

/// Traces out every part not listed in `keep`. The result's parts follow
/// the order of `keep`.
Operator partial_trace(const Operator& a, std::span<const std::size_t> keep);

Operator outer(const PureState& psi);

/// <f|A|f>, evaluated by contracting A against one factor at a time.
cplx quadratic_form(const ProductState& f, const Operator& a);

/// Effective single-part matrix M with <f|A|f> = <f_part|M|f_part>,
/// obtained by contracting A against every factor except `part`.
Matrix effective_matrix(const Operator& a, std::span<const Vector> factors,
                        std::size_t part);

PureState embed_product(const ProductState& f);

/// Contracts A over `part` on both sides with phi: returns
/// (<phi| (x) 1) A (|phi> (x) 1) on the remaining parts.
Operator contract_part(const Operator& a, std::size_t part, const Vector& phi);

/// (U_0 (x) ... (x) U_{K-1})^dagger A (U_0 (x) ... (x) U_{K-1}).
Operator conjugate_local(const Operator& a, std::span<const Operator> locals);

/// Relabels parts: part k of the result is part perm[k] of the input.
Operator permute_parts(const Operator& a, std::span<const std::size_t> perm);

/// Ginibre-distributed full-rank density: G G^dagger / Tr(G G^dagger).
Operator random_density(const SpaceShape& shape, std::uint64_t seed);

/// Hermitian positive semidefinite G G^dagger / D, not trace-normalized.
Operator random_psd(const SpaceShape& shape, std::uint64_t seed);

/// Haar-random unitary per part.
std::vector<Operator> random_local_unitaries(const SpaceShape& shape,
                                             std::uint64_t seed);

/// Deterministic generator for (seed, stream); distinct streams give
/// independent sequences for the same seed.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Each factor drawn uniformly (complex Gaussian, normalized).
std::vector<Vector> random_factors(const SpaceShape& shape, std::mt19937_64& rng);

ProductState random_product_state(const SpaceShape& shape, std::uint64_t seed);

}  // namespace entmeter
