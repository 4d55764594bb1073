#include "entmeter/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entmeter/errors.hpp"

namespace entmeter {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateTrace: return "DegenerateTrace";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// SpaceShape

SpaceShape::SpaceShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("SpaceShape needs at least one part");
  for (auto d : dims_) {
    if (d < 1) throw InvalidArgument("SpaceShape local dimensions must be >= 1");
    total_ *= d;
  }
}

SpaceShape SpaceShape::uniform(std::size_t parts, std::size_t dim) {
  return SpaceShape(std::vector<std::size_t>(parts, dim));
}

SpaceShape SpaceShape::subset(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> out;
  out.reserve(keep.size());
  for (auto k : keep) {
    if (k >= dims_.size()) throw InvalidArgument("part index out of range");
    out.push_back(dims_[k]);
  }
  return SpaceShape(std::move(out));
}

SpaceShape SpaceShape::concat(const SpaceShape& other) const {
  auto out = dims_;
  out.insert(out.end(), other.dims_.begin(), other.dims_.end());
  return SpaceShape(std::move(out));
}

std::vector<std::size_t> SpaceShape::digits(std::size_t flat) const {
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    out[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return out;
}

std::size_t SpaceShape::flat(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) throw InvalidArgument("digit count mismatch");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (digits[k] >= dims_[k]) throw InvalidArgument("digit out of range");
    idx = idx * dims_[k] + digits[k];
  }
  return idx;
}

std::string SpaceShape::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < dims_.size(); ++k) os << (k ? "," : "") << dims_[k];
  os << ')';
  return os.str();
}

namespace {

// Stride of each part in the flat index.
std::vector<std::size_t> strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

// Flat offsets in the full space for every basis state of the listed parts.
std::vector<std::size_t> offsets(const SpaceShape& shape,
                                 std::span<const std::size_t> parts) {
  const auto st = strides(shape.dims());
  std::size_t n = 1;
  for (auto p : parts) n *= shape.dim(p);
  std::vector<std::size_t> out(n, 0);
  std::vector<std::size_t> digit(parts.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) off += digit[k] * st[parts[k]];
    out[i] = off;
    for (std::size_t k = parts.size(); k-- > 0;) {
      if (++digit[k] < shape.dim(parts[k])) break;
      digit[k] = 0;
    }
  }
  return out;
}

// (<phi| (x) 1) M (|phi> (x) 1) where the contracted index sits between an
// outer block of size `hi` and an inner block of size `lo`.
Matrix contract_matrix(const Matrix& m, std::size_t hi, std::size_t d,
                       std::size_t lo, const Vector& phi) {
  const auto n = static_cast<Eigen::Index>(hi * lo);
  const auto full = static_cast<Eigen::Index>(hi * d * lo);
  const auto ilo = static_cast<Eigen::Index>(lo);

  Matrix cols = Matrix::Zero(full, n);
  for (std::size_t h = 0; h < hi; ++h) {
    for (std::size_t b = 0; b < d; ++b) {
      const auto src = static_cast<Eigen::Index>((h * d + b) * lo);
      cols.middleCols(static_cast<Eigen::Index>(h * lo), ilo) +=
          phi(static_cast<Eigen::Index>(b)) * m.middleCols(src, ilo);
    }
  }
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t h = 0; h < hi; ++h) {
    for (std::size_t a = 0; a < d; ++a) {
      const auto src = static_cast<Eigen::Index>((h * d + a) * lo);
      out.middleRows(static_cast<Eigen::Index>(h * lo), ilo) +=
          std::conj(phi(static_cast<Eigen::Index>(a))) * cols.middleRows(src, ilo);
    }
  }
  return out;
}

std::size_t product(std::span<const std::size_t> dims, std::size_t from,
                    std::size_t to) {
  std::size_t p = 1;
  for (std::size_t k = from; k < to; ++k) p *= dims[k];
  return p;
}

Matrix ginibre(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

void check_factors(const SpaceShape& shape, std::span<const Vector> factors) {
  if (factors.size() != shape.parts())
    throw InvalidArgument("product state has " + std::to_string(factors.size()) +
                          " factors, operator has " + std::to_string(shape.parts()) +
                          " parts");
  for (std::size_t k = 0; k < factors.size(); ++k)
    if (static_cast<std::size_t>(factors[k].size()) != shape.dim(k))
      throw InvalidArgument("factor " + std::to_string(k) +
                            " does not match local dimension");
}

}  // namespace

// ---------------------------------------------------------------------------
// States and operators

PureState::PureState(SpaceShape shape, Vector amplitudes)
    : shape_(std::move(shape)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != shape_.total())
    throw InvalidArgument("amplitude count " + std::to_string(amplitudes_.size()) +
                          " does not match shape " + shape_.str());
  if (!std::isfinite(amplitudes_.norm()))
    throw InvalidArgument("state amplitudes must be finite");
}

bool PureState::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

ProductState::ProductState(std::vector<Vector> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("product state needs at least one factor");
  for (const auto& f : factors_) {
    if (f.size() < 1) throw InvalidArgument("empty product-state factor");
    if (std::abs(f.norm() - 1.0) > kNormalizationTol)
      throw InvalidArgument("product-state factors must have unit norm");
  }
}

ProductState ProductState::basis(const SpaceShape& shape,
                                 std::span<const std::size_t> digits) {
  if (digits.size() != shape.parts()) throw InvalidArgument("digit count mismatch");
  std::vector<Vector> f;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= shape.dim(k)) throw InvalidArgument("digit out of range");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.dim(k)));
    v(static_cast<Eigen::Index>(digits[k])) = 1.0;
    f.push_back(std::move(v));
  }
  return ProductState(std::move(f));
}

SpaceShape ProductState::shape() const {
  std::vector<std::size_t> dims;
  for (const auto& f : factors_) dims.push_back(static_cast<std::size_t>(f.size()));
  return SpaceShape(std::move(dims));
}

Operator::Operator(SpaceShape shape, Matrix matrix, Hermiticity hermitian)
    : shape_(std::move(shape)), matrix_(std::move(matrix)), hermitian_(hermitian) {
  const auto n = static_cast<Eigen::Index>(shape_.total());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw InvalidArgument("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + ", shape " + shape_.str() +
                          " needs " + std::to_string(n) + "x" + std::to_string(n));
  if (hermitian_ == Hermiticity::Yes && max_abs_antihermitian(matrix_) > kHermitianTol)
    throw InvalidArgument("operator declared hermitian but M != M^dagger");
}

Operator Operator::identity(const SpaceShape& shape) {
  const auto n = static_cast<Eigen::Index>(shape.total());
  return Operator(shape, Matrix::Identity(n, n), Hermiticity::Yes);
}

bool Operator::is_hermitian() const {
  switch (hermitian_) {
    case Hermiticity::Yes: return true;
    case Hermiticity::No: return false;
    case Hermiticity::Unknown: break;
  }
  return max_abs_antihermitian(matrix_) <= kHermitianTol;
}

Operator Operator::scaled(cplx factor) const {
  Hermiticity h = hermitian_;
  if (factor.imag() != 0.0) h = Hermiticity::Unknown;
  return Operator(shape_, matrix_ * factor, h);
}

double max_abs_antihermitian(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Operations

Operator tensor_product(std::span<const Operator> ops) {
  if (ops.empty()) throw InvalidArgument("tensor_product of an empty list");
  Matrix acc = ops[0].matrix();
  SpaceShape shape = ops[0].shape();
  bool all_hermitian = ops[0].declared_hermiticity() == Hermiticity::Yes;
  for (std::size_t k = 1; k < ops.size(); ++k) {
    const Matrix& b = ops[k].matrix();
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index j = 0; j < acc.cols(); ++j)
      for (Eigen::Index i = 0; i < acc.rows(); ++i)
        next.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = acc(i, j) * b;
    acc = std::move(next);
    shape = shape.concat(ops[k].shape());
    all_hermitian = all_hermitian && ops[k].declared_hermiticity() == Hermiticity::Yes;
  }
  return Operator(std::move(shape), std::move(acc),
                  all_hermitian ? Hermiticity::Yes : Hermiticity::Unknown);
}

Operator partial_trace(const Operator& a, std::span<const std::size_t> keep) {
  const auto& shape = a.shape();
  if (keep.empty()) throw InvalidArgument("partial_trace needs a nonempty keep set");
  std::vector<bool> kept(shape.parts(), false);
  for (auto k : keep) {
    if (k >= shape.parts())
      throw InvalidArgument("part index " + std::to_string(k) + " out of range for " +
                            shape.str());
    if (kept[k]) throw InvalidArgument("duplicate part index in keep set");
    kept[k] = true;
  }
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < shape.parts(); ++k)
    if (!kept[k]) traced.push_back(k);

  const auto keep_off = offsets(shape, keep);
  const auto trace_off = traced.empty() ? std::vector<std::size_t>{0}
                                        : offsets(shape, traced);
  const auto n = static_cast<Eigen::Index>(keep_off.size());
  const Matrix& m = a.matrix();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      cplx s = 0.0;
      for (auto t : trace_off)
        s += m(static_cast<Eigen::Index>(keep_off[r] + t),
               static_cast<Eigen::Index>(keep_off[c] + t));
      out(r, c) = s;
    }
  const Hermiticity h = a.declared_hermiticity() == Hermiticity::Yes ? Hermiticity::Yes
                                                                    : Hermiticity::Unknown;
  if (h == Hermiticity::Yes) out = 0.5 * (out + out.adjoint()).eval();
  return Operator(shape.subset(keep), std::move(out), h);
}

Operator outer(const PureState& psi) {
  if (!psi.is_normalized())
    throw InvalidArgument("outer() needs a normalized state (norm " +
                          std::to_string(psi.norm()) + ")");
  const Vector& v = psi.amplitudes();
  Matrix m = v * v.adjoint();
  return Operator(psi.shape(), std::move(m), Hermiticity::Yes);
}

Operator contract_part(const Operator& a, std::size_t part, const Vector& phi) {
  const auto& dims = a.shape().dims();
  if (part >= dims.size()) throw InvalidArgument("part index out of range");
  if (dims.size() < 2) throw InvalidArgument("cannot contract the only part");
  if (static_cast<std::size_t>(phi.size()) != dims[part])
    throw InvalidArgument("contraction vector does not match local dimension");
  const std::size_t hi = product(dims, 0, part);
  const std::size_t lo = product(dims, part + 1, dims.size());
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (k != part) rest.push_back(dims[k]);
  const Hermiticity h = a.declared_hermiticity() == Hermiticity::Yes ? Hermiticity::Yes
                                                                    : Hermiticity::Unknown;
  return Operator(SpaceShape(std::move(rest)),
                  contract_matrix(a.matrix(), hi, dims[part], lo, phi), h);
}

Matrix effective_matrix(const Operator& a, std::span<const Vector> factors,
                        std::size_t part) {
  const auto& shape = a.shape();
  check_factors(shape, factors);
  if (part >= shape.parts()) throw InvalidArgument("part index out of range");

  // Contract from the highest part downwards so lower indices stay valid.
  std::vector<std::size_t> dims = shape.dims();
  Matrix current;
  const Matrix* m = &a.matrix();
  for (std::size_t k = dims.size(); k-- > 0;) {
    if (k == part) continue;
    const std::size_t hi = product(dims, 0, k);
    const std::size_t lo = product(dims, k + 1, dims.size());
    current = contract_matrix(*m, hi, dims[k], lo, factors[k]);
    m = &current;
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(k));
  }
  if (m == &a.matrix()) return a.matrix();
  return current;
}

cplx quadratic_form(const ProductState& f, const Operator& a) {
  check_factors(a.shape(), f.factors());
  const Matrix m = effective_matrix(a, f.factors(), 0);
  return f.factor(0).dot(m * f.factor(0));
}

PureState embed_product(const ProductState& f) {
  Vector acc = f.factor(0);
  for (std::size_t k = 1; k < f.parts(); ++k) {
    const Vector& b = f.factor(k);
    Vector next(acc.size() * b.size());
    for (Eigen::Index i = 0; i < acc.size(); ++i)
      next.segment(i * b.size(), b.size()) = acc(i) * b;
    acc = std::move(next);
  }
  return PureState(f.shape(), std::move(acc));
}

Operator conjugate_local(const Operator& a, std::span<const Operator> locals) {
  const auto& shape = a.shape();
  if (locals.size() != shape.parts())
    throw InvalidArgument("need one local operator per part");
  for (std::size_t k = 0; k < locals.size(); ++k)
    if (locals[k].shape().total() != shape.dim(k))
      throw InvalidArgument("local operator dimension mismatch");
  const Operator u = tensor_product(locals);
  Matrix m = u.matrix().adjoint() * a.matrix() * u.matrix();
  const Hermiticity h = a.declared_hermiticity() == Hermiticity::Yes ? Hermiticity::Yes
                                                                    : Hermiticity::Unknown;
  if (h == Hermiticity::Yes) m = 0.5 * (m + m.adjoint()).eval();
  return Operator(shape, std::move(m), h);
}

Operator permute_parts(const Operator& a, std::span<const std::size_t> perm) {
  const auto& shape = a.shape();
  if (perm.size() != shape.parts()) throw InvalidArgument("permutation size mismatch");
  std::vector<std::size_t> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != k) throw InvalidArgument("not a permutation of the parts");

  const SpaceShape out_shape = shape.subset(perm);
  // offsets() enumerates the listed parts in the given order, which is
  // exactly the new row-major order.
  const auto to_old = offsets(shape, perm);
  const auto n = static_cast<Eigen::Index>(to_old.size());
  Matrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      out(r, c) = a.matrix()(static_cast<Eigen::Index>(to_old[r]),
                             static_cast<Eigen::Index>(to_old[c]));
  return Operator(out_shape, std::move(out), a.declared_hermiticity());
}

// ---------------------------------------------------------------------------
// Random fixtures

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x656e746du};
  return std::mt19937_64(seq);
}

std::vector<Vector> random_factors(const SpaceShape& shape, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(shape.parts());
  for (auto d : shape.dims()) {
    Vector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v(i) = cplx(re, im);
    }
    v.normalize();
    out.push_back(std::move(v));
  }
  return out;
}

ProductState random_product_state(const SpaceShape& shape, std::uint64_t seed) {
  auto rng = make_rng(seed, 0x70726f64);
  return ProductState(random_factors(shape, rng));
}

Operator random_density(const SpaceShape& shape, std::uint64_t seed) {
  auto rng = make_rng(seed, 0x64656e73);
  const Matrix g = ginibre(shape.total(), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return Operator(shape, std::move(rho), Hermiticity::Yes);
}

Operator random_psd(const SpaceShape& shape, std::uint64_t seed) {
  auto rng = make_rng(seed, 0x70736420);
  const Matrix g = ginibre(shape.total(), rng);
  Matrix m = g * g.adjoint() / static_cast<double>(shape.total());
  m = 0.5 * (m + m.adjoint()).eval();
  return Operator(shape, std::move(m), Hermiticity::Yes);
}

std::vector<Operator> random_local_unitaries(const SpaceShape& shape,
                                             std::uint64_t seed) {
  auto rng = make_rng(seed, 0x756e6974);
  std::vector<Operator> out;
  for (auto d : shape.dims()) {
    const Matrix g = ginibre(d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fixing the phases of R's diagonal makes Q Haar-distributed.
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      const cplx rjj = r(j, j);
      if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    out.emplace_back(SpaceShape({d}), std::move(q), Hermiticity::Unknown);
  }
  return out;
}

}  // namespace entmeter
