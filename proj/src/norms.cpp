#include "entmeter/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "entmeter/errors.hpp"
#include "parallel.hpp"

namespace entmeter {

const char* to_string(NormMode mode) noexcept {
  switch (mode) {
    case NormMode::Variational: return "variational";
    case NormMode::Basis: return "basis";
    case NormMode::FullSpace: return "fullspace";
  }
  return "unknown";
}

NormMode parse_norm_mode(std::string_view name) {
  if (name == "variational") return NormMode::Variational;
  if (name == "basis") return NormMode::Basis;
  if (name == "fullspace") return NormMode::FullSpace;
  throw InvalidArgument("unknown norm mode '" + std::string(name) + "'");
}

void NormOptions::validate() const {
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (max_sweeps < 1) throw InvalidArgument("max_sweeps must be >= 1");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
}

Eigen::Index dominant_index(const Eigen::VectorXd& eigenvalues) {
  const double top = eigenvalues.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
    if (std::abs(eigenvalues(k)) >= top - kEigenTieTol) return k;
  return 0;
}

void fix_phase(Vector& v) {
  if (v.size() == 0) return;
  const double top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) return;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) >= top - kEigenTieTol) {
      v *= std::conj(v(k)) / std::abs(v(k));
      v(k) = std::abs(v(k));
      return;
    }
  }
}

namespace {

struct Update {
  double value;
  Vector vector;
};

Update dominant_eigenpair(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Eigen::Index k = dominant_index(eig.eigenvalues());
  Vector v = eig.eigenvectors().col(k);
  v.normalize();
  fix_phase(v);
  return {std::abs(eig.eigenvalues()(k)), std::move(v)};
}

double abs_quadratic_form(const Operator& a, const std::vector<Vector>& factors) {
  const Matrix m = effective_matrix(a, factors, 0);
  return std::abs(factors[0].dot(m * factors[0]));
}

bool within(double next, double prev, double tol) {
  const double scale = std::max(std::abs(next), std::numeric_limits<double>::min());
  return std::abs(next - prev) <= tol * scale;
}

struct RestartOutcome {
  double value = 0.0;
  std::vector<Vector> factors;
  std::size_t sweeps = 0;
  bool converged = false;
  bool monotone = true;
  std::vector<double> history;
};

RestartOutcome run_restart(const Operator& a, const NormOptions& opts, std::size_t restart) {
  auto rng = make_rng(opts.seed, restart);
  RestartOutcome out;
  out.factors = random_factors(a.shape(), rng);
  double current = abs_quadratic_form(a, out.factors);
  if (opts.record_history) out.history.push_back(current);

  const std::size_t parts = a.shape().parts();
  for (std::size_t sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    const double before = current;
    for (std::size_t i = 0; i < parts; ++i) {
      auto [value, vec] = dominant_eigenpair(effective_matrix(a, out.factors, i));
      if (value < current - kMonotoneTol * std::max(1.0, current)) out.monotone = false;
      out.factors[i] = std::move(vec);
      current = value;
    }
    out.sweeps = sweep;
    if (opts.record_history) out.history.push_back(current);
    if (within(current, before, opts.tol)) {
      out.converged = true;
      break;
    }
  }
  out.value = current;
  return out;
}

// Effective matrix P^dagger A P where column n of P is the embedded product
// vector with factor `part` replaced by the basis vector e_n.
Matrix embedded_effective_matrix(const Matrix& a, const std::vector<Vector>& factors,
                                 std::size_t part) {
  Vector left = Vector::Ones(1);
  Vector right = Vector::Ones(1);
  auto kron = [](const Vector& x, const Vector& y) {
    Vector out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
    return out;
  };
  for (std::size_t k = 0; k < part; ++k) left = kron(left, factors[k]);
  for (std::size_t k = part + 1; k < factors.size(); ++k) right = kron(right, factors[k]);
  const Eigen::Index d = factors[part].size();
  Matrix p(a.rows(), d);
  for (Eigen::Index n = 0; n < d; ++n) {
    Vector e = Vector::Zero(d);
    e(n) = 1.0;
    p.col(n) = kron(kron(left, e), right);
  }
  return p.adjoint() * (a * p);
}

}  // namespace

double full_norm(const Operator& a) {
  const Matrix& m = a.matrix();
  if (m.size() == 0) return 0.0;
  if (a.is_hermitian()) {
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

NormResult restricted_norm_variational(const Operator& a, const NormOptions& opts) {
  opts.validate();
  if (!a.is_hermitian())
    throw InvalidArgument(
        "variational restricted norm is defined for hermitian operators only; "
        "use the full-space norm for non-hermitian input");

  std::vector<RestartOutcome> runs(opts.restarts);
  detail::parallel_for(opts.restarts, opts.threads,
                       [&](std::size_t r) { runs[r] = run_restart(a, opts, r); });

  // Strict '>' keeps the lowest restart index on ties.
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].value > runs[best].value) best = r;

  NormResult result;
  result.value = runs[best].value;
  result.maximizer = ProductState(runs[best].factors);
  result.sweeps_used = runs[best].sweeps;
  result.restarts = runs.size();
  for (auto& run : runs) {
    if (run.converged) ++result.restarts_converged;
    if (std::abs(run.value - result.value) <= 100.0 * opts.tol * result.value)
      ++result.restarts_agreeing;
    result.monotone = result.monotone && run.monotone;
    if (opts.record_history) result.history.push_back(std::move(run.history));
  }
  result.converged = result.restarts_converged > 0;
  return result;
}

NormResult restricted_norm_basis(const Operator& a) {
  const Matrix& m = a.matrix();
  Eigen::Index best = 0;
  double top = -1.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    const double v = std::abs(m(k, k));
    if (v > top) {
      top = v;
      best = k;
    }
  }
  NormResult result;
  result.value = std::max(top, 0.0);
  const auto digits = a.shape().digits(static_cast<std::size_t>(best));
  result.maximizer = ProductState::basis(a.shape(), digits);
  result.converged = true;
  result.restarts = 1;
  result.restarts_converged = 1;
  result.restarts_agreeing = 1;
  return result;
}

double restricted_norm_oracle(const Operator& a, std::size_t samples, std::uint64_t seed) {
  constexpr std::size_t kRefineSweeps = 50;
  if (samples < 1) throw InvalidArgument("oracle needs at least one sample");
  if (!a.is_hermitian()) throw InvalidArgument("oracle needs a hermitian operator");
  const Matrix& m = a.matrix();
  const std::size_t parts = a.shape().parts();
  auto rng = make_rng(seed, 0x6f7261636c65);
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    auto factors = random_factors(a.shape(), rng);
    double current = 0.0;
    for (std::size_t sweep = 0; sweep < kRefineSweeps; ++sweep) {
      const double before = current;
      for (std::size_t i = 0; i < parts; ++i) {
        const Matrix eff = embedded_effective_matrix(m, factors, i);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (eff + eff.adjoint()));
        const Eigen::Index k = dominant_index(eig.eigenvalues());
        factors[i] = eig.eigenvectors().col(k).normalized();
        current = std::abs(eig.eigenvalues()(k));
      }
      // A fixed point of the update stays fixed; further sweeps are no-ops.
      if (sweep > 0 && std::abs(current - before) <= 1e-15 * current) break;
    }
    best = std::max(best, current);
  }
  return best;
}

double factorized_restricted_norm(std::span<const Operator> factors, cplx scalar) {
  if (factors.empty()) throw InvalidArgument("factorized norm needs at least one factor");
  double value = std::abs(scalar);
  for (const auto& f : factors) {
    if (!f.is_hermitian()) throw InvalidArgument("factorized norm needs hermitian factors");
    value *= full_norm(f);
  }
  return value;
}

double factorized_basis_norm(std::span<const Operator> factors, cplx scalar) {
  if (factors.empty()) throw InvalidArgument("factorized norm needs at least one factor");
  double value = std::abs(scalar);
  for (const auto& f : factors) value *= f.matrix().diagonal().cwiseAbs().maxCoeff();
  return value;
}

NormResult restricted_norm(const Operator& a, NormMode mode, const NormOptions& opts) {
  switch (mode) {
    case NormMode::Variational: return restricted_norm_variational(a, opts);
    case NormMode::Basis: return restricted_norm_basis(a);
    case NormMode::FullSpace: {
      NormResult r;
      r.value = full_norm(a);
      r.converged = true;
      r.restarts = r.restarts_converged = r.restarts_agreeing = 1;
      return r;
    }
  }
  throw InvalidArgument("unknown norm mode");
}

void require_converged(const NormResult& result) {
  if (!result.converged)
    throw NonConvergence("no restart of the product-state optimizer converged (best value " +
                         std::to_string(result.value) + ")");
}

}  // namespace entmeter
