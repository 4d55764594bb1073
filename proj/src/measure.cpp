#include "entmeter/measure.hpp"

#include <cmath>
#include <string>

#include "entmeter/errors.hpp"

namespace entmeter {

namespace {

constexpr double kTraceTol = 1e-12;
constexpr double kZeroNormScale = 1e-14;

void check_base(double base) {
  if (!(base > 1.0) || !std::isfinite(base))
    throw InvalidArgument("log base must be finite and > 1");
}

}  // namespace

double log_in_base(double x, double base) {
  check_base(base);
  return std::log(x) / std::log(base);
}

Operator Nonentangling::assemble() const {
  return tensor_product(factors).scaled(scalar);
}

std::vector<Operator> single_partite_reductions(const Operator& a) {
  std::vector<Operator> out;
  out.reserve(a.shape().parts());
  for (std::size_t i = 0; i < a.shape().parts(); ++i) {
    const std::size_t keep[] = {i};
    out.push_back(partial_trace(a, keep));
  }
  return out;
}

Nonentangling nonentangling_factors(const Operator& a) {
  const cplx tr = a.trace();
  if (std::abs(tr) <= kTraceTol * a.matrix().norm())
    throw DegenerateTrace("Tr(A) vanishes; the nonentangling normalization is undefined");
  const double k = static_cast<double>(a.shape().parts());
  return {std::pow(tr, 1.0 - k), single_partite_reductions(a)};
}

Operator nonentangling(const Operator& a) {
  return nonentangling_factors(a).assemble();
}

MeasureResult measure_from_norms(double norm_a, double norm_aotimes, double base,
                                 NormMode mode, std::size_t total_dim) {
  check_base(base);
  const double floor = kZeroNormScale * static_cast<double>(total_dim);
  if (!(norm_a >= floor) || !(norm_aotimes >= floor))
    throw ZeroNorm("restricted norm below " + std::to_string(floor) +
                   "; the log-ratio is undefined");
  MeasureResult r;
  r.norm_D_A = norm_a;
  r.norm_D_Aotimes = norm_aotimes;
  r.log_base = base;
  r.mode = mode;
  r.epsilon = std::log(norm_a / norm_aotimes) / std::log(base);
  return r;
}

MeasureResult entanglement(const Operator& a, NormMode mode, double base,
                           const NormOptions& opts) {
  check_base(base);
  if (!a.is_hermitian())
    throw InvalidArgument("the entanglement measure needs a hermitian operator");
  if (mode == NormMode::FullSpace)
    throw InvalidArgument("entanglement is defined with variational or basis norms");

  const Nonentangling product = nonentangling_factors(a);
  NormResult norm_a;
  NormResult norm_product;
  if (mode == NormMode::Variational) {
    norm_a = restricted_norm_variational(a, opts);
    norm_product.value = factorized_restricted_norm(product.factors, product.scalar);
  } else {
    norm_a = restricted_norm_basis(a);
    norm_product.value = factorized_basis_norm(product.factors, product.scalar);
  }
  norm_product.converged = true;
  norm_product.restarts = norm_product.restarts_converged = norm_product.restarts_agreeing = 1;

  MeasureResult r =
      measure_from_norms(norm_a.value, norm_product.value, base, mode, a.shape().total());
  if (!norm_a.converged)
    r.warnings.push_back("NonConvergence: no optimizer restart met the tolerance");
  r.norm_A_diagnostics = std::move(norm_a);
  r.norm_Aotimes_diagnostics = std::move(norm_product);
  return r;
}

double reduced_measure_formula(std::size_t n, std::size_t p, double norm_p, double norm_1,
                               double base) {
  check_base(base);
  if (p < 1 || p > n) throw InvalidArgument("reduced measure needs 1 <= p <= N");
  if (!(norm_p > 0.0) || !(norm_1 > 0.0))
    throw InvalidArgument("reduced measure needs positive norms");
  // log((N-p)! N^p / N!) = -sum_{k<p} log(1 - k/N)
  const double nn = static_cast<double>(n);
  double log_ratio = 0.0;
  for (std::size_t k = 0; k < p; ++k) log_ratio -= std::log1p(-static_cast<double>(k) / nn);
  log_ratio += std::log(norm_p) - static_cast<double>(p) * std::log(norm_1);
  return log_ratio / std::log(base);
}

OrderIndexResult order_index(const Operator& a) {
  const double tr = std::abs(a.trace());
  if (tr <= kTraceTol || std::abs(tr - 1.0) <= kTraceTol)
    throw DegenerateTrace("order index undefined: |Tr A| = " + std::to_string(tr));
  OrderIndexResult r;
  r.norm = full_norm(a);
  r.trace_abs = tr;
  r.omega = std::log(r.norm) / std::log(tr);
  return r;
}

}  // namespace entmeter
