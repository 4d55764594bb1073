#include "entmeter/properties.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entmeter/errors.hpp"
#include "entmeter/measure.hpp"

namespace entmeter {

namespace {

SpaceShape qubits_for(std::uint64_t seed) {
  return SpaceShape::uniform(seed % 2 == 0 ? 2 : 3, 2);
}

double eps(const Operator& a, const NormOptions& opts) {
  return entanglement(a, NormMode::Variational, 2.0, opts).epsilon;
}

PropertyCheck finish(std::string name, std::uint64_t seed, double error, double tolerance,
                     std::string detail) {
  PropertyCheck c;
  c.property = std::move(name);
  c.seed = seed;
  c.error = error;
  c.tolerance = tolerance;
  c.passed = error <= tolerance;
  c.detail = std::move(detail);
  return c;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

PropertyCheck semipositivity(std::uint64_t seed, const NormOptions& opts) {
  const double e = eps(random_density(qubits_for(seed), seed), opts);
  return finish("semipositivity", seed, -e, 1e-7, "eps=" + fmt(e));
}

PropertyCheck nullification(std::uint64_t seed, const NormOptions& opts) {
  const SpaceShape shape = qubits_for(seed);
  std::vector<Operator> factors;
  for (std::size_t k = 0; k < shape.parts(); ++k)
    factors.push_back(random_psd(SpaceShape({2}), seed * 31 + k));
  const double e = eps(tensor_product(factors), opts);
  return finish("nullification", seed, std::abs(e), 1e-7, "eps=" + fmt(e));
}

PropertyCheck additivity(std::uint64_t seed, const NormOptions& opts) {
  const SpaceShape pair = SpaceShape::uniform(2, 2);
  const Operator a = random_density(pair, seed);
  const Operator b = random_density(pair, seed + 1000003);
  const Operator ab[] = {a, b};
  const double joint = eps(tensor_product(ab), opts);
  const double sum = eps(a, opts) + eps(b, opts);
  return finish("additivity", seed, std::abs(joint - sum), 1e-6,
                "eps(A(x)B)=" + fmt(joint) + " eps(A)+eps(B)=" + fmt(sum));
}

PropertyCheck local_unitary_invariance(std::uint64_t seed, const NormOptions& opts) {
  const SpaceShape shape = qubits_for(seed);
  const Operator a = random_density(shape, seed);
  const auto u = random_local_unitaries(shape, seed);
  const double before = eps(a, opts);
  const double after = eps(conjugate_local(a, u), opts);
  return finish("local_unitary_invariance", seed, std::abs(after - before), 1e-6,
                "eps=" + fmt(before) + " rotated=" + fmt(after));
}

PropertyCheck continuity(std::uint64_t seed, const NormOptions& opts) {
  constexpr double t = 1e-3;
  const Operator a = random_density(qubits_for(seed), seed);
  const auto n = static_cast<double>(a.shape().total());
  const Operator mixed(a.shape(),
                       (1.0 - t) * a.matrix() +
                           (t / n) * Matrix::Identity(a.matrix().rows(), a.matrix().cols()),
                       Hermiticity::Yes);
  const double e0 = eps(a, opts);
  const double et = eps(mixed, opts);
  return finish("continuity", seed, std::abs(et - e0), 0.01,
                "eps(0)=" + fmt(e0) + " eps(t)=" + fmt(et));
}

PropertyCheck scale_invariance(std::uint64_t seed, const NormOptions& opts) {
  auto rng = make_rng(seed, 0x7363616c);
  const double c = std::exp(std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
  const Operator a = random_density(qubits_for(seed), seed);
  const double e = eps(a, opts);
  const double ec = eps(a.scaled(c), opts);
  return finish("scale_invariance", seed, std::abs(ec - e), 1e-9,
                "c=" + fmt(c) + " eps=" + fmt(e) + " eps(cA)=" + fmt(ec));
}

PropertyCheck idempotence(std::uint64_t seed, const NormOptions&) {
  const Operator a = random_density(qubits_for(seed), seed);
  const Operator once = nonentangling(a);
  const Operator twice = nonentangling(once);
  const double err = (twice.matrix() - once.matrix()).cwiseAbs().maxCoeff();
  return finish("idempotence", seed, err, 1e-10, "max entry deviation=" + fmt(err));
}

PropertyCheck permutation_covariance(std::uint64_t seed, const NormOptions& opts) {
  const SpaceShape shape = qubits_for(seed);
  const Operator a = random_density(shape, seed);
  std::vector<std::size_t> perm(shape.parts());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto rng = make_rng(seed, 0x7065726d);
  do {
    std::shuffle(perm.begin(), perm.end(), rng);
  } while (std::is_sorted(perm.begin(), perm.end()));
  const double e = eps(a, opts);
  const double ep = eps(permute_parts(a, perm), opts);
  return finish("permutation_covariance", seed, std::abs(ep - e), 1e-9,
                "eps=" + fmt(e) + " permuted=" + fmt(ep));
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = {
      "semipositivity", "nullification",    "additivity",  "local_unitary_invariance",
      "continuity",     "scale_invariance", "idempotence", "permutation_covariance"};
  return names;
}

PropertyCheck run_property(std::string_view name, std::uint64_t seed, const NormOptions& opts) {
  if (name == "semipositivity") return semipositivity(seed, opts);
  if (name == "nullification") return nullification(seed, opts);
  if (name == "additivity") return additivity(seed, opts);
  if (name == "local_unitary_invariance") return local_unitary_invariance(seed, opts);
  if (name == "continuity") return continuity(seed, opts);
  if (name == "scale_invariance") return scale_invariance(seed, opts);
  if (name == "idempotence") return idempotence(seed, opts);
  if (name == "permutation_covariance") return permutation_covariance(seed, opts);
  throw InvalidArgument("unknown property '" + std::string(name) + "'");
}

}  // namespace entmeter
