#include "entmeter/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "entmeter/errors.hpp"

namespace entmeter {

const char* to_string(Statistics s) noexcept {
  return s == Statistics::Bose ? "bose" : "fermi";
}

namespace {

constexpr double kCoefficientTol = 1e-10;

int check_sign(int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  return sign;
}

PureState two_term(const SpaceShape& shape, std::size_t first, std::size_t second,
                   cplx c1, cplx c2) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.total()));
  v(static_cast<Eigen::Index>(first)) = c1;
  v(static_cast<Eigen::Index>(second)) = c2;
  return PureState(shape, std::move(v));
}

// Flat index of |n n ... n>.
std::size_t diagonal_string(std::size_t parts, std::size_t dim, std::size_t n) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < parts; ++k) idx = idx * dim + n;
  return idx;
}

int parity(const std::vector<std::size_t>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

PureState epr(int sign) {
  const double a = 1.0 / std::sqrt(2.0);
  return two_term(SpaceShape({2, 2}), 1, 2, a, check_sign(sign) * a);
}

PureState bell(int sign) {
  const double a = 1.0 / std::sqrt(2.0);
  return two_term(SpaceShape({2, 2}), 0, 3, a, check_sign(sign) * a);
}

PureState ghz(int sign) {
  const double a = 1.0 / std::sqrt(2.0);
  return two_term(SpaceShape::uniform(3, 2), 0, 7, a, check_sign(sign) * a);
}

PureState multicat(std::size_t parts, cplx c1, cplx c2) {
  const cplx c[] = {c1, c2};
  return multimode(parts, c);
}

PureState multimode(std::size_t parts, std::span<const cplx> c) {
  if (parts < 2) throw InvalidArgument("multimode/multicat needs at least 2 parts");
  if (c.size() < 2) throw InvalidArgument("multimode needs at least 2 coefficients");
  double weight = 0.0;
  for (auto x : c) weight += std::norm(x);
  if (std::abs(weight - 1.0) > kCoefficientTol)
    throw InvalidArgument("coefficients must satisfy sum |c_n|^2 = 1 (got " +
                          std::to_string(weight) + ")");
  const SpaceShape shape = SpaceShape::uniform(parts, c.size());
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.total()));
  for (std::size_t n = 0; n < c.size(); ++n)
    v(static_cast<Eigen::Index>(diagonal_string(parts, c.size(), n))) = c[n];
  return PureState(shape, std::move(v));
}

PureState hartree_fock(std::size_t n, Statistics stat) {
  if (n < 2) throw InvalidArgument("hartree_fock needs N >= 2");
  if (n > 8) throw InvalidArgument("hartree_fock: N^N amplitudes exceed the dense limit");
  const SpaceShape shape = SpaceShape::uniform(n, n);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.total()));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double count = 0.0;
  do {
    const int sign = stat == Statistics::Fermi ? parity(perm) : 1;
    v(static_cast<Eigen::Index>(shape.flat(perm))) = static_cast<double>(sign);
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  v /= std::sqrt(count);
  return PureState(shape, std::move(v));
}

Operator reduced_hartree_fock(std::size_t n, std::size_t p, Statistics stat) {
  if (p < 1 || p > n)
    throw InvalidArgument("reduced_hartree_fock needs 1 <= p <= N");
  const Operator rho = outer(hartree_fock(n, stat));
  if (p == n) return rho;
  std::vector<std::size_t> keep(p);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  return partial_trace(rho, keep);
}

Operator gibbs(const Operator& h, double beta) {
  if (!h.is_hermitian()) throw InvalidArgument("gibbs() needs a hermitian Hamiltonian");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw InvalidArgument("inverse temperature must be finite and >= 0");
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Eigen::VectorXd& e = eig.eigenvalues();
  const double ground = e.minCoeff();
  Eigen::VectorXd w = (-beta * (e.array() - ground)).exp();
  w /= w.sum();
  const Matrix& u = eig.eigenvectors();
  Matrix rho = u * w.cast<cplx>().asDiagonal() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return Operator(h.shape(), std::move(rho), Hermiticity::Yes);
}

}  // namespace entmeter
