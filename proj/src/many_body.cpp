#include "entmeter/many_body.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "entmeter/errors.hpp"

namespace entmeter {

namespace {

constexpr std::size_t kMaxSpinSites = 12;

void enumerate(std::size_t mode, std::size_t remaining, Statistics stat, Occupation& occ,
               std::vector<Occupation>& out) {
  const std::size_t modes = occ.size();
  if (mode + 1 == modes) {
    if (stat == Statistics::Fermi && remaining > 1) return;
    occ[mode] = static_cast<unsigned>(remaining);
    out.push_back(occ);
    return;
  }
  const std::size_t top = stat == Statistics::Fermi ? std::min<std::size_t>(remaining, 1)
                                                    : remaining;
  for (std::size_t n = top + 1; n-- > 0;) {
    occ[mode] = static_cast<unsigned>(n);
    enumerate(mode + 1, remaining - n, stat, occ, out);
  }
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

void check_density(const Operator& rho, std::size_t dim, const char* what) {
  if (rho.shape().total() != dim)
    throw InvalidArgument(std::string(what) + ": density has dimension " +
                          std::to_string(rho.shape().total()) + ", expected " +
                          std::to_string(dim));
  if (!rho.is_hermitian()) throw InvalidArgument(std::string(what) + ": density must be hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-8)
    throw InvalidArgument(std::string(what) + ": density must have unit trace");
}

// N! / ((N-p)! N^p) as a product, exact for large N.
double nonentangling_coefficient(std::size_t n, std::size_t p) {
  double c = 1.0;
  for (std::size_t k = 0; k < p; ++k) c *= 1.0 - static_cast<double>(k) / static_cast<double>(n);
  return c;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Rotates a p-part operator into the basis given by the columns of u on
// every part.
Operator rotate_all_parts(const Operator& a, const Matrix& u) {
  std::vector<Operator> locals(a.shape().parts(),
                               Operator(SpaceShape({static_cast<std::size_t>(u.rows())}), u));
  return conjugate_local(a, locals);
}

// A Pauli string S^{a_1}_{i_1} ... S^{a_p}_{i_p} acting on computational
// basis states: s -> s ^ mask with coefficient coef[s].
struct SpinString {
  std::uint32_t mask = 0;
  std::vector<cplx> coef;
};

SpinString make_string(std::size_t sites, std::span<const std::size_t> labels) {
  const std::size_t dim = std::size_t{1} << sites;
  SpinString out;
  out.coef.assign(dim, cplx(1.0));
  std::vector<std::uint32_t> state(dim);
  for (std::size_t s = 0; s < dim; ++s) state[s] = static_cast<std::uint32_t>(s);
  // Rightmost operator acts first.
  for (std::size_t k = labels.size(); k-- > 0;) {
    const std::size_t site = labels[k] / 3;
    const std::size_t axis = labels[k] % 3;
    const std::uint32_t bit = std::uint32_t{1} << (sites - 1 - site);
    for (std::size_t s = 0; s < dim; ++s) {
      const bool down = (state[s] & bit) != 0;
      switch (axis) {
        case 0:
          out.coef[s] *= 0.5;
          state[s] ^= bit;
          break;
        case 1:
          out.coef[s] *= down ? cplx(0.0, -0.5) : cplx(0.0, 0.5);
          state[s] ^= bit;
          break;
        default:
          out.coef[s] *= down ? -0.5 : 0.5;
          break;
      }
    }
    if (axis != 2) out.mask ^= bit;
  }
  return out;
}

std::size_t spin_sites(const Operator& rho) {
  const auto& dims = rho.shape().dims();
  const std::size_t total = rho.shape().total();
  std::size_t sites = 0;
  while ((std::size_t{1} << sites) < total) ++sites;
  if ((std::size_t{1} << sites) != total || sites == 0)
    throw InvalidArgument("spin density needs an operator on (C^2)^N");
  const bool qubit_shape =
      std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 2; });
  if (!qubit_shape && dims.size() != 1)
    throw InvalidArgument("spin density needs qubit parts, got shape " + rho.shape().str());
  return sites;
}

}  // namespace

const char* to_string(CouplingRange r) noexcept {
  return r == CouplingRange::Nearest ? "nearest" : "all-to-all";
}

// ---------------------------------------------------------------------------
// Fock space

FockSpace::FockSpace(std::size_t modes, std::size_t particles, Statistics stat)
    : modes_(modes), particles_(particles), stat_(stat) {
  if (modes < 1) throw InvalidArgument("Fock space needs at least one mode");
  if (stat == Statistics::Fermi && particles > modes)
    throw InvalidArgument("Fermi statistics needs at least N modes");
  Occupation occ(modes, 0);
  enumerate(0, particles, stat, occ, basis_);
  for (std::size_t k = 0; k < basis_.size(); ++k) index_.emplace(basis_[k], k);
}

std::size_t FockSpace::index_of(const Occupation& occ) const {
  auto it = index_.find(occ);
  if (it == index_.end()) throw InvalidArgument("occupation vector not in this Fock space");
  return it->second;
}

ManyBodyState fock_pure_state(const FockSpace& space, const Occupation& occ) {
  const auto idx = static_cast<Eigen::Index>(space.index_of(occ));
  const auto n = static_cast<Eigen::Index>(space.size());
  Matrix rho = Matrix::Zero(n, n);
  rho(idx, idx) = 1.0;
  return {space, Operator(SpaceShape({space.size()}), std::move(rho), Hermiticity::Yes)};
}

ManyBodyState condensate(std::size_t modes, std::size_t particles) {
  if (particles < 1) throw InvalidArgument("condensate needs N >= 1");
  FockSpace space(modes, particles, Statistics::Bose);
  Occupation occ(modes, 0);
  occ[0] = static_cast<unsigned>(particles);
  return fock_pure_state(space, occ);
}

ManyBodyState fermi_sea(std::size_t modes, std::size_t particles) {
  if (particles < 1) throw InvalidArgument("fermi_sea needs N >= 1");
  FockSpace space(modes, particles, Statistics::Fermi);
  Occupation occ(modes, 0);
  for (std::size_t k = 0; k < particles; ++k) occ[k] = 1;
  return fock_pure_state(space, occ);
}

ManyBodyState ideal_gas_thermal(std::size_t particles, Statistics stat,
                                std::span<const double> energies, double beta) {
  if (!(beta >= 0.0)) throw InvalidArgument("inverse temperature must be >= 0");
  FockSpace space(energies.size(), particles, stat);
  const auto n = static_cast<Eigen::Index>(space.size());
  Eigen::VectorXd w(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    double e = 0.0;
    const auto& occ = space.basis()[static_cast<std::size_t>(s)];
    for (std::size_t k = 0; k < occ.size(); ++k) e += energies[k] * occ[k];
    w(s) = -beta * e;
  }
  w = (w.array() - w.maxCoeff()).exp();
  w /= w.sum();
  Matrix rho = w.cast<cplx>().asDiagonal();
  return {space, Operator(SpaceShape({space.size()}), std::move(rho), Hermiticity::Yes)};
}

// ---------------------------------------------------------------------------
// Field-operator reduced density matrices

ReducedDensityMatrix reduced_dm(const FockSpace& space, const Operator& rho, std::size_t p) {
  if (p < 1 || p > space.particles())
    throw InvalidArgument("reduced_dm needs 1 <= p <= N (p = " + std::to_string(p) +
                          ", N = " + std::to_string(space.particles()) + ")");
  check_density(rho, space.size(), "reduced_dm");

  const std::size_t m = space.modes();
  const FockSpace target(m, space.particles() - p, space.statistics());
  const std::size_t tuples = ipow(m, p);
  const std::size_t dt = target.size();
  const std::size_t ds = space.size();
  const bool fermi = space.statistics() == Statistics::Fermi;

  // Rows x * dt + t of `lower` hold psi(x_1)...psi(x_p) as a map from the
  // N-particle sector into the (N-p)-particle sector.
  Matrix lower = Matrix::Zero(static_cast<Eigen::Index>(tuples * dt),
                              static_cast<Eigen::Index>(ds));
  const SpaceShape tuple_shape = SpaceShape::uniform(p, m);
  for (std::size_t x = 0; x < tuples; ++x) {
    const auto modes = tuple_shape.digits(x);
    for (std::size_t s = 0; s < ds; ++s) {
      Occupation occ = space.basis()[s];
      double coef = 1.0;
      for (std::size_t k = p; k-- > 0 && coef != 0.0;) {
        const std::size_t mode = modes[k];
        if (occ[mode] == 0) {
          coef = 0.0;
          break;
        }
        if (fermi) {
          unsigned before = 0;
          for (std::size_t y = 0; y < mode; ++y) before += occ[y];
          if (before % 2 == 1) coef = -coef;
        } else {
          coef *= std::sqrt(static_cast<double>(occ[mode]));
        }
        --occ[mode];
      }
      if (coef != 0.0)
        lower(static_cast<Eigen::Index>(x * dt + target.index_of(occ)),
              static_cast<Eigen::Index>(s)) = coef;
    }
  }

  const Matrix gram = lower * rho.matrix() * lower.adjoint();
  const auto n = static_cast<Eigen::Index>(tuples);
  Matrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) {
      cplx sum = 0.0;
      for (std::size_t t = 0; t < dt; ++t)
        sum += gram(r * static_cast<Eigen::Index>(dt) + static_cast<Eigen::Index>(t),
                    c * static_cast<Eigen::Index>(dt) + static_cast<Eigen::Index>(t));
      out(r, c) = sum;
    }
  return {p, m, space.particles(), space.statistics(),
          Operator(tuple_shape, hermitian_part(out), Hermiticity::Yes)};
}

Matrix natural_orbitals(const Operator& one_body) {
  const Matrix& m = one_body.matrix();
  if (one_body.shape().parts() != 1)
    throw InvalidArgument("natural orbitals need a single-partite matrix");
  if (!one_body.is_hermitian()) throw InvalidArgument("natural orbitals need a hermitian matrix");
  Matrix off = m;
  off.diagonal().setZero();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (off.cwiseAbs().maxCoeff() <= 1e-12 * scale) return Matrix::Identity(m.rows(), m.cols());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hermitian_part(m));
  return eig.eigenvectors().rowwise().reverse();
}

MeasureResult measure_reduced(const FockSpace& space, const Operator& rho, std::size_t p,
                              NormMode mode, double base, const NormOptions& opts) {
  if (mode == NormMode::FullSpace)
    throw InvalidArgument("measure_reduced uses variational or basis norms");
  const auto rho_p = reduced_dm(space, rho, p);
  const auto rho_1 = reduced_dm(space, rho, 1);

  NormResult norm_p;
  double norm_1 = 0.0;
  if (mode == NormMode::Variational) {
    norm_p = restricted_norm_variational(rho_p.matrix, opts);
    norm_1 = full_norm(rho_1.matrix);
  } else {
    const Matrix u = natural_orbitals(rho_1.matrix);
    norm_p = restricted_norm_basis(rotate_all_parts(rho_p.matrix, u));
    norm_1 = restricted_norm_basis(rotate_all_parts(rho_1.matrix, u)).value;
  }
  const double coefficient = nonentangling_coefficient(space.particles(), p);
  NormResult norm_product;
  norm_product.value = coefficient * std::pow(norm_1, static_cast<double>(p));
  norm_product.converged = true;
  norm_product.restarts = norm_product.restarts_converged = norm_product.restarts_agreeing = 1;

  MeasureResult r = measure_from_norms(norm_p.value, norm_product.value, base, mode,
                                       rho_p.matrix.shape().total());
  if (!norm_p.converged)
    r.warnings.push_back("NonConvergence: no optimizer restart met the tolerance");
  r.norm_A_diagnostics = std::move(norm_p);
  r.norm_Aotimes_diagnostics = std::move(norm_product);
  return r;
}

// ---------------------------------------------------------------------------
// Spin density matrices

SpinDensityMatrix spin_density_matrix(const Operator& rho, std::size_t p) {
  if (p == 0) throw InvalidArgument("spin density order must be >= 1");
  if (p > 2) throw Unsupported("spin density matrices are limited to p <= 2 ((3N)^p growth)");
  const std::size_t sites = spin_sites(rho);
  if (sites > kMaxSpinSites) throw InvalidArgument("spin density supports N <= 12");
  if (!rho.is_hermitian()) throw InvalidArgument("spin density needs a hermitian operator");

  const std::size_t labels = 3 * sites;
  const SpaceShape shape = SpaceShape::uniform(p, labels);
  std::vector<SpinString> strings;
  strings.reserve(shape.total());
  for (std::size_t idx = 0; idx < shape.total(); ++idx) {
    const auto digits = shape.digits(idx);
    strings.push_back(make_string(sites, digits));
  }

  const Matrix& m = rho.matrix();
  const std::size_t dim = std::size_t{1} << sites;
  const auto n = static_cast<Eigen::Index>(strings.size());
  Matrix out(n, n);
  // R(I, J) = Tr[T_I rho T_J^dag] = sum_s c_I(s) rho(s, s') conj(c_J(s'))
  // with s' = s ^ mask_I ^ mask_J.
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& sj = strings[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& si = strings[static_cast<std::size_t>(i)];
      const std::uint32_t flip = si.mask ^ sj.mask;
      cplx sum = 0.0;
      for (std::size_t s = 0; s < dim; ++s) {
        const std::size_t t = s ^ flip;
        sum += si.coef[s] * m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) *
               std::conj(sj.coef[t]);
      }
      out(i, j) = sum;
    }
  }
  return {p, sites, Operator(shape, hermitian_part(out), Hermiticity::Yes)};
}

MeasureResult measure_spin(const Operator& rho, std::size_t p, NormMode mode, double base,
                           const NormOptions& opts) {
  if (mode == NormMode::FullSpace)
    throw InvalidArgument("measure_spin uses variational or basis norms");
  const auto r_p = spin_density_matrix(rho, p);
  const auto r_1 = p == 1 ? r_p : spin_density_matrix(rho, 1);

  NormResult norm_p;
  double norm_1 = 0.0;
  if (mode == NormMode::Variational) {
    norm_p = restricted_norm_variational(r_p.matrix, opts);
    norm_1 = full_norm(r_1.matrix);
  } else {
    const Matrix u = natural_orbitals(r_1.matrix);
    norm_p = restricted_norm_basis(rotate_all_parts(r_p.matrix, u));
    norm_1 = restricted_norm_basis(rotate_all_parts(r_1.matrix, u)).value;
  }
  NormResult norm_product;
  norm_product.value = std::pow(norm_1, static_cast<double>(p));
  norm_product.converged = true;
  norm_product.restarts = norm_product.restarts_converged = norm_product.restarts_agreeing = 1;

  MeasureResult r = measure_from_norms(norm_p.value, norm_product.value, base, mode,
                                       r_p.matrix.shape().total());
  if (!norm_p.converged)
    r.warnings.push_back("NonConvergence: no optimizer restart met the tolerance");
  r.norm_A_diagnostics = std::move(norm_p);
  r.norm_Aotimes_diagnostics = std::move(norm_product);
  return r;
}

// ---------------------------------------------------------------------------
// Spin models

Operator heisenberg_hamiltonian(std::size_t sites, double coupling, CouplingRange range) {
  if (sites < 1 || sites > kMaxSpinSites)
    throw InvalidArgument("heisenberg_hamiltonian supports 1 <= N <= 12");
  const std::size_t dim = std::size_t{1} << sites;
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix h = Matrix::Zero(n, n);

  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  double scale = -coupling;
  if (range == CouplingRange::Nearest) {
    for (std::size_t i = 0; i + 1 < sites; ++i) bonds.emplace_back(i, i + 1);
  } else {
    for (std::size_t i = 0; i < sites; ++i)
      for (std::size_t j = i + 1; j < sites; ++j) bonds.emplace_back(i, j);
    scale /= static_cast<double>(sites);
  }
  // S_i . S_j = S^z S^z + (S^+ S^- + S^- S^+) / 2
  for (auto [i, j] : bonds) {
    const std::size_t bi = std::size_t{1} << (sites - 1 - i);
    const std::size_t bj = std::size_t{1} << (sites - 1 - j);
    for (std::size_t s = 0; s < dim; ++s) {
      const bool same = ((s & bi) != 0) == ((s & bj) != 0);
      const auto is = static_cast<Eigen::Index>(s);
      h(is, is) += scale * (same ? 0.25 : -0.25);
      if (!same) h(static_cast<Eigen::Index>(s ^ bi ^ bj), is) += scale * 0.5;
    }
  }
  return Operator(SpaceShape::uniform(sites, 2), std::move(h), Hermiticity::Yes);
}

Operator total_spin_z(std::size_t sites) {
  if (sites < 1 || sites > kMaxSpinSites) throw InvalidArgument("total_spin_z supports 1 <= N <= 12");
  const std::size_t dim = std::size_t{1} << sites;
  Matrix sz = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    const int downs = std::popcount(s);
    sz(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) =
        0.5 * static_cast<double>(static_cast<int>(sites) - 2 * downs);
  }
  return Operator(SpaceShape::uniform(sites, 2), std::move(sz), Hermiticity::Yes);
}

Operator polarized_state(std::size_t sites) {
  if (sites < 1 || sites > kMaxSpinSites) throw InvalidArgument("polarized_state supports 1 <= N <= 12");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << sites);
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return Operator(SpaceShape::uniform(sites, 2), std::move(rho), Hermiticity::Yes);
}

}  // namespace entmeter
