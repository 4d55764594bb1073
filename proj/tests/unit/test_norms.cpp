#include <gtest/gtest.h>

#include <cmath>

#include "entmeter/errors.hpp"
#include "entmeter/norms.hpp"
#include "entmeter/states.hpp"
#include "oracles.hpp"

using namespace entmeter;

namespace {

Operator hermitian(const SpaceShape& s, std::uint64_t seed) {
  auto rng = make_rng(seed, 5);
  std::normal_distribution<double> g;
  const auto n = static_cast<Eigen::Index>(s.total());
  Matrix m(n, n);
  for (auto& x : m.reshaped()) x = cplx(g(rng), g(rng));
  return Operator(s, (m + m.adjoint()) / 2.0, Hermiticity::Yes);
}

Operator diag_op(const SpaceShape& s, const Vector& d) {
  return Operator(s, d.asDiagonal().toDenseMatrix());
}

}  // namespace

TEST(FullNorm, Examples) {
  EXPECT_NEAR(full_norm(Operator::identity(SpaceShape({3}))), 1.0, 1e-15);
  EXPECT_NEAR(full_norm(outer(ghz(1))), 1.0, 1e-14);
  EXPECT_NEAR(full_norm(diag_op(SpaceShape({2}), (Vector(2) << 0.2, 0.8).finished())), 0.8, 1e-15);
}

TEST(FullNorm, NonHermitianUsesSingularValue) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 3.0;
  EXPECT_NEAR(full_norm(Operator(SpaceShape({2}), m)), 3.0, 1e-14);
}

TEST(Variational, WorkedExamples) {
  EXPECT_NEAR(restricted_norm_variational(outer(epr(1))).value, 0.5, 1e-12);
  EXPECT_NEAR(restricted_norm_variational(outer(ghz(1))).value, 0.5, 1e-12);
}

TEST(Variational, ProductProjectorMaximizer) {
  const SpaceShape s({2, 2});
  const Vector d = (Vector(4) << 1, 0, 0, 0).finished();
  const NormResult r = restricted_norm_variational(diag_op(s, d));
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  ASSERT_TRUE(r.maximizer.has_value());
  for (const auto& f : r.maximizer->factors()) {
    EXPECT_NEAR(f(0).real(), 1.0, 1e-9);
    EXPECT_NEAR(f(0).imag(), 0.0, 1e-15);
  }
}

TEST(Variational, BoseHartreeFockAgainstBruteForce) {
  const Operator rho = outer(hartree_fock(3, Statistics::Bose));
  const double v = restricted_norm_variational(rho).value;
  EXPECT_NEAR(v, 6.0 / 27.0, 1e-10);
  const double brute = oracle::restricted_norm(rho.matrix(), {3, 3, 3}, 4000, 1);
  EXPECT_NEAR(brute, 6.0 / 27.0, 1e-6);
  EXPECT_LE(brute, v + 1e-10);
}

TEST(Variational, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 3) = 1.0;
  EXPECT_THROW(restricted_norm_variational(Operator(SpaceShape({2, 2}), m)), InvalidArgument);
}

TEST(Variational, RejectsBadOptions) {
  NormOptions o;
  o.restarts = 0;
  EXPECT_THROW(restricted_norm_variational(outer(epr(1)), o), InvalidArgument);
}

TEST(Variational, NonConvergenceFlaggedNotThrown) {
  NormOptions o;
  o.max_sweeps = 1;
  o.restarts = 4;
  const NormResult r = restricted_norm_variational(random_density(SpaceShape({2, 2, 2}), 3), o);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.value, 0.0);
  EXPECT_THROW(require_converged(r), NonConvergence);
}

TEST(Variational, DeterministicAcrossThreadCounts) {
  const Operator a = random_density(SpaceShape({2, 3, 2}), 12);
  NormOptions one;
  NormOptions many;
  many.threads = 4;
  const NormResult r1 = restricted_norm_variational(a, one);
  const NormResult r4 = restricted_norm_variational(a, many);
  EXPECT_EQ(r1.value, r4.value);
  EXPECT_EQ(r1.sweeps_used, r4.sweeps_used);
  EXPECT_EQ(embed_product(*r1.maximizer).amplitudes(), embed_product(*r4.maximizer).amplitudes());
}

TEST(Variational, MonotoneSweepsEveryRestart) {
  NormOptions o;
  o.record_history = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NormResult r = restricted_norm_variational(random_density(SpaceShape({2, 2, 2}), seed), o);
    EXPECT_TRUE(r.monotone);
    ASSERT_EQ(r.history.size(), o.restarts);
    for (const auto& h : r.history)
      for (std::size_t k = 1; k < h.size(); ++k) EXPECT_GE(h[k], h[k - 1] - 1e-12);
  }
}

TEST(Basis, Examples) {
  EXPECT_NEAR(restricted_norm_basis(outer(epr(1))).value, 0.5, 1e-15);
  EXPECT_NEAR(restricted_norm_basis(outer(hartree_fock(3, Statistics::Bose))).value, 1.0 / 6.0,
              1e-15);
  const Vector d = (Vector(4) << 0.1, -0.7, 0.3, 0.2).finished();
  EXPECT_NEAR(restricted_norm_basis(diag_op(SpaceShape({2, 2}), d)).value, 0.7, 1e-15);
}

TEST(Oracle, Examples) {
  EXPECT_NEAR(restricted_norm_oracle(outer(epr(1)), 1000, 0), 0.5, 1e-6);
  EXPECT_NEAR(restricted_norm_oracle(Operator::identity(SpaceShape({2, 2})), 100, 0), 1.0, 1e-12);
  const Operator a = random_density(SpaceShape({2, 2}), 11);
  EXPECT_LE(restricted_norm_oracle(a, 1000, 0), restricted_norm_variational(a).value + 1e-8);
}

TEST(Oracle, AgreesWithVariationalAndBruteForce) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const SpaceShape s = SpaceShape::uniform(seed % 2 == 0 ? 2 : 3, 2);
    const Operator a = random_density(s, seed + 200);
    const double v = restricted_norm_variational(a).value;
    EXPECT_NEAR(restricted_norm_oracle(a, 10000, seed), v, 1e-4);
    EXPECT_NEAR(oracle::restricted_norm(a.matrix(), s.dims(), 2000, seed), v, 1e-6);
  }
}

TEST(Factorized, Examples) {
  const Operator half = Operator::identity(SpaceShape({2})).scaled(0.5);
  const Operator two[] = {half, half};
  EXPECT_NEAR(factorized_restricted_norm(two, 1.0), 0.25, 1e-15);
  const Operator ids[] = {Operator::identity(SpaceShape({2})), Operator::identity(SpaceShape({3}))};
  EXPECT_NEAR(factorized_restricted_norm(ids, 1.0), 1.0, 1e-15);
  const Operator three[] = {half, half, half};
  EXPECT_NEAR(factorized_restricted_norm(three, 1.0), 0.125, 1e-15);
}

TEST(Factorized, MatchesVariationalOnAssembledProduct) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    std::vector<Operator> f = {random_psd(SpaceShape({2}), seed), random_psd(SpaceShape({3}), seed + 50),
                               random_psd(SpaceShape({2}), seed + 99)};
    const Operator whole = tensor_product(f);
    const double fact = factorized_restricted_norm(f, 1.0);
    EXPECT_NEAR(restricted_norm_variational(whole).value, fact, 1e-8 * fact);
    EXPECT_NEAR(factorized_basis_norm(f, 1.0), restricted_norm_basis(whole).value, 1e-14 * fact);
  }
}

TEST(Properties, HomogeneityAndOrdering) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Operator a = hermitian(SpaceShape({2, 3}), seed);
    const double c = seed % 2 == 0 ? -2.5 : 0.3;
    const double v = restricted_norm_variational(a).value;
    const double b = restricted_norm_basis(a).value;
    EXPECT_NEAR(restricted_norm_variational(a.scaled(c)).value, std::abs(c) * v, 1e-9 * std::abs(c) * v);
    EXPECT_NEAR(restricted_norm_basis(a.scaled(c)).value, std::abs(c) * b, 1e-9 * std::abs(c) * b);
    EXPECT_LE(b, v + 1e-12);
    EXPECT_LE(v, full_norm(a) + 1e-9);
  }
}

TEST(Dispatch, ModesAndParsing) {
  const Operator rho = outer(epr(1));
  EXPECT_NEAR(restricted_norm(rho, NormMode::Basis).value, 0.5, 1e-15);
  EXPECT_NEAR(restricted_norm(rho, NormMode::FullSpace).value, 1.0, 1e-14);
  EXPECT_EQ(parse_norm_mode("basis"), NormMode::Basis);
  EXPECT_EQ(parse_norm_mode("variational"), NormMode::Variational);
  EXPECT_THROW(parse_norm_mode("best"), InvalidArgument);
}

TEST(Conventions, PhaseAndTies) {
  Vector v(3);
  v << cplx(0, 0.5), cplx(0, -0.5), 0.1;
  fix_phase(v);
  EXPECT_NEAR(v(0).real(), 0.5, 1e-15);
  EXPECT_NEAR(v(0).imag(), 0.0, 1e-15);
  EXPECT_NEAR(v(1).real(), -0.5, 1e-15);

  Eigen::VectorXd ev(3);
  ev << -1.0, 0.5, 1.0;
  EXPECT_EQ(dominant_index(ev), 0);
}
