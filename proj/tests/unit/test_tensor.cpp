#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "entmeter/errors.hpp"
#include "entmeter/states.hpp"
#include "entmeter/tensor.hpp"
#include "oracles.hpp"

using namespace entmeter;

namespace {

Operator diag_op(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (double x : d) v(k++) = x;
  return Operator(SpaceShape({d.size()}), v.asDiagonal().toDenseMatrix());
}

Operator random_matrix(std::size_t d, std::uint64_t seed) {
  auto rng = make_rng(seed, 99);
  std::normal_distribution<double> g;
  Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cplx(g(rng), g(rng));
  return Operator(SpaceShape({d}), m);
}

}  // namespace

TEST(SpaceShape, DigitsRoundTripRowMajor) {
  const SpaceShape s({2, 3, 4});
  EXPECT_EQ(s.total(), 24u);
  for (std::size_t f = 0; f < s.total(); ++f) {
    const auto d = s.digits(f);
    EXPECT_EQ(s.flat(d), f);
    EXPECT_EQ(d, oracle::digits(f, s.dims()));
  }
  // first part is slowest
  EXPECT_EQ(s.digits(12), (std::vector<std::size_t>{1, 0, 0}));
}

TEST(SpaceShape, RejectsZeroDimension) {
  EXPECT_THROW(SpaceShape({2, 0}), InvalidArgument);
  EXPECT_THROW(SpaceShape(std::vector<std::size_t>{}), InvalidArgument);
}

TEST(Operator, DimensionMismatchAndFalseHermitianClaim) {
  EXPECT_THROW(Operator(SpaceShape({2}), Matrix::Identity(3, 3)), InvalidArgument);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(Operator(SpaceShape({2}), m, Hermiticity::Yes), InvalidArgument);
  EXPECT_FALSE(Operator(SpaceShape({2}), m).is_hermitian());
}

TEST(ProductState, RequiresUnitFactors) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(ProductState({v}), InvalidArgument);
}

TEST(TensorProduct, IdentityCase) {
  const Operator i2 = Operator::identity(SpaceShape({2}));
  const Operator ops[] = {i2, i2};
  const Operator r = tensor_product(ops);
  EXPECT_EQ(r.shape(), SpaceShape({2, 2}));
  EXPECT_TRUE(r.matrix().isApprox(Matrix::Identity(4, 4)));
}

TEST(TensorProduct, DiagonalCase) {
  const Operator z = diag_op({1, -1});
  const Operator ops[] = {z, z};
  const Operator r = tensor_product(ops);
  const Vector expected = (Vector(4) << 1, -1, -1, 1).finished();
  EXPECT_TRUE(r.matrix().isApprox(Matrix(expected.asDiagonal())));
}

TEST(TensorProduct, TraceFactorizesSeed7) {
  const Operator a = random_matrix(2, 7);
  const Operator b = random_matrix(2, 7 + 1);
  const Operator ops[] = {a, b};
  const Operator ab = tensor_product(ops);
  // direct summation over the composite index
  cplx direct = 0.0;
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) direct += a.matrix()(i, i) * b.matrix()(j, j);
  EXPECT_LT(std::abs(ab.trace() - direct), 1e-12);
  EXPECT_LT(std::abs(ab.trace() - a.trace() * b.trace()), 1e-12);
}

TEST(TensorProduct, EmptyListRejected) {
  EXPECT_THROW(tensor_product(std::span<const Operator>{}), InvalidArgument);
}

TEST(PartialTrace, EprMarginal) {
  const Operator rho = outer(epr(1));
  const std::size_t keep[] = {0};
  const Operator r = partial_trace(rho, keep);
  EXPECT_TRUE(r.matrix().isApprox(0.5 * Matrix::Identity(2, 2), 1e-14));
}

TEST(PartialTrace, KeepAllIsIdentityMap) {
  const Operator a = random_density(SpaceShape({2, 3}), 4);
  const std::size_t keep[] = {0, 1};
  EXPECT_LT((partial_trace(a, keep).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, ProductSeed5) {
  const Operator a = random_matrix(2, 5);
  const Operator b = random_matrix(3, 5 + 1);
  const Operator ops[] = {a, b};
  const std::size_t keep[] = {0};
  const Operator r = partial_trace(tensor_product(ops), keep);
  EXPECT_LT((r.matrix() - b.trace() * a.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, MatchesIndexSummationOracle) {
  const SpaceShape s({2, 3, 2});
  const Operator a = random_density(s, 21);
  const std::vector<std::vector<std::size_t>> keeps = {{0}, {1}, {2}, {0, 2}, {2, 0}, {1, 2}};
  for (const auto& keep : keeps) {
    const Matrix ref = oracle::partial_trace(a.matrix(), s.dims(), keep);
    const Matrix got = partial_trace(a, keep).matrix();
    EXPECT_LT((ref - got).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(PartialTrace, TracePreservedHermitianAndComposable) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SpaceShape s({2, 2, 3});
    const Operator a = random_psd(s, seed);
    for (const std::vector<std::size_t>& keep :
         std::vector<std::vector<std::size_t>>{{0}, {1, 2}, {0, 2}}) {
      const Operator r = partial_trace(a, keep);
      EXPECT_LT(std::abs(r.trace() - a.trace()), 1e-10 * std::abs(a.trace()) + 1e-12);
      EXPECT_LT(max_abs_antihermitian(r.matrix()), 1e-10);
    }
    const std::size_t keep01[] = {0, 1};
    const std::size_t keep0[] = {0};
    const Operator seq = partial_trace(partial_trace(a, keep01), keep0);
    EXPECT_LT((seq.matrix() - partial_trace(a, keep0).matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Outer, BasisAndEpr) {
  const Vector e1 = (Vector(2) << 1, 0).finished();
  const Operator p = outer(PureState(SpaceShape({2}), e1));
  EXPECT_TRUE(p.matrix().isApprox((Matrix(2, 2) << 1, 0, 0, 0).finished()));

  const Matrix m = outer(epr(1)).matrix();
  EXPECT_NEAR(m(1, 1).real(), 0.5, 1e-15);
  EXPECT_NEAR(m(2, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(m(1, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(outer(epr(-1)).matrix()(1, 2).real(), -0.5, 1e-15);
  EXPECT_NEAR(m(0, 0).real() + m(3, 3).real(), 0.0, 1e-15);
}

TEST(Outer, RandomStateUnitTrace) {
  auto rng = make_rng(3);
  std::normal_distribution<double> g;
  Vector v(6);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  const Operator p = outer(PureState(SpaceShape({2, 3}), v.normalized()));
  EXPECT_LT(std::abs(p.trace() - 1.0), 1e-12);
}

TEST(Outer, RejectsUnnormalized) {
  const Vector v = (Vector(2) << 1, 1).finished();
  EXPECT_THROW(outer(PureState(SpaceShape({2}), v)), InvalidArgument);
}

TEST(QuadraticForm, EprExamples) {
  const Operator rho = outer(epr(1));
  const SpaceShape s({2, 2});
  const std::size_t d12[] = {0, 1};
  const std::size_t d11[] = {0, 0};
  EXPECT_NEAR(std::abs(quadratic_form(ProductState::basis(s, d12), rho)), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(quadratic_form(ProductState::basis(s, d11), rho)), 0.0, 1e-15);
  EXPECT_NEAR(quadratic_form(random_product_state(s, 9), Operator::identity(s)).real(), 1.0,
              1e-14);
}

TEST(QuadraticForm, ContractedMatchesEmbedded) {
  const SpaceShape s({2, 3, 2});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Operator a = random_density(s, seed);
    const ProductState f = random_product_state(s, seed + 100);
    const Vector v = embed_product(f).amplitudes();
    const cplx embedded = v.dot(a.matrix() * v);
    EXPECT_LT(std::abs(quadratic_form(f, a) - embedded), 1e-12);
    EXPECT_LT((v - oracle::kron(f.factors())).norm(), 1e-14);
  }
}

TEST(EmbedProduct, BasisVector) {
  const SpaceShape s({2, 2});
  const std::size_t d12[] = {0, 1};
  const Vector v = embed_product(ProductState::basis(s, d12)).amplitudes();
  EXPECT_EQ(v, (Vector(4) << 0, 1, 0, 0).finished());
}

TEST(RandomFixtures, DensityIsPsdUnitTrace) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Operator rho = random_density(SpaceShape({2, 2, 2}), seed);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    EXPECT_LT(std::abs(rho.trace() - 1.0), 1e-12);
  }
}

TEST(RandomFixtures, LocalUnitariesAreUnitary) {
  const SpaceShape s({2, 3, 4});
  const auto u = random_local_unitaries(s, 13);
  ASSERT_EQ(u.size(), 3u);
  for (const auto& x : u) {
    const auto n = x.matrix().rows();
    EXPECT_LE((x.matrix().adjoint() * x.matrix() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(),
              1e-10);
  }
}

TEST(RandomFixtures, SeedsAreReproducible) {
  const SpaceShape s({2, 2});
  EXPECT_EQ(random_density(s, 42).matrix(), random_density(s, 42).matrix());
  EXPECT_NE(random_density(s, 42).matrix(), random_density(s, 43).matrix());
}

TEST(ConjugateLocal, MatchesFullKronecker) {
  const SpaceShape s({2, 3});
  const Operator a = random_density(s, 8);
  const auto u = random_local_unitaries(s, 8);
  const Operator big = tensor_product(u);
  const Matrix ref = big.matrix().adjoint() * a.matrix() * big.matrix();
  EXPECT_LT((conjugate_local(a, u).matrix() - ref).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(PermuteParts, MatchesIndexRelabel) {
  const SpaceShape s({2, 3, 4});
  const Operator a = random_psd(s, 2);
  const std::vector<std::size_t> perm = {2, 0, 1};
  const Operator p = permute_parts(a, perm);
  EXPECT_EQ(p.shape(), SpaceShape({4, 2, 3}));
  for (std::size_t i = 0; i < s.total(); ++i) {
    for (std::size_t j = 0; j < s.total(); ++j) {
      const auto di = s.digits(i), dj = s.digits(j);
      std::vector<std::size_t> pi, pj;
      for (auto k : perm) {
        pi.push_back(di[k]);
        pj.push_back(dj[k]);
      }
      EXPECT_EQ(p.matrix()(static_cast<Eigen::Index>(p.shape().flat(pi)),
                           static_cast<Eigen::Index>(p.shape().flat(pj))),
                a.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
}

TEST(ContractPart, MatchesEffectiveMatrix) {
  const SpaceShape s({2, 3, 2});
  const Operator a = random_density(s, 17);
  const ProductState f = random_product_state(s, 18);
  for (std::size_t part = 0; part < 3; ++part) {
    Operator reduced = a;
    // contract every other part, highest first so indices stay valid
    for (std::size_t k = 3; k-- > 0;) {
      if (k == part) continue;
      reduced = contract_part(reduced, k, f.factor(k));
    }
    const Matrix eff = effective_matrix(a, f.factors(), part);
    EXPECT_LT((reduced.matrix() - eff).cwiseAbs().maxCoeff(), 1e-13);
  }
}
