#pragma once

// Reference implementations used only by the tests. They share no code path
// with the library: everything is built from explicit index loops.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline std::vector<std::size_t> digits(std::size_t flat, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = flat % dims[k];
    flat /= dims[k];
  }
  return d;
}

inline std::size_t flat(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
  std::size_t f = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) f = f * dims[k] + d[k];
  return f;
}

// Sums A(i,j) over all index pairs that agree on the traced parts.
inline Mat partial_trace(const Mat& a, const std::vector<std::size_t>& dims,
                         const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> kdims;
  for (auto k : keep) kdims.push_back(dims[k]);
  std::size_t kd = 1;
  for (auto d : kdims) kd *= d;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  const auto n = static_cast<std::size_t>(a.rows());
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = digits(i, dims);
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = digits(j, dims);
      bool match = true;
      for (std::size_t k = 0; k < dims.size() && match; ++k)
        if (std::find(keep.begin(), keep.end(), k) == keep.end() && di[k] != dj[k]) match = false;
      if (!match) continue;
      std::vector<std::size_t> ki, kj;
      for (auto k : keep) {
        ki.push_back(di[k]);
        kj.push_back(dj[k]);
      }
      out(static_cast<Eigen::Index>(flat(ki, kdims)), static_cast<Eigen::Index>(flat(kj, kdims))) +=
          a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

inline Vec kron(const std::vector<Vec>& f) {
  Vec v = Vec::Ones(1);
  for (const auto& x : f) {
    Vec next(v.size() * x.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
      for (Eigen::Index j = 0; j < x.size(); ++j) next(i * x.size() + j) = v(i) * x(j);
    v = next;
  }
  return v;
}

inline double objective(const Mat& a, const std::vector<Vec>& f) {
  const Vec v = kron(f);
  return std::abs(v.dot(a * v));
}

// Random product-state search followed by a stochastic hill climb with a
// shrinking step. A lower bound on the restricted norm that converges to it
// for small dimensions.
inline double restricted_norm(const Mat& a, const std::vector<std::size_t>& dims,
                              std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto random_unit = [&](std::size_t d) {
    Vec v(static_cast<Eigen::Index>(d));
    for (auto& x : v) x = cplx(g(rng), g(rng));
    return Vec(v.normalized());
  };
  std::vector<Vec> best;
  double best_val = -1.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Vec> f;
    for (auto d : dims) f.push_back(random_unit(d));
    const double val = objective(a, f);
    if (val > best_val) {
      best_val = val;
      best = f;
    }
  }
  double step = 0.3;
  for (int it = 0; it < 20000 && step > 1e-9; ++it) {
    auto trial = best;
    for (auto& v : trial) {
      for (auto& x : v) x += step * cplx(g(rng), g(rng));
      v.normalize();
    }
    const double val = objective(a, trial);
    if (val > best_val) {
      best_val = val;
      best = trial;
    } else if (it % 50 == 49) {
      step *= 0.7;
    }
  }
  return best_val;
}

inline int permutation_sign(std::vector<std::size_t> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (p[i] != i) {
      std::swap(p[i], p[p[i]]);
      sign = -sign;
    }
  }
  return sign;
}

inline double log2_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0); }

}  // namespace oracle
