#pragma once

// The entanglement measure eps(A) = log(||A||_D / ||A_nonent||_D) and the
// operator order index.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "entmeter/norms.hpp"
#include "entmeter/tensor.hpp"

namespace entmeter {

inline constexpr double kDefaultLogBase = 2.0;

struct MeasureResult {
  double epsilon = 0.0;
  double norm_D_A = 0.0;
  double norm_D_Aotimes = 0.0;
  double log_base = kDefaultLogBase;
  NormMode mode = NormMode::Variational;
  std::optional<NormResult> norm_A_diagnostics;
  std::optional<NormResult> norm_Aotimes_diagnostics;
  std::vector<std::string> warnings;
};

struct OrderIndexResult {
  double omega = 0.0;
  double norm = 0.0;
  double trace_abs = 0.0;
};

/// Product form scalar * (F_0 (x) ... (x) F_{K-1}) of the nonentangling
/// counterpart, kept factorized so its norms never need the assembled matrix.
struct Nonentangling {
  cplx scalar;
  std::vector<Operator> factors;

  Operator assemble() const;
};

double log_in_base(double x, double base);

/// Element i is Tr_{j != i} A, unnormalized.
std::vector<Operator> single_partite_reductions(const Operator& a);

/// A_nonent = (Tr A)^{1-K} (x)_i Tr_{j != i} A, which has Tr A_nonent = Tr A.
/// Throws DegenerateTrace when |Tr A| <= 1e-12 ||A||_F.
Nonentangling nonentangling_factors(const Operator& a);
Operator nonentangling(const Operator& a);

/// eps(A) in the given base. Variational mode uses the multistart optimizer
/// for ||A||_D and the exact factorized norm for the product operator; Basis
/// mode uses product-basis suprema for both.
MeasureResult entanglement(const Operator& a, NormMode mode = NormMode::Variational,
                           double base = kDefaultLogBase, const NormOptions& opts = {});

/// Assembles a MeasureResult from the two norms, raising ZeroNorm below
/// 1e-14 * total_dim.
MeasureResult measure_from_norms(double norm_a, double norm_aotimes, double base,
                                 NormMode mode, std::size_t total_dim);

/// log_base((N-p)! N^p ||rho_p||_D / (N! ||rho_1||^p)).
double reduced_measure_formula(std::size_t n, std::size_t p, double norm_p,
                               double norm_1, double base = kDefaultLogBase);

/// omega = log ||A|| / log |Tr A|.
OrderIndexResult order_index(const Operator& a);

}  // namespace entmeter
