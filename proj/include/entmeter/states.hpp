#pragma once

// Named states of the worked examples. Local basis vectors |1>, |2>, ...
// map to indices 0, 1, ...

#include <cstddef>
#include <span>

#include "entmeter/tensor.hpp"

namespace entmeter {

enum class Statistics { Bose, Fermi };

const char* to_string(Statistics s) noexcept;

/// (|12> + sign |21>) / sqrt(2).
PureState epr(int sign);
/// (|11> + sign |22>) / sqrt(2).
PureState bell(int sign);
/// (|111> + sign |222>) / sqrt(2).
PureState ghz(int sign);

/// c1 |11...1> + c2 |22...2> on `parts` qubits.
PureState multicat(std::size_t parts, cplx c1, cplx c2);

/// sum_n c_n |n n ... n> on `parts` parts of local dimension c.size().
PureState multimode(std::size_t parts, std::span<const cplx> c);

/// (1/sqrt(N!)) sum over permutations of |1 2 ... N>, with the permutation
/// parity as sign for Fermi statistics. N parts, local dimension N.
PureState hartree_fock(std::size_t n, Statistics stat);

/// Trace-one reduction of |HF><HF| onto its first p parts.
Operator reduced_hartree_fock(std::size_t n, std::size_t p, Statistics stat);

/// exp(-beta H) / Z, via eigendecomposition with the ground energy shifted
/// to zero.
Operator gibbs(const Operator& h, double beta);

}  // namespace entmeter
