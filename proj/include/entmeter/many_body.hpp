#pragma once

// Field-operator reduced density matrices and spin density matrices for
// small exactly represented systems.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "entmeter/measure.hpp"
#include "entmeter/norms.hpp"
#include "entmeter/states.hpp"
#include "entmeter/tensor.hpp"

namespace entmeter {

using Occupation = std::vector<unsigned>;

/// Fixed-particle-number sector of the Fock space over `modes` modes.
/// Basis states are listed in descending lexicographic order of their
/// occupation vectors, so |N, 0, ..., 0> (or |1..1, 0..0>) comes first.
class FockSpace {
 public:
  FockSpace(std::size_t modes, std::size_t particles, Statistics stat);

  std::size_t modes() const noexcept { return modes_; }
  std::size_t particles() const noexcept { return particles_; }
  Statistics statistics() const noexcept { return stat_; }
  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<Occupation>& basis() const noexcept { return basis_; }

  /// Index of an occupation vector; throws InvalidArgument if absent.
  std::size_t index_of(const Occupation& occ) const;

 private:
  std::size_t modes_;
  std::size_t particles_;
  Statistics stat_;
  std::vector<Occupation> basis_;
  std::map<Occupation, std::size_t> index_;
};

/// rho_p(x, xbar) = Tr psi(x_1)...psi(x_p) rho psi^dag(xbar_p)...psi^dag(xbar_1)
/// over ordered p-tuples of mode indices. `matrix` has p parts of dimension
/// `modes`, tuples in row-major order.
struct ReducedDensityMatrix {
  std::size_t order;
  std::size_t modes;
  std::size_t particles;
  Statistics statistics;
  Operator matrix;
};

/// R_p over p-tuples of (site, axis) pairs; single index 3 * site + axis with
/// axis 0, 1, 2 = x, y, z.
struct SpinDensityMatrix {
  std::size_t order;
  std::size_t sites;
  Operator matrix;
};

struct ManyBodyState {
  FockSpace space;
  Operator rho;
};

enum class CouplingRange { Nearest, AllToAll };

const char* to_string(CouplingRange r) noexcept;

ManyBodyState fock_pure_state(const FockSpace& space, const Occupation& occ);

/// All N bosons in mode 0.
ManyBodyState condensate(std::size_t modes, std::size_t particles);

/// N fermions filling modes 0..N-1.
ManyBodyState fermi_sea(std::size_t modes, std::size_t particles);

/// Canonical thermal state of non-interacting particles with single-mode
/// energies `energies`: weights exp(-beta sum_k e_k n_k).
ManyBodyState ideal_gas_thermal(std::size_t particles, Statistics stat,
                                std::span<const double> energies, double beta);

ReducedDensityMatrix reduced_dm(const FockSpace& space, const Operator& rho, std::size_t p);

/// Eigenvectors of a hermitian single-partite matrix, by descending
/// eigenvalue. Returns the identity when the input is already diagonal.
Matrix natural_orbitals(const Operator& one_body);

/// eps(rho_p) with the nonentangling counterpart
/// N! / ((N-p)! N^p) rho_1^{(x)p}. Basis mode evaluates both norms in the
/// natural-orbital basis.
MeasureResult measure_reduced(const FockSpace& space, const Operator& rho, std::size_t p,
                              NormMode mode = NormMode::Variational,
                              double base = kDefaultLogBase, const NormOptions& opts = {});

/// Spin-1/2 operators S = sigma / 2 on N qubits, local basis (up, down).
/// Supports p = 1 and p = 2.
SpinDensityMatrix spin_density_matrix(const Operator& rho, std::size_t p);

/// eps(R_p) against the literal p-fold product R_1 (x) ... (x) R_1.
MeasureResult measure_spin(const Operator& rho, std::size_t p,
                           NormMode mode = NormMode::Variational,
                           double base = kDefaultLogBase, const NormOptions& opts = {});

/// Nearest: H = -J sum_i S_i . S_{i+1} on an open chain.
/// AllToAll: H = -(J/N) sum_{i<j} S_i . S_j.
/// J > 0 is ferromagnetic.
Operator heisenberg_hamiltonian(std::size_t sites, double coupling, CouplingRange range);

/// Sum_i S^z_i on N qubits.
Operator total_spin_z(std::size_t sites);

/// |up up ... up><up up ... up|.
Operator polarized_state(std::size_t sites);

}  // namespace entmeter
