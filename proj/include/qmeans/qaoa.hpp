#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace qmeans {

// Angle schedule for a depth-p ansatz: gamma_j on the phase layer, beta_j on
// the mixing layer, j = 0..p-1.
struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  int depth() const;
  void validate() const;  // equal lengths, at least one layer, finite angles
};

// Dense statevector over m qubits, amplitude index bit i = qubit i.
struct StateVector {
  int m = 0;
  std::vector<std::complex<double>> amp;
};

// Run the alternating-layer ansatz from the uniform superposition. The phase
// layer applies exp(-i gamma E(z)) per basis state using the supplied energy
// table; the mixing layer applies exp(-i beta X) on every qubit. The norm is
// checked after every layer (1e-10 tolerance). Requires table size 2^m with
// m <= 24.
StateVector prepare(std::span<const double> energy_table,
                    const QaoaParams& params);

// <E> = sum_z |amp_z|^2 E(z).
double expectation(const StateVector& state,
                   std::span<const double> energy_table);

struct OptimizeResult {
  QaoaParams params;
  double value = 0.0;  // expectation at `params`
  bool converged = false;
  long evaluations = 0;  // total expectation evaluations across restarts
};

// Maximize the expectation over the 2p angles with restarted Nelder-Mead.
// Half the starts (rounded up) come from a deterministic low-discrepancy
// sequence over gamma in [0, pi), beta in [0, pi/2); the rest are seeded
// random. Each restart runs until its simplex diameter drops below 1e-6 or
// the shared budget of 10^4 evaluations runs out. Betas are reduced mod pi
// (the mixing layer's exact period, up to global phase); gammas are reported
// unreduced since the phase layer has no input-independent period.
OptimizeResult optimize(std::span<const double> energy_table, int p,
                        int restarts, std::uint64_t seed);

// Multinomial measurement sample in the computational basis:
// basis index -> count, indices with zero count omitted.
std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state,
                                              std::uint64_t shots,
                                              std::uint64_t seed);

// Most frequent outcome; ties resolve to the smallest basis index.
std::uint64_t modal_bitstring(
    const std::map<std::uint64_t, std::uint64_t>& histogram);

}  // namespace qmeans
