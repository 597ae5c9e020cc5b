#pragma once

#include <string>
#include <vector>

#include "qmeans/hamiltonian.hpp"
#include "qmeans/qaoa.hpp"

namespace qmeans {

enum class GateKind { H, RZ, RX, CNOT };

struct Gate {
  GateKind kind;
  int q0;            // target (single-qubit) or control (CNOT)
  int q1 = -1;       // CNOT target, -1 otherwise
  double angle = 0;  // RZ/RX rotation angle
};

// Gate-level circuit on a line of m qubits with nearest-neighbor CNOTs only.
// Because two-qubit interactions ride a swap network, logical qubits migrate
// across the line; final_bit_permutation[q] names the logical qubit sitting
// at physical position q when the circuit ends.
struct GateCircuit {
  int m = 0;
  std::vector<Gate> gates;
  std::vector<int> final_bit_permutation;
};

struct GateCounts {
  long cnot = 0;
  long single_qubit = 0;
  int depth = 0;  // layers when gates on disjoint qubits run together
};

// Compile the alternating-layer ansatz for a quadratic spin polynomial onto
// a line. Each phase layer runs a full swap network: m rounds of odd-even
// brick patterns in which every adjacent pair applies a ZZ rotation fused
// with the SWAP (3 CNOTs per pair). The network reverses the qubit order
// while meeting every pair exactly once, and the final round drops its SWAPs
// (2 CNOTs) in favor of classical index bookkeeping. Linear Z terms become
// RZ gates at the hosting physical qubit; each mixing layer is one RX per
// qubit. Offsets only shift the spectrum and are ignored.
GateCircuit compile_swap_network(const IsingPolynomial& h,
                                 const QaoaParams& params);

GateCounts count_gates(const GateCircuit& circuit);

// Max |amplitude| difference (after global-phase alignment) between the
// compiled circuit run on |0..0> and the reference statevector ansatz for
// the same polynomial and angles. Requires m <= 12.
double verify_equivalence(const GateCircuit& circuit, const IsingPolynomial& h,
                          const QaoaParams& params);

// OpenQASM 2.0 text. Measurements store logical bit b of the partition in
// classical register slot b, undoing the swap-network permutation.
std::string export_qasm(const GateCircuit& circuit);

}  // namespace qmeans
