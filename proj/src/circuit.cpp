#include "qmeans/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace qmeans {

namespace {

struct QuadForm {
  std::vector<double> linear;             // coefficient of Z_i
  std::vector<std::vector<double>> quad;  // coefficient of Z_i Z_j, i < j
};

QuadForm flatten_quadratic(const IsingPolynomial& h) {
  int m = h.qubit_count();
  QuadForm f;
  f.linear.assign(m, 0.0);
  f.quad.assign(m, std::vector<double>(m, 0.0));
  for (const auto& [support, coeff] : h.term_map()) {
    if (support.size() == 1) {
      f.linear[support[0]] = coeff;
    } else if (support.size() == 2) {
      f.quad[support[0]][support[1]] = coeff;
    } else {
      throw std::invalid_argument(
          "compile_swap_network: polynomial has a term of degree > 2");
    }
  }
  return f;
}

}  // namespace

GateCircuit compile_swap_network(const IsingPolynomial& h,
                                 const QaoaParams& params) {
  params.validate();
  int m = h.qubit_count();
  if (m < 2) throw std::invalid_argument("compile_swap_network: need m >= 2");
  QuadForm f = flatten_quadratic(h);

  GateCircuit c;
  c.m = m;
  // pos[q] = logical qubit currently at physical position q.
  std::vector<int> pos(m);
  std::iota(pos.begin(), pos.end(), 0);

  for (int q = 0; q < m; ++q) c.gates.push_back({GateKind::H, q});

  for (int layer = 0; layer < params.depth(); ++layer) {
    double gamma = params.gammas[layer];
    double beta = params.betas[layer];

    // Linear terms first, wherever their logical qubit currently sits.
    for (int q = 0; q < m; ++q) {
      double coeff = f.linear[pos[q]];
      if (coeff != 0.0) c.gates.push_back({GateKind::RZ, q, -1, 2.0 * gamma * coeff});
    }

    // Swap network: m brick rounds. Starting with the odd bricks makes the
    // final round a full-width one (floor(m/2) pairs) for every m, and after
    // all m rounds the line order is exactly reversed.
    for (int round = 0; round < m; ++round) {
      int start = round % 2 == 0 ? 1 : 0;
      bool last = round == m - 1;
      for (int q = start; q + 1 < m; q += 2) {
        int a = pos[q], b = pos[q + 1];
        double coeff = f.quad[std::min(a, b)][std::max(a, b)];
        double theta = 2.0 * gamma * coeff;
        // exp(-i theta/2 ZZ) as CNOT / RZ / CNOT; the trailing CNOT pair
        // completes a SWAP when the qubits still have rounds ahead of them.
        c.gates.push_back({GateKind::CNOT, q, q + 1});
        c.gates.push_back({GateKind::RZ, q + 1, -1, theta});
        if (last) {
          c.gates.push_back({GateKind::CNOT, q, q + 1});
        } else {
          c.gates.push_back({GateKind::CNOT, q + 1, q});
          c.gates.push_back({GateKind::CNOT, q, q + 1});
          std::swap(pos[q], pos[q + 1]);
        }
      }
    }

    for (int q = 0; q < m; ++q)
      c.gates.push_back({GateKind::RX, q, -1, 2.0 * beta});
  }

  c.final_bit_permutation = pos;
  return c;
}

GateCounts count_gates(const GateCircuit& circuit) {
  GateCounts counts;
  std::vector<int> front(circuit.m, 0);  // per-qubit layer frontier
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::CNOT) {
      ++counts.cnot;
      int layer = std::max(front[g.q0], front[g.q1]) + 1;
      front[g.q0] = layer;
      front[g.q1] = layer;
    } else {
      ++counts.single_qubit;
      ++front[g.q0];
    }
  }
  counts.depth = *std::max_element(front.begin(), front.end());
  return counts;
}

namespace {

using Amps = std::vector<std::complex<double>>;

void apply_gate(Amps& amp, const Gate& g) {
  std::size_t dim = amp.size();
  switch (g.kind) {
    case GateKind::H: {
      double r = 1.0 / std::sqrt(2.0);
      std::size_t stride = std::size_t{1} << g.q0;
      for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t off = 0; off < stride; ++off) {
          std::size_t z0 = base + off, z1 = z0 + stride;
          std::complex<double> a = amp[z0], b = amp[z1];
          amp[z0] = r * (a + b);
          amp[z1] = r * (a - b);
        }
      break;
    }
    case GateKind::RZ: {
      std::complex<double> lo(std::cos(g.angle / 2.0), -std::sin(g.angle / 2.0));
      std::complex<double> hi = std::conj(lo);
      std::size_t mask = std::size_t{1} << g.q0;
      for (std::size_t z = 0; z < dim; ++z) amp[z] *= (z & mask) ? hi : lo;
      break;
    }
    case GateKind::RX: {
      double c = std::cos(g.angle / 2.0);
      std::complex<double> is(0.0, std::sin(g.angle / 2.0));
      std::size_t stride = std::size_t{1} << g.q0;
      for (std::size_t base = 0; base < dim; base += 2 * stride)
        for (std::size_t off = 0; off < stride; ++off) {
          std::size_t z0 = base + off, z1 = z0 + stride;
          std::complex<double> a = amp[z0], b = amp[z1];
          amp[z0] = c * a - is * b;
          amp[z1] = c * b - is * a;
        }
      break;
    }
    case GateKind::CNOT: {
      std::size_t cm = std::size_t{1} << g.q0;
      std::size_t tm = std::size_t{1} << g.q1;
      for (std::size_t z = 0; z < dim; ++z)
        if ((z & cm) && !(z & tm)) std::swap(amp[z], amp[z | tm]);
      break;
    }
  }
}

}  // namespace

double verify_equivalence(const GateCircuit& circuit, const IsingPolynomial& h,
                          const QaoaParams& params) {
  int m = circuit.m;
  if (m != h.qubit_count())
    throw std::invalid_argument("verify_equivalence: qubit count mismatch");
  if (m > 12)
    throw std::invalid_argument("verify_equivalence: m > 12 is too slow");

  std::size_t dim = std::size_t{1} << m;
  Amps amp(dim, 0.0);
  amp[0] = 1.0;
  for (const Gate& g : circuit.gates) apply_gate(amp, g);

  // Undo the swap-network permutation: physical index z maps to the logical
  // basis state that has bit perm[q] equal to bit q of z.
  Amps logical(dim, 0.0);
  const std::vector<int>& perm = circuit.final_bit_permutation;
  for (std::size_t z = 0; z < dim; ++z) {
    std::size_t zl = 0;
    for (int q = 0; q < m; ++q)
      if ((z >> q) & 1u) zl |= std::size_t{1} << perm[q];
    logical[zl] = amp[z];
  }

  StateVector ref = prepare(energy_table(h), params);

  // Align global phase at the reference's largest amplitude.
  std::size_t anchor = 0;
  for (std::size_t z = 1; z < dim; ++z)
    if (std::norm(ref.amp[z]) > std::norm(ref.amp[anchor])) anchor = z;
  std::complex<double> rot = ref.amp[anchor] * std::conj(logical[anchor]);
  double mag = std::abs(rot);
  rot = mag > 0.0 ? rot / mag : std::complex<double>(1.0, 0.0);

  double worst = 0.0;
  for (std::size_t z = 0; z < dim; ++z)
    worst = std::max(worst, std::abs(ref.amp[z] - rot * logical[z]));
  return worst;
}

std::string export_qasm(const GateCircuit& circuit) {
  std::string out;
  char buf[96];
  out += "OPENQASM 2.0;\n";
  out += "include \"qelib1.inc\";\n";
  std::snprintf(buf, sizeof(buf), "qreg q[%d];\ncreg c[%d];\n", circuit.m,
                circuit.m);
  out += buf;

  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::H:
        std::snprintf(buf, sizeof(buf), "h q[%d];\n", g.q0);
        break;
      case GateKind::RZ:
        std::snprintf(buf, sizeof(buf), "rz(%.17g) q[%d];\n", g.angle, g.q0);
        break;
      case GateKind::RX:
        std::snprintf(buf, sizeof(buf), "rx(%.17g) q[%d];\n", g.angle, g.q0);
        break;
      case GateKind::CNOT:
        std::snprintf(buf, sizeof(buf), "cx q[%d],q[%d];\n", g.q0, g.q1);
        break;
    }
    out += buf;
  }

  for (int q = 0; q < circuit.m; ++q) {
    std::snprintf(buf, sizeof(buf), "measure q[%d] -> c[%d];\n", q,
                  circuit.final_bit_permutation[q]);
    out += buf;
  }
  return out;
}

}  // namespace qmeans
