#include "qmeans/qaoa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "qmeans/rng.hpp"

namespace qmeans {

namespace {

constexpr double kPi = 3.14159265358979323846;

int table_qubits(std::size_t table_size) {
  if (table_size < 2 || !std::has_single_bit(table_size))
    throw std::invalid_argument("energy table size must be a power of two >= 2");
  int m = std::countr_zero(table_size);
  if (m > 24) throw std::invalid_argument("energy table implies m > 24");
  return m;
}

void check_norm(const std::vector<std::complex<double>>& amp) {
  double n = 0.0;
  for (const auto& a : amp) n += std::norm(a);
  if (std::abs(n - 1.0) > 1e-10)
    throw std::logic_error("statevector norm drifted beyond 1e-10");
}

}  // namespace

int QaoaParams::depth() const { return static_cast<int>(gammas.size()); }

void QaoaParams::validate() const {
  if (gammas.empty() || gammas.size() != betas.size())
    throw std::invalid_argument("QaoaParams: need equal, nonzero gamma/beta counts");
  for (double g : gammas)
    if (!std::isfinite(g)) throw std::invalid_argument("QaoaParams: non-finite gamma");
  for (double b : betas)
    if (!std::isfinite(b)) throw std::invalid_argument("QaoaParams: non-finite beta");
}

StateVector prepare(std::span<const double> energy_table,
                    const QaoaParams& params) {
  params.validate();
  int m = table_qubits(energy_table.size());
  std::size_t dim = energy_table.size();

  StateVector state;
  state.m = m;
  state.amp.assign(dim, std::complex<double>(1.0 / std::sqrt(double(dim)), 0.0));

  for (int layer = 0; layer < params.depth(); ++layer) {
    double gamma = params.gammas[layer];
    double beta = params.betas[layer];

    // Phase layer: diagonal in the computational basis.
    for (std::size_t z = 0; z < dim; ++z) {
      double angle = -gamma * energy_table[z];
      state.amp[z] *= std::complex<double>(std::cos(angle), std::sin(angle));
    }
    check_norm(state.amp);

    // Mixing layer: exp(-i beta X) on each qubit, i.e. the 2x2 rotation
    // [[cos b, -i sin b], [-i sin b, cos b]] on every amplitude pair that
    // differs in that qubit.
    double c = std::cos(beta);
    std::complex<double> is(0.0, std::sin(beta));
    for (int q = 0; q < m; ++q) {
      std::size_t stride = std::size_t{1} << q;
      for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
          std::size_t z0 = base + off;
          std::size_t z1 = z0 + stride;
          std::complex<double> a = state.amp[z0];
          std::complex<double> b = state.amp[z1];
          state.amp[z0] = c * a - is * b;
          state.amp[z1] = c * b - is * a;
        }
      }
    }
    check_norm(state.amp);
  }
  return state;
}

double expectation(const StateVector& state,
                   std::span<const double> energy_table) {
  if (energy_table.size() != state.amp.size())
    throw std::invalid_argument("expectation: table/state size mismatch");
  double e = 0.0;
  for (std::size_t z = 0; z < state.amp.size(); ++z)
    e += std::norm(state.amp[z]) * energy_table[z];
  return e;
}

namespace {

// Nelder-Mead with the standard coefficients (reflect 1, expand 2, contract
// 1/2, shrink 1/2), minimizing `f`. Runs until the simplex diameter falls
// below `tol` or the eval budget is exhausted; `evals` accumulates across
// calls so a shared budget can span restarts.
struct NelderMead {
  double tol = 1e-6;
  long max_evals = 10000;
  long evals = 0;
  bool converged = false;

  template <typename F>
  std::pair<std::vector<double>, double> minimize(F&& f,
                                                  std::vector<double> x0,
                                                  double step) {
    std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> val(n + 1);
    for (std::size_t i = 1; i <= n; ++i) pts[i][i - 1] += step;
    for (std::size_t i = 0; i <= n; ++i) {
      val[i] = f(pts[i]);
      ++evals;
    }

    auto centroid_except = [&](std::size_t skip) {
      std::vector<double> c(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == skip) continue;
        for (std::size_t k = 0; k < n; ++k) c[k] += pts[i][k];
      }
      for (double& v : c) v /= double(n);
      return c;
    };
    auto blend = [&](const std::vector<double>& a, const std::vector<double>& b,
                     double t) {
      // a + t (a - b)
      std::vector<double> r(n);
      for (std::size_t k = 0; k < n; ++k) r[k] = a[k] + t * (a[k] - b[k]);
      return r;
    };
    auto diameter = [&]() {
      double dmax = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          double d = pts[i][k] - pts[0][k];
          d2 += d * d;
        }
        dmax = std::max(dmax, std::sqrt(d2));
      }
      return dmax;
    };

    while (evals < max_evals) {
      // Order: pts[order[0]] best.
      std::vector<std::size_t> order(n + 1);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
      {
        std::vector<std::vector<double>> p2(n + 1);
        std::vector<double> v2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
          p2[i] = std::move(pts[order[i]]);
          v2[i] = val[order[i]];
        }
        pts = std::move(p2);
        val = std::move(v2);
      }
      if (diameter() < tol) {
        converged = true;
        break;
      }

      std::vector<double> cen = centroid_except(n);
      std::vector<double> xr = blend(cen, pts[n], 1.0);
      double fr = f(xr);
      ++evals;

      if (fr < val[0]) {
        std::vector<double> xe = blend(cen, pts[n], 2.0);
        double fe = f(xe);
        ++evals;
        if (fe < fr) {
          pts[n] = std::move(xe);
          val[n] = fe;
        } else {
          pts[n] = std::move(xr);
          val[n] = fr;
        }
      } else if (fr < val[n - 1]) {
        pts[n] = std::move(xr);
        val[n] = fr;
      } else {
        bool outside = fr < val[n];
        std::vector<double> xc = blend(cen, pts[n], outside ? 0.5 : -0.5);
        double fc = f(xc);
        ++evals;
        if (fc < (outside ? fr : val[n])) {
          pts[n] = std::move(xc);
          val[n] = fc;
        } else {
          // Shrink toward the best vertex.
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k)
              pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
            val[i] = f(pts[i]);
            ++evals;
            if (evals >= max_evals) break;
          }
        }
      }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
      if (val[i] < val[best]) best = i;
    return {pts[best], val[best]};
  }
};

// Low-discrepancy start k (additive Kronecker sequence): coordinate t steps
// by the fractional part of sqrt(prime_t).
std::vector<double> lds_point(std::size_t k, int p) {
  static const double primes[] = {2.0,  3.0,  5.0,  7.0,  11.0, 13.0,
                                  17.0, 19.0, 23.0, 29.0, 31.0, 37.0};
  std::size_t dims = 2 * static_cast<std::size_t>(p);
  std::vector<double> x(dims);
  for (std::size_t t = 0; t < dims; ++t) {
    double root = std::sqrt(primes[t % std::size(primes)] + std::floor(double(t / std::size(primes))));
    double alpha = root - std::floor(root);
    double v = (double(k + 1)) * alpha;
    x[t] = v - std::floor(v);
  }
  return x;
}

}  // namespace

OptimizeResult optimize(std::span<const double> energy_table, int p,
                        int restarts, std::uint64_t seed) {
  table_qubits(energy_table.size());
  if (p < 1) throw std::invalid_argument("optimize: p < 1");
  if (restarts < 1) throw std::invalid_argument("optimize: restarts < 1");

  std::size_t dims = 2 * static_cast<std::size_t>(p);
  auto unpack = [&](const std::vector<double>& x) {
    QaoaParams params;
    params.gammas.assign(x.begin(), x.begin() + p);
    params.betas.assign(x.begin() + p, x.end());
    return params;
  };
  auto objective = [&](const std::vector<double>& x) {
    return -expectation(prepare(energy_table, unpack(x)), energy_table);
  };

  int n_lds = (restarts + 1) / 2;
  Rng rng(derive_seed(seed, 0x9a0a));

  OptimizeResult out;
  double best = std::numeric_limits<double>::infinity();
  NelderMead nm;
  for (int r = 0; r < restarts && nm.evals < nm.max_evals; ++r) {
    std::vector<double> x0(dims);
    if (r < n_lds) {
      std::vector<double> u = lds_point(static_cast<std::size_t>(r), p);
      for (int t = 0; t < p; ++t) {
        x0[t] = u[t] * kPi;
        x0[p + t] = u[p + t] * (kPi / 2.0);
      }
    } else {
      for (int t = 0; t < p; ++t) {
        x0[t] = rng.uniform(0.0, kPi);
        x0[p + t] = rng.uniform(0.0, kPi / 2.0);
      }
    }
    auto [x, v] = nm.minimize(objective, std::move(x0), 0.1);
    if (v < best) {
      best = v;
      out.params = unpack(x);
    }
  }

  // The mixing layer repeats with period pi up to a global phase, so betas
  // have a canonical representative in [0, pi).
  for (double& b : out.params.betas) {
    b = std::fmod(b, kPi);
    if (b < 0.0) b += kPi;
  }

  out.value = expectation(prepare(energy_table, out.params), energy_table);
  out.converged = nm.converged;
  out.evaluations = nm.evals + 1;
  return out;
}

std::map<std::uint64_t, std::uint64_t> sample(const StateVector& state,
                                              std::uint64_t shots,
                                              std::uint64_t seed) {
  std::vector<double> probs(state.amp.size());
  for (std::size_t z = 0; z < state.amp.size(); ++z)
    probs[z] = std::norm(state.amp[z]);
  std::vector<double> cum = build_cumulative(probs);

  Rng rng(seed);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t s = 0; s < shots; ++s)
    ++hist[sample_from_cumulative(cum, rng)];
  return hist;
}

std::uint64_t modal_bitstring(
    const std::map<std::uint64_t, std::uint64_t>& histogram) {
  if (histogram.empty())
    throw std::invalid_argument("modal_bitstring: empty histogram");
  std::uint64_t best_z = 0, best_count = 0;
  for (const auto& [z, count] : histogram) {
    if (count > best_count) {  // map iterates in key order: ties keep smallest
      best_count = count;
      best_z = z;
    }
  }
  return best_z;
}

}  // namespace qmeans
