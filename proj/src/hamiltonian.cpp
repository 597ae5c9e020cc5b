#include "qmeans/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qmeans/vecmath.hpp"

namespace qmeans {

TaylorOrder TaylorOrder::finite(int j) {
  if (j < 0) throw std::invalid_argument("TaylorOrder: negative order");
  return TaylorOrder(j);
}

int TaylorOrder::value() const {
  if (is_infinite())
    throw std::logic_error("TaylorOrder::value: order is infinite");
  return value_;
}

std::string TaylorOrder::to_string() const {
  return is_infinite() ? "inf" : std::to_string(value_);
}

TaylorOrder TaylorOrder::from_string(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "exact")
    return infinite();
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("TaylorOrder: cannot parse '" + text + "'");
  }
  if (pos != text.size() || v < 0)
    throw std::invalid_argument("TaylorOrder: cannot parse '" + text + "'");
  return finite(v);
}

IsingPolynomial::IsingPolynomial(int m, double offset)
    : m_(m), offset_(offset) {
  if (m < 1) throw std::invalid_argument("IsingPolynomial: need m >= 1");
  if (m > 64) throw std::invalid_argument("IsingPolynomial: m > 64");
}

void IsingPolynomial::add_term(double coeff, std::vector<int> support) {
  for (int q : support) {
    if (q < 0 || q >= m_)
      throw std::out_of_range("IsingPolynomial::add_term: qubit index");
  }
  // Z_i^2 = 1: keep each index iff it appears an odd number of times.
  std::sort(support.begin(), support.end());
  std::vector<int> folded;
  for (std::size_t i = 0; i < support.size();) {
    std::size_t j = i;
    while (j < support.size() && support[j] == support[i]) ++j;
    if ((j - i) % 2 == 1) folded.push_back(support[i]);
    i = j;
  }
  if (folded.empty()) {
    offset_ += coeff;
    return;
  }
  auto it = terms_.find(folded);
  if (it == terms_.end()) {
    if (coeff != 0.0) terms_.emplace(std::move(folded), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int IsingPolynomial::max_support() const {
  std::size_t widest = 0;
  for (const auto& [support, coeff] : terms_)
    widest = std::max(widest, support.size());
  return static_cast<int>(widest);
}

std::vector<IsingTerm> IsingPolynomial::terms() const {
  std::vector<IsingTerm> out;
  out.reserve(terms_.size());
  for (const auto& [support, coeff] : terms_)
    out.push_back({coeff, support});
  return out;
}

ClusterWeights cluster_weights(const PointsView& pts, const Partition& part) {
  if (static_cast<std::size_t>(part.size()) != pts.size())
    throw std::invalid_argument("cluster_weights: partition size mismatch");
  ClusterWeights cw;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (part.test(static_cast<int>(i)))
      cw.w_plus += pts.weight(i);
    else
      cw.w_minus += pts.weight(i);
  }
  return cw;
}

double taylor_ratio_series(int order, double x) {
  if (order < 0) throw std::invalid_argument("taylor_ratio_series: order < 0");
  double u = x - 0.5;
  // Horner over T_j(u) = sum_t (-1)^t 2^{t+1} u^t: coefficient of u^t is
  // (-1)^t 2^{t+1}.
  double acc = (order % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, order + 1);
  for (int t = order - 1; t >= 0; --t) {
    double c = (t % 2 == 0 ? 1.0 : -1.0) * std::ldexp(1.0, t + 1);
    acc = c + u * acc;
  }
  return acc;
}

namespace {

struct SideSums {
  std::vector<double> s_minus;
  std::vector<double> s_plus;
  double w_minus = 0.0;
  double w_plus = 0.0;
  int n_plus = 0;
};

SideSums side_sums(const WeightedPointSet& pts, const Partition& part) {
  SideSums s;
  std::size_t d = pts.dim();
  s.s_minus.assign(d, 0.0);
  s.s_plus.assign(d, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double w = pts.weight(i);
    auto x = pts.point(i);
    if (part.test(static_cast<int>(i))) {
      s.w_plus += w;
      ++s.n_plus;
      for (std::size_t k = 0; k < d; ++k) s.s_plus[k] += w * x[k];
    } else {
      s.w_minus += w;
      for (std::size_t k = 0; k < d; ++k) s.s_minus[k] += w * x[k];
    }
  }
  return s;
}

// Separation energy from per-side weighted sums. Written so that swapping
// the minus/plus roles produces the bit-identical double: complementary
// partitions then agree exactly, which downstream argmax-set comparisons
// rely on.
double energy_from_sums(const SideSums& s, TaylorOrder order, int m) {
  bool minus_empty = s.n_plus == m;
  bool plus_empty = s.n_plus == 0;
  if (order.is_infinite()) {
    if (minus_empty || plus_empty) return 0.0;
    std::vector<double> mu_minus(s.s_minus), mu_plus(s.s_plus);
    for (double& v : mu_minus) v /= s.w_minus;
    for (double& v : mu_plus) v /= s.w_plus;
    return s.w_minus * s.w_plus * sqdist(mu_minus, mu_plus);
  }
  int j = order.value();
  double w = s.w_minus + s.w_plus;
  double r_minus = taylor_ratio_series(j, s.w_minus / w) - 1.0;
  double r_plus = taylor_ratio_series(j, s.w_plus / w) - 1.0;
  return r_minus * norm2(s.s_minus) + r_plus * norm2(s.s_plus) -
         2.0 * dot(s.s_minus, s.s_plus);
}

}  // namespace

double taylor_energy(const WeightedPointSet& pts, TaylorOrder order,
                     const Partition& part) {
  if (static_cast<std::size_t>(part.size()) != pts.size())
    throw std::invalid_argument("taylor_energy: partition size mismatch");
  SideSums s = side_sums(pts, part);
  return energy_from_sums(s, order, part.size());
}

double eval_polynomial(const IsingPolynomial& h, const Partition& part) {
  if (part.size() != h.qubit_count())
    throw std::invalid_argument("eval_polynomial: qubit count mismatch");
  double value = h.offset();
  for (const auto& [support, coeff] : h.term_map()) {
    int sign = 1;
    for (int q : support) sign *= part.spin(q);
    value += sign * coeff;
  }
  return value;
}

IsingPolynomial build_order0(const WeightedPointSet& pts) {
  std::size_t m = pts.size();
  if (m < 2) throw std::invalid_argument("build_order0: need m >= 2");
  if (m > 64) throw std::invalid_argument("build_order0: m > 64");
  IsingPolynomial h(static_cast<int>(m));
  for (std::size_t i = 0; i < m; ++i) {
    double wi = pts.weight(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      double c = wi * pts.weight(j) * dot(pts.point(i), pts.point(j));
      if (c != 0.0)
        h.add_term(c, {static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return h;
}

IsingPolynomial build_order1(const WeightedPointSet& pts) {
  std::size_t m = pts.size();
  if (m < 2) throw std::invalid_argument("build_order1: need m >= 2");
  if (m > 64) throw std::invalid_argument("build_order1: m > 64");

  // In spin variables the order-1 objective collapses to
  //   |D|^2 - (2/W) L (V . D)
  // with D = sum_i w_i x_i z_i, L = sum_i w_i z_i and V = sum_i w_i x_i.
  // Expanding with z_i^2 = 1 leaves an offset plus pure two-spin couplings;
  // every linear term cancels, so the polynomial stays quadratic.
  double inv = 2.0 / pts.total_weight();

  // Weighted Gram matrix g[i][j] = w_i w_j <x_i, x_j> and its row sums.
  std::vector<std::vector<double>> g(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    double wi = pts.weight(i);
    for (std::size_t j = i; j < m; ++j) {
      double v = wi * pts.weight(j) * dot(pts.point(i), pts.point(j));
      g[i][j] = v;
      g[j][i] = v;
    }
  }
  std::vector<double> row(m, 0.0);  // row[j] = V . (w_j x_j)
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) row[j] += g[i][j];

  double offset = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    offset += g[i][i] - inv * pts.weight(i) * row[i];

  IsingPolynomial h(static_cast<int>(m), offset);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double c =
          2.0 * g[i][j] - inv * (pts.weight(i) * row[j] + pts.weight(j) * row[i]);
      if (c != 0.0)
        h.add_term(c, {static_cast<int>(i), static_cast<int>(j)});
    }
  }
  return h;
}

ScatterDecomposition scatter_decomposition(const WeightedPointSet& pts,
                                           const Partition& part) {
  if (static_cast<std::size_t>(part.size()) != pts.size())
    throw std::invalid_argument("scatter_decomposition: size mismatch");
  std::size_t d = pts.dim();

  std::vector<double> mean(d, 0.0);
  double w_total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double w = pts.weight(i);
    auto x = pts.point(i);
    for (std::size_t k = 0; k < d; ++k) mean[k] += w * x[k];
    w_total += w;
  }
  for (double& v : mean) v /= w_total;

  ScatterDecomposition out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    out.scatter += pts.weight(i) * sqdist(pts.point(i), mean);

  // The within term charges each point to its own side's centroid (not the
  // nearest one), otherwise the decomposition only holds at local optima.
  ClusterModel model = centroids_of(pts, part);
  ClusterWeights cw = cluster_weights(pts, part);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& mu =
        part.test(static_cast<int>(i)) ? model.mu_plus : model.mu_minus;
    out.t1 += pts.weight(i) * sqdist(pts.point(i), mu);
  }
  out.t3 = cw.w_minus * cw.w_plus / cw.total() *
           sqdist(model.mu_minus, model.mu_plus);
  return out;
}

namespace {

void check_table_size(int m) {
  if (m < 1) throw std::invalid_argument("energy table: need m >= 1");
  if (m > 24)
    throw std::invalid_argument("energy table: m > 24 would need > 128 MiB");
}

}  // namespace

std::vector<double> energy_table(const IsingPolynomial& h) {
  int m = h.qubit_count();
  check_table_size(m);
  std::size_t size = std::size_t{1} << m;

  // Flatten terms to bitmask form.
  std::vector<double> coeffs;
  std::vector<std::uint32_t> masks;
  bool symmetric = true;
  for (const auto& [support, coeff] : h.term_map()) {
    std::uint32_t mask = 0;
    for (int q : support) mask |= std::uint32_t{1} << q;
    coeffs.push_back(coeff);
    masks.push_back(mask);
    if (support.size() % 2 != 0) symmetric = false;
  }
  std::size_t n_terms = coeffs.size();

  // Per-bit lists of terms whose support contains that bit.
  std::vector<std::vector<std::uint32_t>> bit_terms(m);
  for (std::size_t t = 0; t < n_terms; ++t)
    for (int b = 0; b < m; ++b)
      if ((masks[t] >> b) & 1u)
        bit_terms[b].push_back(static_cast<std::uint32_t>(t));

  std::vector<double> table(size);
  std::vector<int> sign(n_terms, +1);  // parity of |support & z| at current z

  auto full_value = [&]() {
    double e = h.offset();
    for (std::size_t t = 0; t < n_terms; ++t) e += sign[t] * coeffs[t];
    return e;
  };

  // Walk partitions in Gray-code order so each step flips one bit and only
  // touches the terms containing it. Every 4096 steps the energy is
  // recomputed from the signs to stop incremental rounding from drifting.
  int walk_bits = symmetric ? m - 1 : m;
  std::size_t walk_size = std::size_t{1} << walk_bits;
  std::uint64_t full_mask = size - 1;

  std::uint64_t z = 0;
  double energy = full_value();
  for (std::size_t k = 0;; ++k) {
    table[z] = energy;
    if (symmetric) table[z ^ full_mask] = energy;
    if (k + 1 == walk_size) break;
    int flip = std::countr_zero(k + 1);
    for (std::uint32_t t : bit_terms[flip]) {
      sign[t] = -sign[t];
      energy += 2.0 * sign[t] * coeffs[t];
    }
    z ^= std::uint64_t{1} << flip;
    if ((k & 0xfffu) == 0xfffu) energy = full_value();
  }
  return table;
}

std::vector<double> taylor_energy_table(const WeightedPointSet& pts,
                                        TaylorOrder order) {
  int m = static_cast<int>(pts.size());
  check_table_size(m);
  std::size_t d = pts.dim();
  std::size_t size = std::size_t{1} << m;
  std::uint64_t full_mask = size - 1;

  // Weighted coordinates, so a bit flip is a vector add/subtract.
  std::vector<double> wx(pts.size() * d);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double w = pts.weight(i);
    auto x = pts.point(i);
    for (std::size_t k = 0; k < d; ++k) wx[i * d + k] = w * x[k];
  }

  SideSums s;
  s.s_minus.assign(d, 0.0);
  s.s_plus.assign(d, 0.0);
  auto refresh = [&](std::uint64_t z) {
    std::fill(s.s_minus.begin(), s.s_minus.end(), 0.0);
    std::fill(s.s_plus.begin(), s.s_plus.end(), 0.0);
    s.w_minus = s.w_plus = 0.0;
    s.n_plus = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double* v = wx.data() + i * d;
      if ((z >> i) & 1u) {
        s.w_plus += pts.weight(i);
        ++s.n_plus;
        for (std::size_t k = 0; k < d; ++k) s.s_plus[k] += v[k];
      } else {
        s.w_minus += pts.weight(i);
        for (std::size_t k = 0; k < d; ++k) s.s_minus[k] += v[k];
      }
    }
  };

  // All orders are complement-symmetric, so only the z with point m-1 in
  // S_minus are walked; the mirror entry is copied. Gray-code over the low
  // m-1 bits with periodic refreshes to cap incremental rounding drift.
  std::vector<double> table(size);
  std::size_t walk_size = std::size_t{1} << (m - 1);
  std::uint64_t z = 0;
  refresh(z);
  for (std::size_t k = 0;; ++k) {
    double e = energy_from_sums(s, order, m);
    table[z] = e;
    table[z ^ full_mask] = e;
    if (k + 1 == walk_size) break;
    int flip = std::countr_zero(k + 1);
    z ^= std::uint64_t{1} << flip;
    if ((k & 0x3ffu) == 0x3ffu) {
      refresh(z);
    } else {
      const double* v = wx.data() + static_cast<std::size_t>(flip) * d;
      double w = pts.weight(static_cast<std::size_t>(flip));
      if ((z >> flip) & 1u) {
        // Point moved S_minus -> S_plus.
        s.w_minus -= w;
        s.w_plus += w;
        ++s.n_plus;
        for (std::size_t k2 = 0; k2 < d; ++k2) {
          s.s_minus[k2] -= v[k2];
          s.s_plus[k2] += v[k2];
        }
      } else {
        s.w_minus += w;
        s.w_plus -= w;
        --s.n_plus;
        for (std::size_t k2 = 0; k2 < d; ++k2) {
          s.s_minus[k2] += v[k2];
          s.s_plus[k2] -= v[k2];
        }
      }
    }
  }
  return table;
}

}  // namespace qmeans
