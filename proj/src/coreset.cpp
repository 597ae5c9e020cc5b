#include "qmeans/coreset.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qmeans/rng.hpp"
#include "qmeans/vecmath.hpp"

namespace qmeans {

std::string to_string(SummaryMethod method) {
  switch (method) {
    case SummaryMethod::Uniform: return "uniform";
    case SummaryMethod::CoresetBlk17: return "coreset_blk17";
    case SummaryMethod::CoresetBfl16: return "coreset_bfl16";
  }
  throw std::logic_error("unknown SummaryMethod");
}

SummaryMethod summary_method_from_string(const std::string& text) {
  if (text == "uniform") return SummaryMethod::Uniform;
  if (text == "coreset_blk17") return SummaryMethod::CoresetBlk17;
  if (text == "coreset_bfl16") return SummaryMethod::CoresetBfl16;
  throw std::invalid_argument("unknown summary method '" + text + "'");
}

std::string to_string(CoresetVariant variant) {
  return variant == CoresetVariant::Blk17 ? "blk17" : "bfl16";
}

CoresetVariant coreset_variant_from_string(const std::string& text) {
  if (text == "blk17") return CoresetVariant::Blk17;
  if (text == "bfl16") return CoresetVariant::Bfl16;
  throw std::invalid_argument("unknown coreset variant '" + text + "'");
}

WeightedPointSet::WeightedPointSet(std::size_t dim, SummaryMethod method,
                                   std::uint64_t seed, std::size_t source_n)
    : dim_(dim), method_(method), seed_(seed), source_n_(source_n) {
  if (dim == 0)
    throw std::invalid_argument("WeightedPointSet: dim must be positive");
}

void WeightedPointSet::append(std::span<const double> point, double weight) {
  if (dim_ == 0) dim_ = point.size();
  if (point.size() != dim_)
    throw std::invalid_argument("WeightedPointSet::append: dimension mismatch");
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw std::invalid_argument(
        "WeightedPointSet::append: weight must be positive and finite");
  for (double v : point) {
    if (!std::isfinite(v))
      throw std::invalid_argument(
          "WeightedPointSet::append: non-finite coordinate");
  }
  data_.insert(data_.end(), point.begin(), point.end());
  weights_.push_back(weight);
  ++count_;
}

std::span<const double> WeightedPointSet::point(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("WeightedPointSet::point: index");
  return {data_.data() + i * dim_, dim_};
}

double WeightedPointSet::weight(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("WeightedPointSet::weight: index");
  return weights_[i];
}

double WeightedPointSet::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

std::span<const double> Bicriterion::center(std::size_t c) const {
  if (c >= count()) throw std::out_of_range("Bicriterion::center: index");
  return {centers.data() + c * dim, dim};
}

Bicriterion d2_sample(const DataSet& data, std::size_t n_centers,
                      std::uint64_t seed) {
  std::size_t n = data.size();
  if (n_centers == 0 || n_centers > n)
    throw std::invalid_argument("d2_sample: need 1 <= n_centers <= n");

  Rng rng(seed);
  Bicriterion out;
  out.dim = data.dim();
  out.centers.reserve(n_centers * data.dim());

  std::vector<double> mindist(n, std::numeric_limits<double>::infinity());
  auto add_center = [&](std::size_t idx) {
    auto c = data.point(idx);
    out.centers.insert(out.centers.end(), c.begin(), c.end());
    for (std::size_t i = 0; i < n; ++i) {
      double d = sqdist(data.point(i), c);
      if (d < mindist[i]) mindist[i] = d;
    }
  };

  add_center(rng.index(n));
  for (std::size_t c = 1; c < n_centers; ++c) {
    double total = std::accumulate(mindist.begin(), mindist.end(), 0.0);
    std::size_t pick;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      double run = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        run += mindist[i];
        if (run > u) {
          pick = i;
          break;
        }
      }
    } else {
      // Every point already coincides with a chosen center.
      pick = rng.index(n);
    }
    add_center(pick);
  }

  out.cost = std::accumulate(mindist.begin(), mindist.end(), 0.0);
  return out;
}

Bicriterion best_bicriterion(const DataSet& data, int trials,
                             std::uint64_t seed, std::size_t n_centers) {
  if (trials < 1) throw std::invalid_argument("best_bicriterion: trials < 1");
  Bicriterion best;
  for (int t = 0; t < trials; ++t) {
    Bicriterion cand = d2_sample(data, n_centers, derive_seed(seed, t));
    if (t == 0 || cand.cost < best.cost) best = std::move(cand);
  }
  return best;
}

std::vector<double> sensitivity_probabilities(const DataSet& data,
                                              const Bicriterion& bicriterion,
                                              CoresetVariant variant) {
  std::size_t n = data.size();
  std::size_t b = bicriterion.count();
  if (n == 0) throw std::invalid_argument("sensitivity_probabilities: empty data");
  if (b == 0 || bicriterion.dim != data.dim())
    throw std::invalid_argument("sensitivity_probabilities: bad bicriterion");

  // Assign each point to its nearest bicriterion center.
  std::vector<double> d2(n);
  std::vector<std::size_t> cell(n);
  std::vector<double> cell_cost(b, 0.0);
  std::vector<std::size_t> cell_size(b, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t c = 0; c < b; ++c) {
      double d = sqdist(data.point(i), bicriterion.center(c));
      if (d < best) {
        best = d;
        arg = c;
      }
    }
    d2[i] = best;
    cell[i] = arg;
    cell_cost[arg] += best;
    ++cell_size[arg];
  }

  double total = std::accumulate(d2.begin(), d2.end(), 0.0);
  std::vector<double> p(n);
  if (!(total > 0.0)) {
    // Zero-scatter degenerate input: all sensitivities equal.
    double u = 1.0 / static_cast<double>(n);
    for (double& v : p) v = u;
    return p;
  }

  double cbar = total / static_cast<double>(n);
  double nf = static_cast<double>(n);

  // Term weights for s_i = c1 * d2_i/cbar + c2 * cellcost/(|cell| cbar)
  //                      + c3 * n/|cell|.
  double c1 = 1.0, c2 = 1.0, c3 = 1.0;
  if (variant == CoresetVariant::Blk17) {
    // alpha = 16 (log2 k + 2) with k = 2.
    double alpha = 16.0 * (std::log2(2.0) + 2.0);
    c1 = alpha;
    c2 = 2.0 * alpha;
    c3 = 4.0;
  }

  double ssum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = cell[i];
    double sz = static_cast<double>(cell_size[c]);
    double s = c1 * d2[i] / cbar + c2 * cell_cost[c] / (sz * cbar) +
               c3 * nf / sz;
    p[i] = s;
    ssum += s;
  }
  for (double& v : p) v /= ssum;
  return p;
}

WeightedPointSet build_coreset(const DataSet& data, std::size_t m,
                               CoresetVariant variant, std::uint64_t seed) {
  std::size_t n = data.size();
  if (m < 2 || m > n)
    throw std::invalid_argument("build_coreset: need 2 <= m <= n");

  // Tiny sources cannot host the full complement of seeding centers; with
  // every point a center the cell costs vanish and sampling falls back to
  // uniform, which is the right degenerate behavior.
  std::size_t n_centers = std::min(kBicriterionCenters, n);
  Bicriterion bic =
      best_bicriterion(data, kBicriterionTrials, derive_seed(seed, 0), n_centers);
  std::vector<double> p = sensitivity_probabilities(data, bic, variant);
  std::vector<double> cum = build_cumulative(p);

  SummaryMethod method = variant == CoresetVariant::Blk17
                             ? SummaryMethod::CoresetBlk17
                             : SummaryMethod::CoresetBfl16;
  WeightedPointSet out(data.dim(), method, seed, n);
  Rng rng(derive_seed(seed, 1));
  double mf = static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t i = sample_from_cumulative(cum, rng);
    out.append(data.point(i), 1.0 / (mf * p[i]));
  }
  return out;
}

WeightedPointSet uniform_sample(const DataSet& data, std::size_t m,
                                std::uint64_t seed) {
  std::size_t n = data.size();
  if (m < 2 || m > n)
    throw std::invalid_argument("uniform_sample: need 2 <= m <= n");

  // Partial Fisher-Yates: first m entries become the sample, no replacement.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t k = j + rng.index(n - j);
    std::swap(idx[j], idx[k]);
  }

  WeightedPointSet out(data.dim(), SummaryMethod::Uniform, seed, n);
  double w = static_cast<double>(n) / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) out.append(data.point(idx[j]), w);
  return out;
}

}  // namespace qmeans
