#include "qmeans/clustering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmeans/rng.hpp"
#include "qmeans/vecmath.hpp"

namespace qmeans {

Partition::Partition(std::uint64_t bits, int m) : bits_(bits), m_(m) {
  if (m < 0 || m > 64) throw std::invalid_argument("Partition: need 0 <= m <= 64");
  if (m < 64 && (bits >> m) != 0)
    throw std::invalid_argument("Partition: bits outside [0, 2^m)");
}

Partition Partition::from_string(std::string_view text) {
  if (text.size() > 64)
    throw std::invalid_argument("Partition::from_string: more than 64 points");
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < text.size(); ++j) {
    if (text[j] == '1')
      bits |= std::uint64_t{1} << j;
    else if (text[j] != '0')
      throw std::invalid_argument("Partition::from_string: expected 0/1");
  }
  return Partition(bits, static_cast<int>(text.size()));
}

std::string Partition::to_string() const {
  std::string s(static_cast<std::size_t>(m_), '0');
  for (int i = 0; i < m_; ++i)
    if (test(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

bool Partition::test(int i) const {
  if (i < 0 || i >= m_) throw std::out_of_range("Partition::test: index");
  return (bits_ >> i) & 1u;
}

Partition Partition::complement() const {
  std::uint64_t mask =
      m_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m_) - 1);
  return Partition(bits_ ^ mask, m_);
}

double PointsView::total_weight() const {
  if (weights_.empty()) return static_cast<double>(count_);
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double weighted_cost(const PointsView& pts, const ClusterModel& model) {
  if (model.mu_minus.size() != pts.dim() || model.mu_plus.size() != pts.dim())
    throw std::invalid_argument("weighted_cost: center dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double dm = sqdist(pts.point(i), model.mu_minus);
    double dp = sqdist(pts.point(i), model.mu_plus);
    total += pts.weight(i) * (dp < dm ? dp : dm);
  }
  return total;
}

namespace {

std::vector<double> weighted_mean(const PointsView& pts,
                                  const std::vector<char>& in_side,
                                  char side, double& weight_out) {
  std::size_t d = pts.dim();
  std::vector<double> sum(d, 0.0);
  double w_total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (in_side[i] != side) continue;
    double w = pts.weight(i);
    auto x = pts.point(i);
    for (std::size_t k = 0; k < d; ++k) sum[k] += w * x[k];
    w_total += w;
  }
  if (w_total > 0.0)
    for (double& v : sum) v /= w_total;
  weight_out = w_total;
  return sum;
}

}  // namespace

ClusterModel centroids_of(const WeightedPointSet& pts, const Partition& part) {
  if (static_cast<std::size_t>(part.size()) != pts.size())
    throw std::invalid_argument("centroids_of: partition size mismatch");
  std::size_t d = pts.dim();

  std::vector<double> s_minus(d, 0.0), s_plus(d, 0.0);
  double w_minus = 0.0, w_plus = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double w = pts.weight(i);
    auto x = pts.point(i);
    if (part.test(static_cast<int>(i))) {
      for (std::size_t k = 0; k < d; ++k) s_plus[k] += w * x[k];
      w_plus += w;
    } else {
      for (std::size_t k = 0; k < d; ++k) s_minus[k] += w * x[k];
      w_minus += w;
    }
  }

  ClusterModel model;
  if (w_minus > 0.0 && w_plus > 0.0) {
    for (double& v : s_minus) v /= w_minus;
    for (double& v : s_plus) v /= w_plus;
    model.mu_minus = std::move(s_minus);
    model.mu_plus = std::move(s_plus);
    return model;
  }

  // One side is empty: both centers collapse to the overall mean.
  std::vector<double> mean(d, 0.0);
  double w = w_minus + w_plus;
  for (std::size_t k = 0; k < d; ++k) mean[k] = (s_minus[k] + s_plus[k]) / w;
  model.mu_minus = mean;
  model.mu_plus = std::move(mean);
  return model;
}

namespace {

struct TrialResult {
  ClusterModel model;
  double cost = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<char> assign;
  std::vector<double> trace;
};

// in_side[i] in {0, 1}; returns weighted cost of the assignment's min side.
void assign_points(const PointsView& pts, const ClusterModel& model,
                   std::vector<char>& in_side) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double dm = sqdist(pts.point(i), model.mu_minus);
    double dp = sqdist(pts.point(i), model.mu_plus);
    in_side[i] = dp < dm ? 1 : 0;  // tie -> S_minus
  }
}

TrialResult lloyd_once(const PointsView& pts, const LloydOptions& opt,
                       std::uint64_t seed) {
  std::size_t n = pts.size();
  Rng rng(seed);

  // Weighted k-means++ seeding for two centers.
  std::vector<double> wvec(n);
  for (std::size_t i = 0; i < n; ++i) wvec[i] = pts.weight(i);
  std::vector<double> cum = build_cumulative(wvec);
  std::size_t first = sample_from_cumulative(cum, rng);

  ClusterModel model;
  model.mu_minus.assign(pts.point(first).begin(), pts.point(first).end());
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i)
    scores[i] = pts.weight(i) * sqdist(pts.point(i), model.mu_minus);
  std::vector<double> score_cum = build_cumulative(scores);
  std::size_t second = sample_from_cumulative(score_cum, rng);
  model.mu_plus.assign(pts.point(second).begin(), pts.point(second).end());

  TrialResult res;
  res.assign.resize(n);
  res.trace.push_back(weighted_cost(pts, model));

  double prev_cost = res.trace.back();
  for (int it = 0; it < opt.max_iters; ++it) {
    assign_points(pts, model, res.assign);

    // Recompute centers; reseed an emptied side to the point farthest (in
    // weighted squared distance) from the surviving center.
    double wm = 0.0, wp = 0.0;
    std::vector<double> mu_m = weighted_mean(pts, res.assign, 0, wm);
    std::vector<double> mu_p = weighted_mean(pts, res.assign, 1, wp);
    if (wm == 0.0 || wp == 0.0) {
      const std::vector<double>& alive = wm == 0.0 ? mu_p : mu_m;
      double best = -1.0;
      std::size_t far = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = pts.weight(i) * sqdist(pts.point(i), alive);
        if (s > best) {
          best = s;
          far = i;
        }
      }
      auto fp = pts.point(far);
      if (wm == 0.0)
        mu_m.assign(fp.begin(), fp.end());
      else
        mu_p.assign(fp.begin(), fp.end());
    }
    model.mu_minus = std::move(mu_m);
    model.mu_plus = std::move(mu_p);

    res.iterations = it + 1;
    double cost = weighted_cost(pts, model);
    res.trace.push_back(cost);
    if (prev_cost - cost <= opt.rel_tol * prev_cost) {
      prev_cost = cost;
      break;
    }
    prev_cost = cost;
  }

  assign_points(pts, model, res.assign);
  res.cost = weighted_cost(pts, model);
  res.model = std::move(model);
  return res;
}

}  // namespace

LloydResult lloyd_2means(const PointsView& pts, const LloydOptions& options,
                         std::uint64_t seed) {
  std::size_t n = pts.size();
  if (n < 2) throw std::invalid_argument("lloyd_2means: need at least 2 points");
  if (options.trials < 1 || options.max_iters < 1)
    throw std::invalid_argument("lloyd_2means: bad options");

  TrialResult best;
  for (int t = 0; t < options.trials; ++t) {
    TrialResult cand = lloyd_once(pts, options, derive_seed(seed, t));
    if (cand.cost < best.cost) best = std::move(cand);
  }

  LloydResult out;
  out.model = std::move(best.model);
  out.cost = best.cost;
  out.iterations = best.iterations;
  out.cost_trace = std::move(best.trace);
  if (n <= 64) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (best.assign[i]) bits |= std::uint64_t{1} << i;
    out.partition = Partition(bits, static_cast<int>(n));
  }
  return out;
}

double evaluate_on_full(const DataSet& data, const WeightedPointSet& pts,
                        const Partition& part) {
  return weighted_cost(PointsView(data), centroids_of(pts, part));
}

}  // namespace qmeans
