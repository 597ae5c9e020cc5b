#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmeans/coreset.hpp"
#include "qmeans/dataio.hpp"

namespace qmeans {

// Two-cluster split of up to 64 points, stored as a bitmask. Bit i is point
// i's side: 0 means cluster S_minus, 1 means cluster S_plus. In the spin
// picture bit 0 corresponds to Z = +1 (spin up is S_minus).
class Partition {
 public:
  Partition() = default;
  Partition(std::uint64_t bits, int m);

  // "0110..." with character j giving point j's bit (point 0 leftmost).
  static Partition from_string(std::string_view text);
  std::string to_string() const;

  int size() const noexcept { return m_; }
  bool test(int i) const;  // true -> point i in S_plus
  std::uint64_t bits() const noexcept { return bits_; }
  // Spin value of point i under the fixed convention: +1 - 2 * bit.
  int spin(int i) const { return test(i) ? -1 : +1; }

  Partition complement() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::uint64_t bits_ = 0;
  int m_ = 0;
};

// Uniform read-only view over either input type: a raw DataSet (unit
// weights) or a WeightedPointSet. Lets the clustering and energy code take
// one parameter type.
class PointsView {
 public:
  PointsView(const DataSet& data)  // NOLINT: implicit by design
      : flat_(data.flat()), dim_(data.dim()), count_(data.size()) {}
  PointsView(const WeightedPointSet& pts)  // NOLINT: implicit by design
      : flat_(pts.flat()),
        weights_(pts.weights()),
        dim_(pts.dim()),
        count_(pts.size()) {}

  std::size_t size() const noexcept { return count_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> point(std::size_t i) const {
    return {flat_.data() + i * dim_, dim_};
  }
  double weight(std::size_t i) const {
    return weights_.empty() ? 1.0 : weights_[i];
  }
  double total_weight() const;

 private:
  std::span<const double> flat_;
  std::span<const double> weights_;  // empty -> all ones
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
};

// Pair of cluster centers.
struct ClusterModel {
  std::vector<double> mu_minus;
  std::vector<double> mu_plus;
  std::size_t dim() const { return mu_minus.size(); }
};

// Weighted 2-means objective: sum_i w_i * min(|x_i - mu_minus|^2,
// |x_i - mu_plus|^2). Equidistant points count toward mu_minus, matching the
// assignment rule below.
double weighted_cost(const PointsView& pts, const ClusterModel& model);

// Weighted centroids of the two sides of `part`. An empty side's centroid
// falls back to the overall weighted mean so downstream distances stay
// finite and the between-cluster separation is zero.
ClusterModel centroids_of(const WeightedPointSet& pts, const Partition& part);

struct LloydOptions {
  int trials = 10;
  int max_iters = 300;
  double rel_tol = 1e-4;
};

struct LloydResult {
  ClusterModel model;
  double cost = 0.0;
  int iterations = 0;  // update steps taken by the winning trial
  // Final assignment, available when the input has at most 64 points.
  std::optional<Partition> partition;
  // Objective after seeding and after each update step (winning trial).
  std::vector<double> cost_trace;
};

// Weighted Lloyd iteration for k = 2 with weighted k-means++ seeding, best
// of `trials` restarts (trial t uses derive_seed(seed, t); cost ties keep
// the earliest trial). Ties in assignment go to S_minus. If a cluster loses
// all its points, its center is reseeded to the point with the largest
// weighted squared distance from the surviving center.
LloydResult lloyd_2means(const PointsView& pts, const LloydOptions& options,
                         std::uint64_t seed);

// Cost on the full data of the centers induced on the summary by `part`.
double evaluate_on_full(const DataSet& data, const WeightedPointSet& pts,
                        const Partition& part);

}  // namespace qmeans
