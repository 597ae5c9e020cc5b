#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmeans/dataio.hpp"

namespace qmeans {

// How a weighted summary was produced. Serialized into summary files so a
// result can always be traced back to its construction.
enum class SummaryMethod { Uniform, CoresetBlk17, CoresetBfl16 };

// Sensitivity formula variant. Blk17 follows Bachem/Lucic/Krause 2017
// (alpha-weighted three-term bound); Bfl16 follows Braverman/Feldman/Lang
// 2016 (unweighted three-term bound). Same sampling machinery either way.
enum class CoresetVariant { Blk17, Bfl16 };

std::string to_string(SummaryMethod method);
SummaryMethod summary_method_from_string(const std::string& text);
std::string to_string(CoresetVariant variant);
CoresetVariant coreset_variant_from_string(const std::string& text);

// Points with strictly positive importance weights, plus provenance
// (original data size, construction method, seed).
class WeightedPointSet {
 public:
  WeightedPointSet() = default;
  WeightedPointSet(std::size_t dim, SummaryMethod method, std::uint64_t seed,
                   std::size_t source_n);

  void append(std::span<const double> point, double weight);

  std::size_t size() const noexcept { return count_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> point(std::size_t i) const;
  double weight(std::size_t i) const;
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> flat() const noexcept { return data_; }
  double total_weight() const;

  SummaryMethod method() const noexcept { return method_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t source_n() const noexcept { return source_n_; }

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> data_;
  std::vector<double> weights_;
  SummaryMethod method_ = SummaryMethod::Uniform;
  std::uint64_t seed_ = 0;
  std::size_t source_n_ = 0;
};

// Rough solution used only to define sensitivities: centers from one
// D^2-sampling pass, plus the clustering cost they achieve.
struct Bicriterion {
  std::vector<double> centers;  // row-major, count() x dim
  std::size_t dim = 0;
  double cost = 0.0;

  std::size_t count() const { return dim == 0 ? 0 : centers.size() / dim; }
  std::span<const double> center(std::size_t c) const;
};

// Both coreset variants target k = 2 and over-provision the bicriterion with
// beta * k = 4 centers; the best of 10 independent D^2 passes is kept.
inline constexpr std::size_t kBicriterionCenters = 4;
inline constexpr int kBicriterionTrials = 10;

// One D^2 (k-means++ style) seeding pass: first center uniform, each later
// center drawn with probability proportional to squared distance from the
// centers chosen so far.
Bicriterion d2_sample(const DataSet& data, std::size_t n_centers,
                      std::uint64_t seed);

// Lowest-cost result of `trials` independent d2_sample passes (ties keep the
// earliest trial). Trial seeds are derive_seed(seed, trial).
Bicriterion best_bicriterion(const DataSet& data, int trials,
                             std::uint64_t seed,
                             std::size_t n_centers = kBicriterionCenters);

// Per-point sampling probabilities: sensitivity upper bounds normalized to
// sum to one (the normalization is the final arithmetic step). Falls back to
// uniform when the bicriterion cost is exactly zero.
std::vector<double> sensitivity_probabilities(const DataSet& data,
                                              const Bicriterion& bicriterion,
                                              CoresetVariant variant);

// m-point importance-sampled coreset: draw i.i.d. from the sensitivity
// distribution, weight each draw 1 / (m * p_i). Requires 2 <= m <= n.
WeightedPointSet build_coreset(const DataSet& data, std::size_t m,
                               CoresetVariant variant, std::uint64_t seed);

// Baseline summary: m distinct points sampled uniformly without replacement,
// each with weight n / m. Requires 2 <= m <= n.
WeightedPointSet uniform_sample(const DataSet& data, std::size_t m,
                                std::uint64_t seed);

}  // namespace qmeans
