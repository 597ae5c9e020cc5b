#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmeans/clustering.hpp"
#include "qmeans/coreset.hpp"

namespace qmeans {

// Truncation order of the cluster-weight ratio expansion. Finite j keeps
// Taylor terms through degree j; infinite() means the exact ratio (no
// truncation).
class TaylorOrder {
 public:
  static TaylorOrder finite(int j);
  static TaylorOrder infinite() { return TaylorOrder(-1); }

  bool is_infinite() const noexcept { return value_ < 0; }
  int value() const;  // throws for the infinite order

  std::string to_string() const;
  static TaylorOrder from_string(const std::string& text);

  friend bool operator==(TaylorOrder a, TaylorOrder b) {
    return a.value_ == b.value_;
  }

 private:
  explicit TaylorOrder(int v) : value_(v) {}
  int value_;
};

struct IsingTerm {
  double coeff = 0.0;
  std::vector<int> support;  // strictly increasing qubit indices
};

// Real polynomial in Pauli-Z variables: offset + sum of terms
// coeff * prod_{i in support} Z_i. Supports are canonical (sorted, no
// repeats; Z_i^2 = 1 is folded away on insertion) and terms with equal
// support merge, so structurally equal builds compare equal.
class IsingPolynomial {
 public:
  IsingPolynomial() = default;
  explicit IsingPolynomial(int m, double offset = 0.0);

  void add_offset(double delta) { offset_ += delta; }
  void add_term(double coeff, std::vector<int> support);

  int qubit_count() const noexcept { return m_; }
  double offset() const noexcept { return offset_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  // Largest support size, 0 for a constant polynomial.
  int max_support() const;

  // Terms in canonical (lexicographic support) order.
  std::vector<IsingTerm> terms() const;
  const std::map<std::vector<int>, double>& term_map() const { return terms_; }

  friend bool operator==(const IsingPolynomial& a, const IsingPolynomial& b) {
    return a.m_ == b.m_ && a.offset_ == b.offset_ && a.terms_ == b.terms_;
  }

 private:
  int m_ = 0;
  double offset_ = 0.0;
  std::map<std::vector<int>, double> terms_;
};

// Cluster weight totals of the two sides of a partition.
struct ClusterWeights {
  double w_minus = 0.0;
  double w_plus = 0.0;
  double total() const { return w_minus + w_plus; }
};

ClusterWeights cluster_weights(const PointsView& pts, const Partition& part);

// Degree-j Taylor polynomial of x -> 1/x around x = 1/2:
// sum_{t=0}^{j} (-1)^t 2^{t+1} (x - 1/2)^t.
double taylor_ratio_series(int order, double x);

// Between-cluster separation objective at the given truncation order.
// Infinite order is the exact objective W_minus W_plus |mu_minus - mu_plus|^2
// (zero if a side is empty); finite order j replaces each weight ratio
// W_side / W by its degree-j expansion of the reciprocal. Evaluated so that
// complementary partitions give bit-identical values.
double taylor_energy(const WeightedPointSet& pts, TaylorOrder order,
                     const Partition& part);

// Evaluate offset + sum_T coeff_T prod_{i in T} z_i at the spin assignment
// z_i = +1 - 2 * bit_i induced by `part`.
double eval_polynomial(const IsingPolynomial& h, const Partition& part);

// Pairwise part of the order-0 objective: sum_{i<j} w_i w_j <x_i, x_j>
// Z_i Z_j, with zero offset. Maximizing it is the weighted max-cut that the
// order-0 truncation reduces 2-means to.
IsingPolynomial build_order0(const WeightedPointSet& pts);

// Order-1 objective as a spin polynomial. The first-order ratio correction
// keeps the polynomial quadratic: two-body terms plus an offset (all
// degree-1 contributions cancel by symmetry).
IsingPolynomial build_order1(const WeightedPointSet& pts);

// Total weighted scatter split into within-cluster cost (t1) and
// between-cluster separation (t3); scatter == t1 + t3 for every partition.
struct ScatterDecomposition {
  double scatter = 0.0;
  double t1 = 0.0;
  double t3 = 0.0;
};

ScatterDecomposition scatter_decomposition(const WeightedPointSet& pts,
                                           const Partition& part);

// Dense table of eval_polynomial over all 2^m partitions, indexed by
// partition bits. Requires m <= 24 (8 * 2^m bytes).
std::vector<double> energy_table(const IsingPolynomial& h);

// Dense table of taylor_energy over all 2^m partitions. Exploits the exact
// complement symmetry: only half the partitions are evaluated, mirrors are
// copied, so complementary entries are bit-identical by construction.
std::vector<double> taylor_energy_table(const WeightedPointSet& pts,
                                        TaylorOrder order);

}  // namespace qmeans
