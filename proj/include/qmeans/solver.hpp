#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qmeans/clustering.hpp"
#include "qmeans/hamiltonian.hpp"

namespace qmeans {

// Exhaustive maximum of a partition energy, with the complete set of
// maximizing partitions (ties by exact equality of the double values).
struct BruteForceResult {
  double best_energy = 0.0;
  std::vector<Partition> maximizers;  // sorted by bits
};

// Enumerate all 2^m partitions (m <= 28). When `symmetric` is set the energy
// is assumed complement-invariant: only half the partitions are evaluated
// and each maximizer's complement is added afterwards, which halves the work
// and makes complement ties exact.
BruteForceResult brute_force_max(
    const std::function<double(const Partition&)>& energy, int m,
    bool symmetric);

// Same, reading energies from a dense table indexed by partition bits.
// Large tables are scanned in fixed-size chunks (in parallel when hardware
// threads are available) and merged in chunk order, so the result does not
// depend on thread scheduling.
BruteForceResult brute_force_max_table(std::span<const double> table, int m,
                                       bool symmetric);

// Classical quality reference for a given summary and truncation order:
// brute-force the order's objective over the summary, then score the best
// partition's induced centers on the full data. When several partitions tie,
// the one with the lowest full-data cost is reported.
struct QaoaBound {
  Partition partition;
  double summary_energy = 0.0;  // maximized objective value on the summary
  double full_cost = 0.0;       // induced centers scored on the full data
};

QaoaBound qaoa_bound(const DataSet& data, const WeightedPointSet& pts,
                     TaylorOrder order);

}  // namespace qmeans
