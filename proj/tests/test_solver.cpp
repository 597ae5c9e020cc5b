#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qmeans/coreset.hpp"
#include "qmeans/dataio.hpp"
#include "qmeans/hamiltonian.hpp"
#include "qmeans/rng.hpp"
#include "qmeans/solver.hpp"

using namespace qmeans;

namespace {

// Naive double-loop reference: scan everything, collect exact ties.
std::pair<double, std::vector<std::uint64_t>> naive_max(
    const std::vector<double>& table) {
  double best = table[0];
  for (double v : table) best = std::max(best, v);
  std::vector<std::uint64_t> args;
  for (std::uint64_t z = 0; z < table.size(); ++z)
    if (table[z] == best) args.push_back(z);
  return {best, args};
}

std::vector<std::uint64_t> bits_of(const BruteForceResult& r) {
  std::vector<std::uint64_t> out;
  for (const Partition& p : r.maximizers) out.push_back(p.bits());
  return out;
}

}  // namespace

TEST_CASE("callable search matches a naive scan, ties included") {
  Rng rng(31);
  std::vector<double> table(1 << 10);
  // Round to a coarse grid so exact ties actually occur.
  for (double& v : table) v = std::round(rng.uniform(-4.0, 4.0) * 8.0) / 8.0;

  auto energy = [&](const Partition& p) { return table[p.bits()]; };
  BruteForceResult r = brute_force_max(energy, 10, false);

  auto [best, args] = naive_max(table);
  CHECK(r.best_energy == best);
  CHECK(bits_of(r) == args);
  CHECK(args.size() > 1);  // the grid must have produced a real tie
  CHECK(std::is_sorted(r.maximizers.begin(), r.maximizers.end()));
}

TEST_CASE("symmetric mode agrees with the full scan on symmetric energies") {
  Rng rng(32);
  int m = 9;
  std::vector<double> table(1 << m);
  for (std::uint64_t z = 0; z < table.size() / 2; ++z) {
    double v = rng.uniform(-1.0, 1.0);
    table[z] = v;
    table[z ^ ((1u << m) - 1)] = v;
  }
  auto energy = [&](const Partition& p) { return table[p.bits()]; };

  BruteForceResult full = brute_force_max(energy, m, false);
  BruteForceResult half = brute_force_max(energy, m, true);
  CHECK(full.best_energy == half.best_energy);
  CHECK(bits_of(full) == bits_of(half));
  // Complement closure of the maximizer set.
  for (const Partition& p : half.maximizers) {
    CHECK(std::binary_search(half.maximizers.begin(), half.maximizers.end(),
                             p.complement()));
  }
}

TEST_CASE("table search matches the callable search") {
  Rng rng(33);
  std::vector<double> table(1 << 12);
  for (double& v : table) v = std::round(rng.uniform(-2.0, 2.0) * 4.0) / 4.0;
  auto energy = [&](const Partition& p) { return table[p.bits()]; };

  BruteForceResult from_table = brute_force_max_table(table, 12, false);
  BruteForceResult from_call = brute_force_max(energy, 12, false);
  CHECK(from_table.best_energy == from_call.best_energy);
  CHECK(bits_of(from_table) == bits_of(from_call));
}

TEST_CASE("table search spans chunk boundaries correctly") {
  // 2^18 entries cover several 2^16 scan chunks; plant the maximum twice,
  // in different chunks, and once at the very last index.
  std::vector<double> table(1 << 18, 0.0);
  table[100] = 7.0;
  table[(1 << 17) + 5] = 7.0;
  table[(1 << 18) - 1] = 7.0;
  BruteForceResult r = brute_force_max_table(table, 18, false);
  CHECK(r.best_energy == 7.0);
  CHECK(bits_of(r) == std::vector<std::uint64_t>{
                          100, (1u << 17) + 5, (1u << 18) - 1});
}

TEST_CASE("constant energy makes every partition a maximizer") {
  std::vector<double> table(1 << 6, 3.25);
  for (bool symmetric : {false, true}) {
    BruteForceResult r = brute_force_max_table(table, 6, symmetric);
    CHECK(r.best_energy == 3.25);
    REQUIRE(r.maximizers.size() == 64);
    for (std::uint64_t z = 0; z < 64; ++z)
      CHECK(r.maximizers[z].bits() == z);
  }
}

TEST_CASE("size guards") {
  auto energy = [](const Partition&) { return 0.0; };
  CHECK_THROWS(brute_force_max(energy, 29, false));
  CHECK_THROWS(brute_force_max(energy, 0, false));
  std::vector<double> table(4);
  CHECK_THROWS(brute_force_max_table(table, 3, false));  // size mismatch
}

TEST_CASE("quality reference recovers a planted split") {
  // Two tight blobs far apart; the summary is the data itself, so the
  // best partition must be the blob split and its full-data cost must match
  // scoring that partition directly.
  Rng rng(40);
  DataSet data(2, "blobs");
  WeightedPointSet pts(2, SummaryMethod::Uniform, 0, 8);
  for (int i = 0; i < 8; ++i) {
    double cx = i < 4 ? -50.0 : 50.0;
    std::vector<double> p{cx + rng.normal(), rng.normal()};
    data.append(p);
    pts.append(p, 1.0);
  }

  for (TaylorOrder order : {TaylorOrder::finite(1), TaylorOrder::infinite()}) {
    QaoaBound bound = qaoa_bound(data, pts, order);
    CHECK((bound.partition == Partition::from_string("00001111") ||
           bound.partition == Partition::from_string("11110000")));
    double rescored = evaluate_on_full(data, pts, bound.partition);
    CHECK(bound.full_cost == doctest::Approx(rescored).epsilon(1e-12));
    CHECK(bound.summary_energy ==
          doctest::Approx(taylor_energy(pts, order, bound.partition))
              .epsilon(1e-12));
  }
}
