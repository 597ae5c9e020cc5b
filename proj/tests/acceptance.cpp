// Acceptance harness: one check per release criterion, each printing a
// single [PASS]/[FAIL] line with the measured numbers. Exits nonzero if any
// check fails. Tolerances and budgets are pinned here, next to the checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "qmeans/bench.hpp"
#include "qmeans/circuit.hpp"
#include "qmeans/clustering.hpp"
#include "qmeans/coreset.hpp"
#include "qmeans/dataio.hpp"
#include "qmeans/hamiltonian.hpp"
#include "qmeans/qaoa.hpp"
#include "qmeans/rng.hpp"
#include "qmeans/solver.hpp"
#include "qmeans/vecmath.hpp"

using namespace qmeans;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

DataSet random_blob_data(Rng& rng, std::size_t n, std::size_t d,
                         double center_scale, double spread) {
  DataSet data(d);
  std::vector<double> c0(d), c1(d), p(d);
  for (std::size_t k = 0; k < d; ++k) {
    c0[k] = -center_scale * (1.0 + rng.uniform());
    c1[k] = center_scale * (1.0 + rng.uniform());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double>& c = rng.uniform() < 0.5 ? c0 : c1;
    for (std::size_t k = 0; k < d; ++k) p[k] = c[k] + spread * rng.normal();
    data.append(p);
  }
  return data;
}

WeightedPointSet random_summary(Rng& rng, std::size_t m, std::size_t d,
                                double coord_scale, double weight_scale) {
  WeightedPointSet pts(d, SummaryMethod::Uniform, 0, m);
  std::vector<double> p(d);
  for (std::size_t i = 0; i < m; ++i) {
    for (double& v : p) v = coord_scale * rng.normal();
    pts.append(p, weight_scale * rng.uniform(0.5, 3.0));
  }
  return pts;
}

// Side-assigned 2-means cost of one partition: each point charged to its own
// side's centroid.
double partition_cost(const WeightedPointSet& pts, const Partition& part) {
  return scatter_decomposition(pts, part).t1;
}

// ---------------------------------------------------------------------------

void criterion1_scatter_identity() {
  constexpr double kTol = 1e-9;
  constexpr double kBudgetSeconds = 10.0;
  auto t0 = std::chrono::steady_clock::now();

  Rng rng(1001);
  double worst = 0.0;
  for (int it = 0; it < 1000; ++it) {
    std::size_t m = 2 + rng.index(11);   // 2..12
    std::size_t d = 1 + rng.index(64);   // 1..64
    std::size_t n = m + rng.index(41);   // m..m+40
    DataSet data = random_blob_data(rng, n, d, 2.0, 1.0);
    CoresetVariant variant =
        it % 2 == 0 ? CoresetVariant::Bfl16 : CoresetVariant::Blk17;
    WeightedPointSet pts = build_coreset(data, m, variant, rng.next_u64());

    Partition part(rng.index(std::size_t(1) << m), static_cast<int>(m));
    ScatterDecomposition sd = scatter_decomposition(pts, part);
    double residual = std::abs(sd.scatter - (sd.t1 + sd.t3)) / sd.scatter;
    worst = std::max(worst, residual);
  }

  double elapsed = seconds_since(t0);
  bool ok = worst < kTol && elapsed < kBudgetSeconds;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "scatter splits into within plus between on 1000 random "
                "summaries (worst rel residual %.2e, %.2f s)",
                worst, elapsed);
  report(1, ok, buf);
}

void criterion2_reduction_equivalence() {
  constexpr double kBudgetSeconds = 60.0;
  auto t0 = std::chrono::steady_clock::now();

  Rng rng(1002);
  int bad = 0;
  for (int it = 0; it < 100; ++it) {
    std::size_t m = 2 + rng.index(9);  // 2..10
    std::size_t d = 1 + rng.index(4);
    std::size_t n = m + rng.index(21);
    DataSet data = random_blob_data(rng, n, d, 2.5, 0.5);
    WeightedPointSet pts =
        build_coreset(data, m, CoresetVariant::Bfl16, rng.next_u64());

    std::size_t states = std::size_t(1) << m;
    std::vector<double> energy = taylor_energy_table(pts, TaylorOrder::infinite());

    double best_cost = 1e300, best_energy = -1e300;
    for (std::size_t z = 0; z < states; ++z) {
      best_cost = std::min(best_cost, partition_cost(pts, Partition(z, int(m))));
      best_energy = std::max(best_energy, energy[z]);
    }
    std::set<std::size_t> argmin_cost, argmax_energy;
    for (std::size_t z = 0; z < states; ++z) {
      if (partition_cost(pts, Partition(z, int(m))) == best_cost)
        argmin_cost.insert(z);
      if (energy[z] == best_energy) argmax_energy.insert(z);
    }

    bool closed = true;
    for (std::size_t z : argmax_energy)
      closed = closed && argmax_energy.count(z ^ (states - 1)) == 1;
    if (argmin_cost != argmax_energy || !closed) ++bad;
  }

  double elapsed = seconds_since(t0);
  bool ok = bad == 0 && elapsed < kBudgetSeconds;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "exhaustive cluster-cost minimizers equal separation "
                "maximizers and close under complement on 100 random "
                "summaries (%d mismatches, %.2f s)",
                bad, elapsed);
  report(2, ok, buf);
}

void criterion3_order0_ordering() {
  constexpr double kTol = 1e-9;

  Rng rng(1003);
  double worst = 0.0;
  int argmax_mismatches = 0;
  for (int it = 0; it < 100; ++it) {
    std::size_t m = 2 + rng.index(9);  // 2..10
    std::size_t d = 1 + rng.index(4);
    bool desk = it % 2 == 1;
    WeightedPointSet pts = random_summary(rng, m, d, desk ? 100.0 : 1.0,
                                          desk ? 400.0 : 1.0);

    std::vector<double> table = energy_table(build_order0(pts));

    // Independent route: pairwise cut with edge weights -w_i w_j <x_i, x_j>;
    // the polynomial energy must be an affine image with slope +2, which
    // pins the whole ordering.
    double self = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        self += pts.weight(i) * pts.weight(j) * dot(pts.point(i), pts.point(j));

    std::size_t states = std::size_t(1) << m;
    std::vector<double> affine(states);
    double scale = 1.0;
    for (std::size_t z = 0; z < states; ++z) {
      Partition part(z, int(m));
      double cut = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          if (part.test(int(i)) != part.test(int(j)))
            cut -= pts.weight(i) * pts.weight(j) *
                   dot(pts.point(i), pts.point(j));
      affine[z] = self + 2.0 * cut;
      scale = std::max({scale, std::abs(table[z]), std::abs(affine[z])});
    }
    for (std::size_t z = 0; z < states; ++z)
      worst = std::max(worst, std::abs(table[z] - affine[z]) / scale);

    std::set<std::size_t> top_energy, top_cut;
    double emax = *std::max_element(table.begin(), table.end());
    double amax = *std::max_element(affine.begin(), affine.end());
    for (std::size_t z = 0; z < states; ++z) {
      if (table[z] == emax) top_energy.insert(z);
      if (affine[z] == amax) top_cut.insert(z);
    }
    if (top_energy != top_cut) ++argmax_mismatches;
  }

  bool ok = worst < kTol && argmax_mismatches == 0;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "pairwise-objective energies track the cut value on 100 "
                "random summaries (worst rel deviation %.2e, %d argmax "
                "mismatches)",
                worst, argmax_mismatches);
  report(3, ok, buf);
}

void criterion4_order1_fidelity() {
  constexpr double kTol = 1e-9;

  Rng rng(1004);
  double worst = 0.0;
  bool quadratic = true;
  for (int it = 0; it < 100; ++it) {
    std::size_t m = 2 + rng.index(9);  // 2..10
    std::size_t d = 1 + rng.index(4);
    bool desk = it % 2 == 1;
    WeightedPointSet pts = random_summary(rng, m, d, desk ? 100.0 : 1.0,
                                          desk ? 400.0 : 1.0);

    IsingPolynomial h = build_order1(pts);
    quadratic = quadratic && h.max_support() == 2;
    for (const auto& term : h.terms())
      quadratic = quadratic && term.support.size() == 2;

    std::vector<double> poly = energy_table(h);
    std::vector<double> direct = taylor_energy_table(pts, TaylorOrder::finite(1));
    double scale = 1.0;
    for (double v : direct) scale = std::max(scale, std::abs(v));
    for (std::size_t z = 0; z < poly.size(); ++z)
      worst = std::max(worst, std::abs(poly[z] - direct[z]) / scale);
  }

  bool ok = worst < kTol && quadratic;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "first-order polynomial matches the first-order objective on "
                "every partition of 100 random summaries (worst rel deviation "
                "%.2e, quadratic: %s)",
                worst, quadratic ? "yes" : "no");
  report(4, ok, buf);
}

void criterion5_series_anchors() {
  constexpr double kTol = 1e-12;
  constexpr double kSlack = 1e-15;

  bool anchors = true;
  for (int k = 0; k < 20; ++k) {
    double x = 0.05 + 0.045 * k;
    anchors = anchors && taylor_ratio_series(0, x) == 2.0;
    anchors = anchors &&
              std::abs(taylor_ratio_series(1, x) - (4.0 - 4.0 * x)) <= kTol;
  }

  bool monotone = true;
  for (int k = 0; k <= 40; ++k) {
    double x = 0.4 + 0.2 * k / 40.0;
    double e0 = std::abs(taylor_ratio_series(0, x) - 1.0 / x);
    double e1 = std::abs(taylor_ratio_series(1, x) - 1.0 / x);
    double e2 = std::abs(taylor_ratio_series(2, x) - 1.0 / x);
    monotone = monotone && e1 <= e0 + kSlack && e2 <= e1 + kSlack;
  }

  bool ok = anchors && monotone;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "ratio series anchors hold (degree 0 constant 2, degree 1 "
                "affine: %s) and the reciprocal error is non-increasing "
                "through degree 2: %s",
                anchors ? "yes" : "no", monotone ? "yes" : "no");
  report(5, ok, buf);
}

void criterion6_cnot_budget() {
  Rng rng(1006);
  bool counts_ok = true;
  for (int m = 2; m <= 12; ++m) {
    DataSet data = random_blob_data(rng, std::size_t(m) + 10, 3, 2.0, 1.0);
    WeightedPointSet pts =
        build_coreset(data, std::size_t(m), CoresetVariant::Bfl16, 77);
    IsingPolynomial h = build_order0(pts);
    for (int p = 1; p <= 3; ++p) {
      QaoaParams params;
      for (int l = 0; l < p; ++l) {
        params.gammas.push_back(rng.uniform(0.0, 1.0));
        params.betas.push_back(rng.uniform(0.0, 1.0));
      }
      long cnot = count_gates(compile_swap_network(h, params)).cnot;
      long expect = (3L * m * (m - 1) / 2 - m / 2) * p;
      counts_ok = counts_ok && cnot == expect;
    }
  }

  DataSet data5 = random_blob_data(rng, 15, 3, 2.0, 1.0);
  WeightedPointSet pts5 = build_coreset(data5, 5, CoresetVariant::Bfl16, 5);
  long cnot5 = count_gates(compile_swap_network(
                               build_order0(pts5), QaoaParams{{0.3}, {0.2}}))
                   .cnot;

  bool ok = counts_ok && cnot5 == 28;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "entangling-gate budget is (3/2 m(m-1) - floor(m/2)) per "
                "layer for m = 2..12, depth 1..3 (all exact: %s; five qubits "
                "one layer: %ld)",
                counts_ok ? "yes" : "no", cnot5);
  report(6, ok, buf);
}

void criterion7_network_equivalence() {
  constexpr double kTol = 1e-9;
  constexpr double kBudgetSeconds = 60.0;
  auto t0 = std::chrono::steady_clock::now();

  Rng rng(1007);
  double worst = 0.0;
  for (int it = 0; it < 50; ++it) {
    std::size_t m = 2 + rng.index(7);  // 2..8
    std::size_t d = 1 + rng.index(4);
    WeightedPointSet pts = random_summary(rng, m, d, 1.0, 1.0);
    IsingPolynomial h = build_order0(pts);

    int p = 1 + int(rng.index(2));
    QaoaParams params;
    for (int l = 0; l < p; ++l) {
      params.gammas.push_back(rng.uniform(0.0, 1.5));
      params.betas.push_back(rng.uniform(0.0, 1.5));
    }

    GateCircuit circ = compile_swap_network(h, params);
    worst = std::max(worst, verify_equivalence(circ, h, params));
  }

  double elapsed = seconds_since(t0);
  bool ok = worst < kTol && elapsed < kBudgetSeconds;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "compiled line circuits reproduce the reference ansatz on 50 "
                "random instances (worst amplitude deviation %.2e, %.2f s)",
                worst, elapsed);
  report(7, ok, buf);
}

void criterion8_sampling_sanity() {
  constexpr double kMeanTol = 1e-10;

  Rng rng(1008);
  WeightedPointSet pts = random_summary(rng, 6, 3, 1.0, 1.0);
  std::vector<double> table = energy_table(build_order0(pts));

  // Zero angles leave the uniform state, whose expectation is the table
  // mean; for a pure pairwise objective that mean is exactly zero.
  StateVector uniform = prepare(table, QaoaParams{{0.0}, {0.0}});
  double f_zero = expectation(uniform, table);

  BruteForceResult brute = brute_force_max_table(table, 6, /*symmetric=*/true);
  OptimizeResult opt = optimize(table, 1, 4, 88);
  bool bounded = opt.value <= brute.best_energy + 1e-9;

  // Two antipodal unit points, equal weights: the pairwise objective is
  // -Z0 Z1 and depth 1 can place all probability on the two cuts.
  WeightedPointSet anti(1, SummaryMethod::Uniform, 0, 2);
  anti.append(std::vector<double>{1.0}, 1.0);
  anti.append(std::vector<double>{-1.0}, 1.0);
  std::vector<double> table2 = energy_table(build_order0(anti));
  BruteForceResult brute2 = brute_force_max_table(table2, 2, true);
  OptimizeResult opt2 = optimize(table2, 1, 4, 99);
  StateVector best_state = prepare(table2, opt2.params);
  double mass = 0.0;
  for (const Partition& part : brute2.maximizers)
    mass += std::norm(best_state.amp[part.bits()]);

  bool ok = std::abs(f_zero) <= kMeanTol && bounded && mass > 0.5;
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "zero-angle expectation is the table mean (|F| = %.2e), "
                "optimized F stays below the exhaustive max (%s), and the "
                "antipodal pair concentrates %.3f of the probability on its "
                "optimal cuts",
                std::abs(f_zero), bounded ? "yes" : "no", mass);
  report(8, ok, buf);
}

void criterion9_coreset_advantage() {
  // Run the benchmark module exactly as `bench run` does out of the box:
  // desk-scale synthetic source, ten repeats per cell, default config seed.
  // Importance sampling can miss the majority cluster in any single draw, so
  // the comparison is over the experiment's ten seeded repeats as a block.
  ExperimentConfig cfg;
  cfg.synthetic = SyntheticSpec{};
  cfg.m_list = {10};
  cfg.methods = {"uniform", "coreset"};
  cfg.orders = {};
  cfg.bound_m_allowed = {};
  cfg.repeats = 10;
  cfg.report = ExperimentConfig::Report::MeanMinMax;
  BenchOutput out = run_pipeline(cfg);

  double sum_coreset = 0.0, sum_uniform = 0.0;
  for (const ResultRecord& r : out.records) {
    if (r.method == "coreset") sum_coreset += r.full_data_cost;
    if (r.method == "uniform") sum_uniform += r.full_data_cost;
  }
  double mean_coreset = sum_coreset / 10.0;
  double mean_uniform = sum_uniform / 10.0;

  bool ok = mean_coreset < mean_uniform;
  char buf[220];
  std::snprintf(buf, sizeof(buf),
                "ten-point coresets beat uniform samples on the rare-cluster "
                "synthetic benchmark (mean full-data cost %.4g vs %.4g over "
                "the default experiment's 10 repeats)",
                mean_coreset, mean_uniform);
  report(9, ok, buf);

  // Optional informational run on a user-supplied recording, not scored.
  if (const char* path = std::getenv("QMEANS_EPILEPSY_CSV")) {
    try {
      ExperimentConfig cfg;
      cfg.csv_path = path;
      cfg.repeats = 3;
      QaoaRunResult r = run_qaoa_experiment(cfg, 5, 1, 3, 512);
      std::printf(
          "[INFO] criterion 9: external csv '%s', five-point coreset modal "
          "outcome scores %.6g on the full data (optimal: %s)\n",
          path, r.record.full_data_cost, r.modal_is_optimal ? "yes" : "no");
    } catch (const std::exception& e) {
      std::printf("[INFO] criterion 9: external csv run skipped (%s)\n",
                  e.what());
    }
  }
}

void criterion10_full_data_baseline() {
  constexpr double kSlack = 1.0 + 1e-12;
  LloydOptions lloyd;
  std::vector<TaylorOrder> orders{TaylorOrder::finite(0), TaylorOrder::finite(1),
                                  TaylorOrder::finite(2),
                                  TaylorOrder::infinite()};

  struct Source {
    std::string name;
    DataSet data;
    std::size_t m;
  };
  SyntheticSpec spec;
  std::vector<Source> sources;
  sources.push_back({"synthetic", generate_synthetic(spec), 10});
  sources.push_back({"blobs200", load_csv("fixtures/blobs200.csv"), 8});
  sources.push_back({"tri150", load_csv("fixtures/tri150.csv"), 8});

  bool all_ok = true;
  std::string detail;
  for (const Source& src : sources) {
    int good_seeds = 0;
    for (std::uint64_t master = 0; master < 10; ++master) {
      double full =
          lloyd_2means(PointsView(src.data), lloyd, derive_seed(master, 0xF0))
              .cost;

      std::vector<double> rivals;
      std::uint64_t cs_seed = derive_seed(master, 0xC0);
      WeightedPointSet cs =
          build_coreset(src.data, src.m, CoresetVariant::Bfl16, cs_seed);
      LloydResult cs_fit = lloyd_2means(cs, lloyd, derive_seed(cs_seed, 0x11));
      rivals.push_back(weighted_cost(PointsView(src.data), cs_fit.model));

      std::uint64_t us_seed = derive_seed(master, 0x77);
      WeightedPointSet us = uniform_sample(src.data, src.m, us_seed);
      LloydResult us_fit = lloyd_2means(us, lloyd, derive_seed(us_seed, 0x11));
      rivals.push_back(weighted_cost(PointsView(src.data), us_fit.model));

      for (TaylorOrder order : orders)
        rivals.push_back(qaoa_bound(src.data, cs, order).full_cost);

      bool seed_ok = true;
      for (double rival : rivals) seed_ok = seed_ok && full <= rival * kSlack;
      if (seed_ok) ++good_seeds;
    }
    all_ok = all_ok && good_seeds >= 9;
    if (!detail.empty()) detail += ", ";
    detail += src.name + " " + std::to_string(good_seeds) + "/10";
  }

  report(10, all_ok,
         "full-data clustering lower-bounds every summary and exhaustive "
         "reference record (" +
             detail + " seeds clean)");
}

void criterion11_weight_unbiasedness() {
  constexpr double kRelTol = 0.05;

  DataSet data = load_csv("fixtures/blobs200.csv");
  double n = double(data.size());
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    sum += build_coreset(data, 10, CoresetVariant::Bfl16, seed).total_weight();
  double mean = sum / 1000.0;

  bool ok = std::abs(mean - n) <= kRelTol * n;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "coreset weight totals are unbiased for the source size "
                "(mean %.2f vs %d over 1000 seeds)",
                mean, int(n));
  report(11, ok, buf);
}

}  // namespace

int main() {
  criterion1_scatter_identity();
  criterion2_reduction_equivalence();
  criterion3_order0_ordering();
  criterion4_order1_fidelity();
  criterion5_series_anchors();
  criterion6_cnot_budget();
  criterion7_network_equivalence();
  criterion8_sampling_sanity();
  criterion9_coreset_advantage();
  criterion10_full_data_baseline();
  criterion11_weight_unbiasedness();

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
