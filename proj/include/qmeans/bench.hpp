#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmeans/coreset.hpp"
#include "qmeans/dataio.hpp"
#include "qmeans/hamiltonian.hpp"
#include "qmeans/qaoa.hpp"

namespace qmeans {

// Full benchmark grid: data source, summary sizes, summarization methods,
// truncation orders for the exhaustive reference bounds, and repeat count.
struct ExperimentConfig {
  // Exactly one source: a CSV path, or a synthetic generator spec.
  std::string csv_path;
  std::optional<SyntheticSpec> synthetic;

  std::vector<std::size_t> m_list = {5, 10, 15, 20};
  std::vector<std::string> methods = {"full_kmeans", "uniform", "coreset"};
  std::vector<TaylorOrder> orders = {TaylorOrder::finite(0),
                                     TaylorOrder::finite(1),
                                     TaylorOrder::finite(2),
                                     TaylorOrder::infinite()};
  // Exhaustive bounds cost 2^m table scans, so they only run for summary
  // sizes in this allow list.
  std::vector<std::size_t> bound_m_allowed = {5, 10};

  int repeats = 10;
  enum class Report { Best, MeanMinMax } report = Report::Best;
  std::uint64_t seed = 0;
  CoresetVariant variant = CoresetVariant::Bfl16;
  LloydOptions lloyd;

  void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);

// One pipeline outcome (long format: one row per repeat, plus one row per
// bound cell).
struct ResultRecord {
  std::string method;  // full_kmeans | uniform | coreset | bound
  std::size_t m = 0;
  std::optional<TaylorOrder> order;  // bound rows only
  double full_data_cost = 0.0;
  std::optional<double> summary_cost;     // objective on the summary itself
  std::optional<std::string> partition;   // when the summary fits in 64 bits
  std::uint64_t seed = 0;
  int repeat = 0;
  double wall_seconds = 0.0;
};

struct BenchOutput {
  std::vector<ResultRecord> records;
  nlohmann::json manifest;
};

// Seed for one grid cell repeat: the label "<method>/m=<m>[/order=<o>]/rep=<r>"
// is FNV-1a hashed into a stream index for derive_seed(config seed, .).
std::uint64_t record_seed(std::uint64_t master, const std::string& method,
                          std::size_t m, const std::optional<TaylorOrder>& order,
                          int repeat);

// Run the classical grid: every method at every summary size for `repeats`
// seeds, then exhaustive reference bounds at each allowed size for every
// truncation order. Bounds use the best coreset (lowest full-data cost)
// among that size's repeats. Deterministic given the config.
BenchOutput run_pipeline(const ExperimentConfig& cfg);

void write_results_csv(const std::vector<ResultRecord>& records,
                       const std::string& path);

// Aggregates records into the manifest layout written next to the CSV:
// per-cell statistics under the configured reporting mode plus the echoed
// config. Cell count is |methods| * |m_list| + |orders| * |allowed sizes|.
nlohmann::json build_manifest(const ExperimentConfig& cfg,
                              const std::vector<ResultRecord>& records);

// One end-to-end quantum-side run at a single summary size: best coreset,
// pairwise objective, angle optimization, measurement, and the compiled
// circuit's gate budget.
struct QaoaRunResult {
  ResultRecord record;           // method "qaoa", cost of the modal outcome
  QaoaParams params;             // optimized angles (betas reduced mod pi)
  double expectation_value = 0.0;
  std::uint64_t modal = 0;
  bool modal_is_optimal = false;  // modal outcome attains the exhaustive max
  long cnot_count = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;
};

QaoaRunResult run_qaoa_experiment(const ExperimentConfig& cfg, std::size_t m,
                                  int p, int restarts, std::uint64_t shots);

}  // namespace qmeans
