#include "qmeans/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "qmeans/circuit.hpp"
#include "qmeans/clustering.hpp"
#include "qmeans/rng.hpp"
#include "qmeans/serialize.hpp"
#include "qmeans/solver.hpp"

namespace qmeans {

void ExperimentConfig::validate() const {
  if (csv_path.empty() == !synthetic.has_value())
    throw std::invalid_argument(
        "experiment config: exactly one of csv/synthetic");
  if (m_list.empty()) throw std::invalid_argument("experiment config: empty m_list");
  for (std::size_t m : m_list)
    if (m < 2)
      throw std::invalid_argument("experiment config: summary size m < 2");
  for (std::size_t m : bound_m_allowed)
    if (m > 24)
      throw std::invalid_argument(
          "experiment config: bound size m > 24 exceeds the table limit");
  if (methods.empty()) throw std::invalid_argument("experiment config: no methods");
  for (const std::string& method : methods) {
    if (method != "full_kmeans" && method != "uniform" && method != "coreset")
      throw std::invalid_argument("experiment config: unknown method '" +
                                  method + "'");
  }
  if (repeats < 1) throw std::invalid_argument("experiment config: repeats < 1");
  if (synthetic) synthetic->validate();
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  const auto& data = j.at("data");
  if (data.contains("csv")) cfg.csv_path = data.at("csv").get<std::string>();
  if (data.contains("synthetic"))
    cfg.synthetic = synthetic_spec_from_json(data.at("synthetic"));

  if (j.contains("m_list"))
    cfg.m_list = j.at("m_list").get<std::vector<std::size_t>>();
  if (j.contains("methods"))
    cfg.methods = j.at("methods").get<std::vector<std::string>>();
  if (j.contains("orders")) {
    cfg.orders.clear();
    for (const auto& o : j.at("orders")) {
      if (o.is_number_integer())
        cfg.orders.push_back(TaylorOrder::finite(o.get<int>()));
      else
        cfg.orders.push_back(TaylorOrder::from_string(o.get<std::string>()));
    }
  }
  if (j.contains("bound_m_allowed"))
    cfg.bound_m_allowed =
        j.at("bound_m_allowed").get<std::vector<std::size_t>>();
  if (j.contains("repeats")) cfg.repeats = j.at("repeats").get<int>();
  if (j.contains("report")) {
    std::string r = j.at("report").get<std::string>();
    if (r == "best")
      cfg.report = ExperimentConfig::Report::Best;
    else if (r == "mean_min_max")
      cfg.report = ExperimentConfig::Report::MeanMinMax;
    else
      throw std::invalid_argument("experiment config: unknown report '" + r + "'");
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("variant"))
    cfg.variant = coreset_variant_from_string(j.at("variant").get<std::string>());
  if (j.contains("lloyd")) {
    const auto& l = j.at("lloyd");
    if (l.contains("trials")) cfg.lloyd.trials = l.at("trials").get<int>();
    if (l.contains("max_iters")) cfg.lloyd.max_iters = l.at("max_iters").get<int>();
    if (l.contains("rel_tol")) cfg.lloyd.rel_tol = l.at("rel_tol").get<double>();
  }
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json data;
  if (!cfg.csv_path.empty()) data["csv"] = cfg.csv_path;
  if (cfg.synthetic) data["synthetic"] = to_json(*cfg.synthetic);

  nlohmann::json orders = nlohmann::json::array();
  for (TaylorOrder o : cfg.orders) {
    if (o.is_infinite())
      orders.push_back("inf");
    else
      orders.push_back(o.value());
  }
  return {{"data", std::move(data)},
          {"m_list", cfg.m_list},
          {"methods", cfg.methods},
          {"orders", std::move(orders)},
          {"bound_m_allowed", cfg.bound_m_allowed},
          {"repeats", cfg.repeats},
          {"report",
           cfg.report == ExperimentConfig::Report::Best ? "best" : "mean_min_max"},
          {"seed", cfg.seed},
          {"variant", to_string(cfg.variant)},
          {"lloyd",
           {{"trials", cfg.lloyd.trials},
            {"max_iters", cfg.lloyd.max_iters},
            {"rel_tol", cfg.lloyd.rel_tol}}}};
}

std::uint64_t record_seed(std::uint64_t master, const std::string& method,
                          std::size_t m,
                          const std::optional<TaylorOrder>& order, int repeat) {
  std::string label = method + "/m=" + std::to_string(m);
  if (order) label += "/order=" + order->to_string();
  label += "/rep=" + std::to_string(repeat);
  return derive_seed(master, fnv1a64(label));
}

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

DataSet load_source(const ExperimentConfig& cfg) {
  if (!cfg.csv_path.empty()) return load_csv(cfg.csv_path);
  return generate_synthetic(*cfg.synthetic);
}

// Builds the coreset for one (m, repeat) cell, reproducing the exact seeds
// of the "coreset" method rows so bound rows line up with them.
WeightedPointSet cell_coreset(const ExperimentConfig& cfg, const DataSet& data,
                              std::size_t m, int repeat) {
  std::uint64_t seed = record_seed(cfg.seed, "coreset", m, std::nullopt, repeat);
  return build_coreset(data, m, cfg.variant, seed);
}

struct ScoredCoreset {
  WeightedPointSet pts;
  double full_cost = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  int repeat = 0;
};

// Best coreset across a cell's repeats, scored by the full-data cost of its
// Lloyd solution. Recomputed rather than cached: cheap at these sizes and
// keeps bound rows independent of which methods ran.
ScoredCoreset best_coreset(const ExperimentConfig& cfg, const DataSet& data,
                           std::size_t m) {
  ScoredCoreset best;
  for (int rep = 0; rep < cfg.repeats; ++rep) {
    WeightedPointSet pts = cell_coreset(cfg, data, m, rep);
    std::uint64_t seed = pts.seed();
    LloydResult lr = lloyd_2means(pts, cfg.lloyd, derive_seed(seed, 0x11));
    double cost = weighted_cost(PointsView(data), lr.model);
    if (cost < best.full_cost) {
      best.pts = std::move(pts);
      best.full_cost = cost;
      best.seed = seed;
      best.repeat = rep;
    }
  }
  return best;
}

}  // namespace

BenchOutput run_pipeline(const ExperimentConfig& cfg) {
  cfg.validate();
  DataSet data = load_source(cfg);

  BenchOutput out;
  for (std::size_t m : cfg.m_list) {
    for (const std::string& method : cfg.methods) {
      for (int rep = 0; rep < cfg.repeats; ++rep) {
        std::uint64_t seed = record_seed(cfg.seed, method, m, std::nullopt, rep);
        double t0 = now_seconds();

        ResultRecord rec;
        rec.method = method;
        rec.m = m;
        rec.seed = seed;
        rec.repeat = rep;

        if (method == "full_kmeans") {
          LloydResult lr = lloyd_2means(PointsView(data), cfg.lloyd, seed);
          rec.full_data_cost = lr.cost;
        } else {
          WeightedPointSet pts =
              method == "uniform" ? uniform_sample(data, m, seed)
                                  : build_coreset(data, m, cfg.variant, seed);
          LloydResult lr =
              lloyd_2means(pts, cfg.lloyd, derive_seed(seed, 0x11));
          rec.full_data_cost = weighted_cost(PointsView(data), lr.model);
          rec.summary_cost = lr.cost;
          if (lr.partition) rec.partition = lr.partition->to_string();
        }

        rec.wall_seconds = now_seconds() - t0;
        out.records.push_back(std::move(rec));
      }
    }
  }

  // Exhaustive reference bounds on the best coreset of each allowed size.
  for (std::size_t m : cfg.m_list) {
    if (std::find(cfg.bound_m_allowed.begin(), cfg.bound_m_allowed.end(), m) ==
        cfg.bound_m_allowed.end())
      continue;
    ScoredCoreset sc = best_coreset(cfg, data, m);
    for (TaylorOrder order : cfg.orders) {
      double t0 = now_seconds();
      QaoaBound bound = qaoa_bound(data, sc.pts, order);

      ResultRecord rec;
      rec.method = "bound";
      rec.m = m;
      rec.order = order;
      rec.full_data_cost = bound.full_cost;
      rec.summary_cost =
          weighted_cost(PointsView(sc.pts), centroids_of(sc.pts, bound.partition));
      rec.partition = bound.partition.to_string();
      rec.seed = sc.seed;
      rec.repeat = sc.repeat;
      rec.wall_seconds = now_seconds() - t0;
      out.records.push_back(std::move(rec));
    }
  }

  out.manifest = build_manifest(cfg, out.records);
  return out;
}

void write_results_csv(const std::vector<ResultRecord>& records,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "method,m,order,repeat,seed,full_data_cost,summary_cost,partition,"
         "wall_seconds\n";
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const ResultRecord& r : records) {
    out << r.method << ',' << r.m << ','
        << (r.order ? r.order->to_string() : "") << ',' << r.repeat << ','
        << r.seed << ',' << fmt(r.full_data_cost) << ','
        << (r.summary_cost ? fmt(*r.summary_cost) : "") << ','
        << (r.partition ? *r.partition : "") << ',' << fmt(r.wall_seconds)
        << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

nlohmann::json build_manifest(const ExperimentConfig& cfg,
                              const std::vector<ResultRecord>& records) {
  nlohmann::json cells = nlohmann::json::array();

  auto aggregate = [&](const std::string& method, std::size_t m,
                       const std::optional<TaylorOrder>& order) {
    std::vector<double> costs;
    for (const ResultRecord& r : records) {
      bool order_match =
          (!order && !r.order) ||
          (order && r.order && order->to_string() == r.order->to_string());
      if (r.method == method && r.m == m && order_match)
        costs.push_back(r.full_data_cost);
    }
    nlohmann::json cell = {{"method", method}, {"m", m}};
    if (order) cell["order"] = order->to_string();
    cell["n_records"] = costs.size();
    if (!costs.empty()) {
      double lo = *std::min_element(costs.begin(), costs.end());
      double hi = *std::max_element(costs.begin(), costs.end());
      if (cfg.report == ExperimentConfig::Report::Best) {
        cell["best_full_data_cost"] = lo;
      } else {
        double sum = 0.0;
        for (double c : costs) sum += c;
        cell["mean_full_data_cost"] = sum / double(costs.size());
        cell["min_full_data_cost"] = lo;
        cell["max_full_data_cost"] = hi;
      }
    }
    cells.push_back(std::move(cell));
  };

  for (std::size_t m : cfg.m_list)
    for (const std::string& method : cfg.methods)
      aggregate(method, m, std::nullopt);
  for (std::size_t m : cfg.m_list) {
    if (std::find(cfg.bound_m_allowed.begin(), cfg.bound_m_allowed.end(), m) ==
        cfg.bound_m_allowed.end())
      continue;
    for (TaylorOrder order : cfg.orders) aggregate("bound", m, order);
  }

  return {{"config", to_json(cfg)}, {"cells", std::move(cells)}};
}

QaoaRunResult run_qaoa_experiment(const ExperimentConfig& cfg, std::size_t m,
                                  int p, int restarts, std::uint64_t shots) {
  cfg.validate();
  if (m > 24) throw std::invalid_argument("run_qaoa_experiment: m > 24");
  DataSet data = load_source(cfg);

  ScoredCoreset sc = best_coreset(cfg, data, m);
  IsingPolynomial h = build_order0(sc.pts);
  std::vector<double> table = energy_table(h);

  std::uint64_t qseed = record_seed(cfg.seed, "qaoa", m, std::nullopt, 0);
  double t0 = now_seconds();
  OptimizeResult opt = optimize(table, p, restarts, qseed);
  StateVector state = prepare(table, opt.params);
  auto hist = sample(state, shots, derive_seed(qseed, 0x5a));
  std::uint64_t modal = modal_bitstring(hist);
  Partition part(modal, static_cast<int>(m));

  BruteForceResult exact = brute_force_max_table(table, static_cast<int>(m),
                                                 /*symmetric=*/true);
  bool optimal = std::binary_search(exact.maximizers.begin(),
                                    exact.maximizers.end(), part);

  GateCircuit circ = compile_swap_network(h, opt.params);

  QaoaRunResult out;
  out.record.method = "qaoa";
  out.record.m = m;
  out.record.full_data_cost = evaluate_on_full(data, sc.pts, part);
  out.record.summary_cost =
      weighted_cost(PointsView(sc.pts), centroids_of(sc.pts, part));
  out.record.partition = part.to_string();
  out.record.seed = qseed;
  out.record.repeat = sc.repeat;
  out.record.wall_seconds = now_seconds() - t0;
  out.params = opt.params;
  out.expectation_value = opt.value;
  out.modal = modal;
  out.modal_is_optimal = optimal;
  out.cnot_count = count_gates(circ).cnot;
  out.histogram = std::move(hist);
  return out;
}

}  // namespace qmeans
