// Command-line front end: data generation, summarization, clustering, spin
// polynomial construction, exhaustive solving, the simulated quantum loop,
// circuit compilation, and the benchmark grid.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qmeans/bench.hpp"
#include "qmeans/circuit.hpp"
#include "qmeans/clustering.hpp"
#include "qmeans/coreset.hpp"
#include "qmeans/dataio.hpp"
#include "qmeans/hamiltonian.hpp"
#include "qmeans/qaoa.hpp"
#include "qmeans/rng.hpp"
#include "qmeans/serialize.hpp"
#include "qmeans/solver.hpp"

namespace {

using namespace qmeans;

struct DataGenArgs {
  std::string out;
  SyntheticSpec spec;
};

void cmd_data_gen(const DataGenArgs& a) {
  DataSet data = generate_synthetic(a.spec);
  write_csv(data, a.out);
  std::printf("wrote %zu points (dim %zu) to %s\n", data.size(), data.dim(),
              a.out.c_str());
}

void cmd_data_validate(const std::string& path, bool has_header) {
  DataSet data = load_csv(path, has_header);
  std::printf("ok: %zu points, dim %zu\n", data.size(), data.dim());
}

struct CoresetArgs {
  std::string data_path;
  std::string out;
  std::size_t m = 10;
  std::string method = "coreset";
  std::string variant = "bfl16";
  std::uint64_t seed = 0;
  bool has_header = false;
};

void cmd_coreset_build(const CoresetArgs& a) {
  DataSet data = load_csv(a.data_path, a.has_header);
  WeightedPointSet pts;
  if (a.method == "uniform") {
    pts = uniform_sample(data, a.m, a.seed);
  } else if (a.method == "coreset") {
    pts = build_coreset(data, a.m, coreset_variant_from_string(a.variant),
                        a.seed);
  } else {
    throw CLI::ValidationError("--method must be coreset or uniform");
  }
  save_json_file(to_json(pts), a.out);
  std::printf("wrote %zu-point %s summary of %zu points to %s\n", pts.size(),
              to_string(pts.method()).c_str(), pts.source_n(), a.out.c_str());
}

struct ClusterArgs {
  std::string summary_path;
  std::string data_path;
  std::string full_data_path;
  LloydOptions lloyd;
  std::uint64_t seed = 0;
  bool has_header = false;
};

void cmd_cluster_run(const ClusterArgs& a) {
  std::optional<WeightedPointSet> summary;
  std::optional<DataSet> raw;
  if (!a.summary_path.empty())
    summary = weighted_point_set_from_json(load_json_file(a.summary_path));
  else
    raw = load_csv(a.data_path, a.has_header);

  LloydResult lr = summary
                       ? lloyd_2means(PointsView(*summary), a.lloyd, a.seed)
                       : lloyd_2means(PointsView(*raw), a.lloyd, a.seed);
  std::printf("cost %.17g after %d iterations (%d restarts)\n", lr.cost,
              lr.iterations, a.lloyd.trials);
  if (lr.partition)
    std::printf("partition %s\n", lr.partition->to_string().c_str());

  if (!a.full_data_path.empty()) {
    DataSet full = load_csv(a.full_data_path, a.has_header);
    double cost = weighted_cost(PointsView(full), lr.model);
    std::printf("full-data cost %.17g\n", cost);
  }
}

struct HamArgs {
  std::string summary_path;
  std::string out;
  int order = 0;
};

void cmd_ham_build(const HamArgs& a) {
  WeightedPointSet pts =
      weighted_point_set_from_json(load_json_file(a.summary_path));
  IsingPolynomial h = a.order == 0 ? build_order0(pts) : build_order1(pts);
  save_json_file(to_json(h), a.out);
  std::printf("wrote order-%d polynomial: %d spins, %zu terms, offset %.17g\n",
              a.order, h.qubit_count(), h.term_count(), h.offset());
}

struct SolveArgs {
  std::string ham_path;
  std::string summary_path;
  std::string order = "inf";
  std::size_t show = 4;
};

void cmd_solve(const SolveArgs& a) {
  BruteForceResult res;
  int m = 0;
  if (!a.ham_path.empty()) {
    IsingPolynomial h = ising_from_json(load_json_file(a.ham_path));
    m = h.qubit_count();
    bool symmetric = true;
    for (const auto& [support, coeff] : h.term_map())
      if (support.size() % 2 != 0) symmetric = false;
    res = brute_force_max_table(energy_table(h), m, symmetric);
  } else {
    WeightedPointSet pts =
        weighted_point_set_from_json(load_json_file(a.summary_path));
    m = static_cast<int>(pts.size());
    TaylorOrder order = TaylorOrder::from_string(a.order);
    res = brute_force_max_table(taylor_energy_table(pts, order), m, true);
  }
  std::printf("max energy %.17g over %d spins, %zu maximizer(s)\n",
              res.best_energy, m, res.maximizers.size());
  for (std::size_t i = 0; i < std::min(a.show, res.maximizers.size()); ++i)
    std::printf("  %s\n", res.maximizers[i].to_string().c_str());
}

struct QaoaArgs {
  std::string ham_path;
  int p = 1;
  int restarts = 20;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  std::string params_out;
  std::size_t show = 4;
};

void cmd_qaoa_run(const QaoaArgs& a) {
  IsingPolynomial h = ising_from_json(load_json_file(a.ham_path));
  std::vector<double> table = energy_table(h);

  OptimizeResult opt = optimize(table, a.p, a.restarts, a.seed);
  std::printf("expectation %.17g after %ld evaluations%s\n", opt.value,
              opt.evaluations, opt.converged ? "" : " (budget hit)");
  for (int j = 0; j < opt.params.depth(); ++j)
    std::printf("  layer %d: gamma %.17g beta %.17g\n", j,
                opt.params.gammas[j], opt.params.betas[j]);

  StateVector state = prepare(table, opt.params);
  auto hist = sample(state, a.shots, derive_seed(a.seed, 0x5a));
  std::uint64_t modal = modal_bitstring(hist);
  Partition part(modal, h.qubit_count());
  std::printf("modal outcome %s (%llu / %llu shots), energy %.17g\n",
              part.to_string().c_str(),
              static_cast<unsigned long long>(hist.at(modal)),
              static_cast<unsigned long long>(a.shots), table[modal]);

  if (!a.params_out.empty()) {
    save_json_file(to_json(opt.params), a.params_out);
    std::printf("wrote angles to %s\n", a.params_out.c_str());
  }
}

struct CircuitArgs {
  std::string ham_path;
  std::string params_path;
  std::vector<double> gammas;
  std::vector<double> betas;
  std::string out;
  bool verify = false;
};

void cmd_circuit_compile(const CircuitArgs& a) {
  IsingPolynomial h = ising_from_json(load_json_file(a.ham_path));
  QaoaParams params;
  if (!a.params_path.empty()) {
    params = qaoa_params_from_json(load_json_file(a.params_path));
  } else {
    params.gammas = a.gammas;
    params.betas = a.betas;
    params.validate();
  }

  GateCircuit circ = compile_swap_network(h, params);
  GateCounts counts = count_gates(circ);
  std::printf("%d qubits, depth %d: %ld CNOT, %ld single-qubit\n", circ.m,
              counts.depth, counts.cnot, counts.single_qubit);

  if (a.verify) {
    double err = verify_equivalence(circ, h, params);
    std::printf("statevector mismatch %.3g\n", err);
  }

  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("cannot open '" + a.out + "' for writing");
  out << export_qasm(circ);
  std::printf("wrote %s\n", a.out.c_str());
}

struct BenchArgs {
  std::string config_path;
  std::string out_dir = ".";
};

void cmd_bench_run(const BenchArgs& a) {
  ExperimentConfig cfg =
      experiment_config_from_json(load_json_file(a.config_path));
  BenchOutput out = run_pipeline(cfg);
  std::filesystem::create_directories(a.out_dir);
  std::string csv = a.out_dir + "/results.csv";
  std::string manifest = a.out_dir + "/manifest.json";
  write_results_csv(out.records, csv);
  save_json_file(out.manifest, manifest);
  std::printf("wrote %zu records to %s and aggregates to %s\n",
              out.records.size(), csv.c_str(), manifest.c_str());
}

struct BenchQaoaArgs {
  std::string config_path;
  std::size_t m = 5;
  int p = 1;
  int restarts = 20;
  std::uint64_t shots = 8192;
};

void cmd_bench_qaoa(const BenchQaoaArgs& a) {
  ExperimentConfig cfg =
      experiment_config_from_json(load_json_file(a.config_path));
  QaoaRunResult res = run_qaoa_experiment(cfg, a.m, a.p, a.restarts, a.shots);
  std::printf("m=%zu p=%d: expectation %.17g\n", a.m, a.p,
              res.expectation_value);
  std::printf("modal outcome %s (%s exhaustive optimum)\n",
              res.record.partition->c_str(),
              res.modal_is_optimal ? "attains" : "misses");
  std::printf("modal full-data cost %.17g, summary cost %.17g\n",
              res.record.full_data_cost, *res.record.summary_cost);
  std::printf("compiled phase+mixer circuit: %ld CNOT\n", res.cnot_count);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-means clustering via coresets, spin polynomials, and "
               "simulated QAOA"};
  app.require_subcommand(1);

  // data
  auto* data = app.add_subcommand("data", "dataset utilities");
  data->require_subcommand(1);

  DataGenArgs gen_args;
  auto* gen = data->add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("--out", gen_args.out, "output CSV path")->required();
  gen->add_option("--n", gen_args.spec.n_total, "total points");
  gen->add_option("--dim", gen_args.spec.dim, "dimension");
  gen->add_option("--rare", gen_args.spec.n_rare_clusters, "rare cluster count");
  gen->add_option("--per-rare", gen_args.spec.points_per_rare_cluster,
                  "points per rare cluster");
  gen->add_option("--spread", gen_args.spec.cluster_spread, "cluster stddev");
  gen->add_option("--scale", gen_args.spec.center_scale, "center box half-width");
  gen->add_option("--seed", gen_args.spec.seed, "generator seed");
  gen->callback([&] { cmd_data_gen(gen_args); });

  std::string validate_path;
  bool validate_header = false;
  auto* validate = data->add_subcommand("validate", "parse and check a CSV");
  validate->add_option("file", validate_path, "CSV path")->required();
  validate->add_flag("--header", validate_header, "skip a header row");
  validate->callback([&] { cmd_data_validate(validate_path, validate_header); });

  // coreset
  auto* coreset = app.add_subcommand("coreset", "weighted summaries");
  coreset->require_subcommand(1);
  CoresetArgs coreset_args;
  auto* cbuild = coreset->add_subcommand("build", "sample a weighted summary");
  cbuild->add_option("--data", coreset_args.data_path, "input CSV")->required();
  cbuild->add_option("--m", coreset_args.m, "summary size")->required();
  cbuild->add_option("--method", coreset_args.method, "coreset or uniform");
  cbuild->add_option("--variant", coreset_args.variant, "blk17 or bfl16");
  cbuild->add_option("--seed", coreset_args.seed, "sampling seed");
  cbuild->add_option("--out", coreset_args.out, "output JSON")->required();
  cbuild->add_flag("--header", coreset_args.has_header, "input has a header row");
  cbuild->callback([&] { cmd_coreset_build(coreset_args); });

  // cluster
  auto* cluster = app.add_subcommand("cluster", "weighted 2-means");
  cluster->require_subcommand(1);
  ClusterArgs cluster_args;
  auto* crun = cluster->add_subcommand("run", "run Lloyd iteration");
  auto* copt_s = crun->add_option("--summary", cluster_args.summary_path,
                                  "summary JSON input");
  crun->add_option("--data", cluster_args.data_path, "raw CSV input")
      ->excludes(copt_s);
  crun->add_option("--full-data", cluster_args.full_data_path,
                   "also score the centers on this CSV");
  crun->add_option("--trials", cluster_args.lloyd.trials, "restarts");
  crun->add_option("--max-iters", cluster_args.lloyd.max_iters, "iteration cap");
  crun->add_option("--rel-tol", cluster_args.lloyd.rel_tol,
                   "relative improvement stop");
  crun->add_option("--seed", cluster_args.seed, "seeding seed");
  crun->add_flag("--header", cluster_args.has_header, "CSV has a header row");
  crun->callback([&] {
    if (cluster_args.summary_path.empty() && cluster_args.data_path.empty())
      throw CLI::RequiredError("--summary or --data");
    cmd_cluster_run(cluster_args);
  });

  // ham
  auto* ham = app.add_subcommand("ham", "spin polynomial construction");
  ham->require_subcommand(1);
  HamArgs ham_args;
  auto* hbuild = ham->add_subcommand("build", "build the clustering objective");
  hbuild->add_option("--summary", ham_args.summary_path, "summary JSON")
      ->required();
  hbuild->add_option("--order", ham_args.order, "truncation order, 0 or 1")
      ->check(CLI::Range(0, 1));
  hbuild->add_option("--out", ham_args.out, "output JSON")->required();
  hbuild->callback([&] { cmd_ham_build(ham_args); });

  // solve
  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "exhaustive maximization");
  auto* sopt_h = solve->add_option("--ham", solve_args.ham_path,
                                   "polynomial JSON input");
  solve->add_option("--summary", solve_args.summary_path,
                    "summary JSON input (with --order)")
      ->excludes(sopt_h);
  solve->add_option("--order", solve_args.order,
                    "truncation order: 0, 1, 2, .. or inf");
  solve->add_option("--show", solve_args.show, "maximizers to print");
  solve->callback([&] {
    if (solve_args.ham_path.empty() && solve_args.summary_path.empty())
      throw CLI::RequiredError("--ham or --summary");
    cmd_solve(solve_args);
  });

  // qaoa
  auto* qaoa = app.add_subcommand("qaoa", "simulated quantum optimization");
  qaoa->require_subcommand(1);
  QaoaArgs qaoa_args;
  auto* qrun = qaoa->add_subcommand("run", "optimize angles and sample");
  qrun->add_option("--ham", qaoa_args.ham_path, "polynomial JSON")->required();
  qrun->add_option("--p", qaoa_args.p, "ansatz depth");
  qrun->add_option("--restarts", qaoa_args.restarts, "optimizer restarts");
  qrun->add_option("--shots", qaoa_args.shots, "measurement shots");
  qrun->add_option("--seed", qaoa_args.seed, "optimizer/sampler seed");
  qrun->add_option("--params-out", qaoa_args.params_out,
                   "write optimized angles JSON here");
  qrun->callback([&] { cmd_qaoa_run(qaoa_args); });

  // circuit
  auto* circuit = app.add_subcommand("circuit", "gate-level compilation");
  circuit->require_subcommand(1);
  CircuitArgs circuit_args;
  auto* ccompile = circuit->add_subcommand("compile",
                                           "compile to a linear-chain circuit");
  ccompile->add_option("--ham", circuit_args.ham_path, "polynomial JSON")
      ->required();
  auto* copt_p = ccompile->add_option("--params", circuit_args.params_path,
                                      "angles JSON");
  ccompile->add_option("--gamma", circuit_args.gammas, "phase angles")
      ->excludes(copt_p);
  ccompile->add_option("--beta", circuit_args.betas, "mixing angles")
      ->excludes(copt_p);
  ccompile->add_option("--out", circuit_args.out, "output QASM path")
      ->required();
  ccompile->add_flag("--verify", circuit_args.verify,
                     "check against the statevector ansatz (m <= 12)");
  ccompile->callback([&] { cmd_circuit_compile(circuit_args); });

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark grids");
  bench->require_subcommand(1);
  BenchArgs bench_args;
  auto* brun = bench->add_subcommand("run", "classical pipeline grid");
  brun->add_option("--config", bench_args.config_path, "config JSON")
      ->required();
  brun->add_option("--out-dir", bench_args.out_dir, "output directory");
  brun->callback([&] { cmd_bench_run(bench_args); });

  BenchQaoaArgs bq_args;
  auto* bqaoa = bench->add_subcommand("qaoa", "single simulated quantum run");
  bqaoa->add_option("--config", bq_args.config_path, "config JSON")->required();
  bqaoa->add_option("--m", bq_args.m, "summary size");
  bqaoa->add_option("--p", bq_args.p, "ansatz depth");
  bqaoa->add_option("--restarts", bq_args.restarts, "optimizer restarts");
  bqaoa->add_option("--shots", bq_args.shots, "measurement shots");
  bqaoa->callback([&] { cmd_bench_qaoa(bq_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
