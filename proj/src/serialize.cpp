#include "qmeans/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace qmeans {

nlohmann::json to_json(const WeightedPointSet& pts) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto p = pts.point(i);
    points.push_back(std::vector<double>(p.begin(), p.end()));
  }
  nlohmann::json weights = nlohmann::json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) weights.push_back(pts.weight(i));
  return {{"points", std::move(points)},
          {"weights", std::move(weights)},
          {"source_n", pts.source_n()},
          {"method", to_string(pts.method())},
          {"seed", pts.seed()}};
}

WeightedPointSet weighted_point_set_from_json(const nlohmann::json& j) {
  const auto& points = j.at("points");
  const auto& weights = j.at("weights");
  if (points.size() != weights.size())
    throw std::invalid_argument("summary json: points/weights length mismatch");
  if (points.empty())
    throw std::invalid_argument("summary json: no points");

  std::size_t dim = points.front().size();
  WeightedPointSet out(dim, summary_method_from_string(j.at("method")),
                       j.at("seed").get<std::uint64_t>(),
                       j.at("source_n").get<std::size_t>());
  std::vector<double> buf;
  for (std::size_t i = 0; i < points.size(); ++i) {
    buf = points[i].get<std::vector<double>>();
    out.append(buf, weights[i].get<double>());
  }
  return out;
}

nlohmann::json to_json(const IsingPolynomial& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [support, coeff] : h.term_map())
    terms.push_back({{"coeff", coeff}, {"support", support}});
  return {{"m", h.qubit_count()},
          {"offset", h.offset()},
          {"terms", std::move(terms)}};
}

IsingPolynomial ising_from_json(const nlohmann::json& j) {
  IsingPolynomial h(j.at("m").get<int>(), j.at("offset").get<double>());
  for (const auto& term : j.at("terms"))
    h.add_term(term.at("coeff").get<double>(),
               term.at("support").get<std::vector<int>>());
  return h;
}

nlohmann::json to_json(const QaoaParams& params) {
  return {{"p", params.depth()},
          {"gammas", params.gammas},
          {"betas", params.betas}};
}

QaoaParams qaoa_params_from_json(const nlohmann::json& j) {
  QaoaParams params;
  params.gammas = j.at("gammas").get<std::vector<double>>();
  params.betas = j.at("betas").get<std::vector<double>>();
  if (j.contains("p") &&
      j.at("p").get<int>() != params.depth())
    throw std::invalid_argument("angles json: p does not match gamma count");
  params.validate();
  return params;
}

nlohmann::json to_json(const SyntheticSpec& spec) {
  return {{"n_total", spec.n_total},
          {"dim", spec.dim},
          {"n_rare_clusters", spec.n_rare_clusters},
          {"points_per_rare_cluster", spec.points_per_rare_cluster},
          {"cluster_spread", spec.cluster_spread},
          {"center_scale", spec.center_scale},
          {"seed", spec.seed}};
}

SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j) {
  SyntheticSpec spec;  // absent keys keep their defaults
  if (j.contains("n_total")) spec.n_total = j.at("n_total").get<std::size_t>();
  if (j.contains("dim")) spec.dim = j.at("dim").get<std::size_t>();
  if (j.contains("n_rare_clusters"))
    spec.n_rare_clusters = j.at("n_rare_clusters").get<std::size_t>();
  if (j.contains("points_per_rare_cluster"))
    spec.points_per_rare_cluster =
        j.at("points_per_rare_cluster").get<std::size_t>();
  if (j.contains("cluster_spread"))
    spec.cluster_spread = j.at("cluster_spread").get<double>();
  if (j.contains("center_scale"))
    spec.center_scale = j.at("center_scale").get<double>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  spec.validate();
  return spec;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return nlohmann::json::parse(in);
}

void save_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace qmeans
