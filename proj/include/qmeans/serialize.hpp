#pragma once

#include <string>

#include <json.hpp>

#include "qmeans/coreset.hpp"
#include "qmeans/dataio.hpp"
#include "qmeans/hamiltonian.hpp"
#include "qmeans/qaoa.hpp"

namespace qmeans {

// JSON layouts are stable interchange formats:
//   summary:    {"points": [[..]..], "weights": [..], "source_n": n,
//                "method": "uniform|coreset_blk17|coreset_bfl16", "seed": s}
//   polynomial: {"m": m, "offset": x,
//                "terms": [{"coeff": c, "support": [i, ..]}, ..]}
//   angles:     {"p": p, "gammas": [..], "betas": [..]}

nlohmann::json to_json(const WeightedPointSet& pts);
WeightedPointSet weighted_point_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IsingPolynomial& h);
IsingPolynomial ising_from_json(const nlohmann::json& j);

nlohmann::json to_json(const QaoaParams& params);
QaoaParams qaoa_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);

// File helpers; parse errors surface as nlohmann exceptions, open failures
// as std::runtime_error.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace qmeans
