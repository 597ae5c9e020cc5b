#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qmeans/coreset.hpp"
#include "qmeans/dataio.hpp"
#include "qmeans/rng.hpp"
#include "qmeans/serialize.hpp"
#include "qmeans/vecmath.hpp"

using namespace qmeans;

namespace {

DataSet blobs() { return load_csv("fixtures/blobs200.csv"); }

DataSet identical_points(std::size_t n) {
  DataSet data(2);
  std::vector<double> p{3.0, -1.0};
  for (std::size_t i = 0; i < n; ++i) data.append(p);
  return data;
}

}  // namespace

TEST_CASE("d2 sampling covers spread data and reports its cost") {
  DataSet data = blobs();
  Bicriterion bic = d2_sample(data, 4, 5);
  REQUIRE(bic.count() == 4);
  REQUIRE(bic.dim == 2);
  CHECK(bic.cost > 0.0);

  // Cost must equal the sum of min squared distances to the chosen centers.
  double expect = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double best = sqdist(data.point(i), bic.center(0));
    for (std::size_t c = 1; c < 4; ++c)
      best = std::min(best, sqdist(data.point(i), bic.center(c)));
    expect += best;
  }
  CHECK(bic.cost == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("best bicriterion never loses to its own first trial") {
  DataSet data = blobs();
  Bicriterion single = d2_sample(data, 4, derive_seed(9, 0));
  Bicriterion best = best_bicriterion(data, 10, 9);
  CHECK(best.cost <= single.cost);
}

TEST_CASE("sensitivity probabilities form a distribution") {
  DataSet data = blobs();
  Bicriterion bic = best_bicriterion(data, 10, 1);
  for (CoresetVariant variant :
       {CoresetVariant::Blk17, CoresetVariant::Bfl16}) {
    std::vector<double> p = sensitivity_probabilities(data, bic, variant);
    REQUIRE(p.size() == data.size());
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(*std::min_element(p.begin(), p.end()) > 0.0);
  }
}

TEST_CASE("variants weight the same structure differently") {
  DataSet data = blobs();
  Bicriterion bic = best_bicriterion(data, 10, 1);
  std::vector<double> a =
      sensitivity_probabilities(data, bic, CoresetVariant::Blk17);
  std::vector<double> b =
      sensitivity_probabilities(data, bic, CoresetVariant::Bfl16);
  double max_gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    max_gap = std::max(max_gap, std::abs(a[i] - b[i]));
  CHECK(max_gap > 0.0);
}

TEST_CASE("degenerate data falls back to uniform probabilities") {
  DataSet data = identical_points(40);
  Bicriterion bic = d2_sample(data, 4, 0);
  std::vector<double> p =
      sensitivity_probabilities(data, bic, CoresetVariant::Bfl16);
  for (double v : p) CHECK(v == 1.0 / 40.0);
}

TEST_CASE("coreset of identical points has exact uniform weights") {
  DataSet data = identical_points(40);
  WeightedPointSet pts = build_coreset(data, 5, CoresetVariant::Bfl16, 2);
  REQUIRE(pts.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(pts.weight(i) == 8.0);
  CHECK(pts.total_weight() == 40.0);
  CHECK(pts.source_n() == 40);
  CHECK(pts.method() == SummaryMethod::CoresetBfl16);
}

TEST_CASE("coreset weights follow the importance rule") {
  DataSet data = blobs();
  std::uint64_t seed = 31;
  WeightedPointSet pts = build_coreset(data, 12, CoresetVariant::Blk17, seed);
  REQUIRE(pts.size() == 12);

  // Reconstruct the sampling distribution with the same derived seed and
  // check each stored weight is 1/(m p_i) for some source point i.
  Bicriterion bic = best_bicriterion(data, kBicriterionTrials,
                                     derive_seed(seed, 0));
  std::vector<double> p =
      sensitivity_probabilities(data, bic, CoresetVariant::Blk17);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    bool matched = false;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (sqdist(pts.point(j), data.point(i)) == 0.0 &&
          pts.weight(j) == 1.0 / (12.0 * p[i])) {
        matched = true;
        break;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("coreset weight totals are unbiased estimates of n") {
  DataSet data = blobs();
  double mean_total = 0.0;
  const int n_seeds = 300;
  for (int s = 0; s < n_seeds; ++s) {
    WeightedPointSet pts =
        build_coreset(data, 10, CoresetVariant::Bfl16, 1000 + s);
    mean_total += pts.total_weight();
  }
  mean_total /= n_seeds;
  CHECK(std::abs(mean_total - 200.0) / 200.0 < 0.10);
}

TEST_CASE("uniform sample without replacement") {
  DataSet data = blobs();
  WeightedPointSet pts = uniform_sample(data, 200, 4);
  REQUIRE(pts.size() == 200);
  for (std::size_t i = 0; i < 200; ++i) CHECK(pts.weight(i) == 1.0);

  // m = n must yield every point exactly once.
  std::vector<std::size_t> hit(200, 0);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (sqdist(pts.point(j), data.point(i)) == 0.0) {
        ++hit[i];
        break;
      }
    }
  }
  CHECK(std::count(hit.begin(), hit.end(), 1) == 200);

  WeightedPointSet small = uniform_sample(data, 8, 4);
  for (std::size_t i = 0; i < 8; ++i) CHECK(small.weight(i) == 25.0);
}

TEST_CASE("summary construction is seed deterministic") {
  DataSet data = blobs();
  WeightedPointSet a = build_coreset(data, 10, CoresetVariant::Bfl16, 6);
  WeightedPointSet b = build_coreset(data, 10, CoresetVariant::Bfl16, 6);
  WeightedPointSet c = build_coreset(data, 10, CoresetVariant::Bfl16, 7);
  REQUIRE(a.size() == b.size());
  bool same = true, all_same_c = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.weight(i) != b.weight(i) ||
        sqdist(a.point(i), b.point(i)) != 0.0)
      same = false;
    if (a.weight(i) != c.weight(i) ||
        sqdist(a.point(i), c.point(i)) != 0.0)
      all_same_c = false;
  }
  CHECK(same);
  CHECK_FALSE(all_same_c);
}

TEST_CASE("size preconditions") {
  DataSet data = blobs();
  CHECK_THROWS(build_coreset(data, 1, CoresetVariant::Bfl16, 0));
  CHECK_THROWS(build_coreset(data, 201, CoresetVariant::Bfl16, 0));
  CHECK_THROWS(uniform_sample(data, 1, 0));
  CHECK_THROWS(uniform_sample(data, 201, 0));
}

TEST_CASE("weighted point set rejects bad appends") {
  WeightedPointSet pts(2, SummaryMethod::Uniform, 0, 10);
  std::vector<double> p{1.0, 2.0};
  pts.append(p, 1.5);
  CHECK_THROWS(pts.append(p, 0.0));
  CHECK_THROWS(pts.append(p, -1.0));
  std::vector<double> wrong{1.0};
  CHECK_THROWS(pts.append(wrong, 1.0));
}

TEST_CASE("summary json round trip") {
  DataSet data = blobs();
  WeightedPointSet pts = build_coreset(data, 9, CoresetVariant::Blk17, 13);
  nlohmann::json j = to_json(pts);
  CHECK(j.at("method") == "coreset_blk17");
  CHECK(j.at("source_n") == 200);
  CHECK(j.at("seed") == 13);

  WeightedPointSet back = weighted_point_set_from_json(j);
  REQUIRE(back.size() == pts.size());
  REQUIRE(back.dim() == pts.dim());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(back.weight(i) == pts.weight(i));
    CHECK(sqdist(back.point(i), pts.point(i)) == 0.0);
  }
  CHECK(back.method() == pts.method());
  CHECK(back.seed() == pts.seed());
  CHECK(back.source_n() == pts.source_n());

  nlohmann::json bad = j;
  bad["weights"] = std::vector<double>{1.0};
  CHECK_THROWS(weighted_point_set_from_json(bad));
}
