#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmeans {

// CSV problem with the 1-based line number it was found on (0 = whole file).
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t row, const std::string& what)
      : std::runtime_error("csv row " + std::to_string(row) + ": " + what),
        row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// Dense row-major point set. All rows share one dimension and every
// coordinate is finite; append() enforces both.
class DataSet {
 public:
  DataSet() = default;
  explicit DataSet(std::size_t dim, std::string name = "");

  void append(std::span<const double> point);

  std::size_t size() const noexcept { return count_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return count_ == 0; }

  std::span<const double> point(std::size_t i) const;
  std::span<const double> flat() const noexcept { return data_; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> data_;
  std::string name_;
};

// Gaussian mixture with a handful of small far-flung clusters plus one large
// majority cluster, the regime where uniform subsampling misses structure.
struct SyntheticSpec {
  std::size_t n_total = 4000;
  std::size_t dim = 16;
  std::size_t n_rare_clusters = 10;
  std::size_t points_per_rare_cluster = 5;
  double cluster_spread = 1.0;
  double center_scale = 100.0;
  std::uint64_t seed = 0;

  std::size_t rare_total() const {
    return n_rare_clusters * points_per_rare_cluster;
  }
  void validate() const;
};

// Numeric CSV, one point per row. Rows must agree on field count; any parse
// failure carries the offending line number.
DataSet load_csv(const std::string& path, bool has_header = false);

// Round-trip safe: coordinates are written with 17 significant digits.
void write_csv(const DataSet& data, const std::string& path);

// Rare clusters are laid down first (grouped, points_per_rare_cluster each),
// then the majority cluster, so row ranges identify ground-truth membership.
// Cluster centers are uniform in [-center_scale, center_scale]^dim and points
// are isotropic Gaussian around their center with cluster_spread stddev.
DataSet generate_synthetic(const SyntheticSpec& spec);

}  // namespace qmeans
