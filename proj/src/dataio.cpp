#include "qmeans/dataio.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmeans/rng.hpp"

namespace qmeans {

DataSet::DataSet(std::size_t dim, std::string name)
    : dim_(dim), name_(std::move(name)) {
  if (dim == 0) throw std::invalid_argument("DataSet: dim must be positive");
}

void DataSet::append(std::span<const double> point) {
  if (dim_ == 0) dim_ = point.size();
  if (point.size() != dim_)
    throw std::invalid_argument("DataSet::append: dimension mismatch");
  for (double v : point) {
    if (!std::isfinite(v))
      throw std::invalid_argument("DataSet::append: non-finite coordinate");
  }
  data_.insert(data_.end(), point.begin(), point.end());
  ++count_;
}

std::span<const double> DataSet::point(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("DataSet::point: index");
  return {data_.data() + i * dim_, dim_};
}

void SyntheticSpec::validate() const {
  if (n_total == 0) throw std::invalid_argument("synthetic: n_total == 0");
  if (dim == 0) throw std::invalid_argument("synthetic: dim == 0");
  if (rare_total() > n_total)
    throw std::invalid_argument(
        "synthetic: rare points exceed n_total (" +
        std::to_string(rare_total()) + " > " + std::to_string(n_total) + ")");
  if (!(cluster_spread >= 0.0) || !std::isfinite(cluster_spread))
    throw std::invalid_argument("synthetic: bad cluster_spread");
  if (!(center_scale >= 0.0) || !std::isfinite(center_scale))
    throw std::invalid_argument("synthetic: bad center_scale");
}

namespace {

// One CSV field -> double. std::from_chars accepts exactly the formats we
// write, with no locale surprises.
double parse_field(std::string_view field, std::size_t row) {
  std::size_t b = 0, e = field.size();
  while (b < e && std::isspace(static_cast<unsigned char>(field[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(field[e - 1]))) --e;
  if (b == e) throw CsvError(row, "empty field");
  double value = 0.0;
  const char* first = field.data() + b;
  const char* last = field.data() + e;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw CsvError(row, "not a number: '" + std::string(field.substr(b, e - b)) + "'");
  if (!std::isfinite(value)) throw CsvError(row, "non-finite value");
  return value;
}

}  // namespace

DataSet load_csv(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw CsvError(0, "cannot open '" + path + "'");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  std::size_t first_row = has_header ? 1 : 0;
  if (lines.size() <= first_row) throw CsvError(0, "no data rows");

  DataSet out;
  std::vector<double> point;
  for (std::size_t r = first_row; r < lines.size(); ++r) {
    std::size_t row_no = r + 1;  // 1-based, counting the header if present
    const std::string& text = lines[r];
    if (text.empty()) throw CsvError(row_no, "empty row");

    point.clear();
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = text.find(',', start);
      std::string_view field(text.data() + start,
                             (comma == std::string::npos ? text.size() : comma) - start);
      point.push_back(parse_field(field, row_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }

    if (out.size() > 0 && point.size() != out.dim())
      throw CsvError(row_no, "expected " + std::to_string(out.dim()) +
                                 " fields, got " + std::to_string(point.size()));
    out.append(point);
  }
  out.set_name(path);
  return out;
}

void write_csv(const DataSet& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
  char buf[64];
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto p = data.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", p[k]);
      if (k) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for '" + path + "'");
}

DataSet generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  // Majority center is drawn after the rare ones, index n_rare_clusters.
  std::size_t n_centers = spec.n_rare_clusters + 1;
  std::vector<double> centers(n_centers * spec.dim);
  for (double& c : centers) c = rng.uniform(-spec.center_scale, spec.center_scale);

  DataSet out(spec.dim, "synthetic");
  std::vector<double> point(spec.dim);
  auto emit = [&](std::size_t center_idx) {
    const double* c = centers.data() + center_idx * spec.dim;
    for (std::size_t k = 0; k < spec.dim; ++k)
      point[k] = c[k] + spec.cluster_spread * rng.normal();
    out.append(point);
  };

  for (std::size_t r = 0; r < spec.n_rare_clusters; ++r)
    for (std::size_t j = 0; j < spec.points_per_rare_cluster; ++j) emit(r);
  std::size_t n_major = spec.n_total - spec.rare_total();
  for (std::size_t j = 0; j < n_major; ++j) emit(spec.n_rare_clusters);
  return out;
}

}  // namespace qmeans
