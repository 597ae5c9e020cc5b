#include "qmeans/solver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

namespace qmeans {

namespace {

void check_m(int m, int limit) {
  if (m < 1) throw std::invalid_argument("brute force: need m >= 1");
  if (m > limit)
    throw std::invalid_argument("brute force: m > " + std::to_string(limit));
}

struct ChunkMax {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> argmax;
};

// Scan table[lo, hi) for its maximum and every index attaining it.
ChunkMax scan_chunk(std::span<const double> table, std::uint64_t lo,
                    std::uint64_t hi) {
  ChunkMax out;
  for (std::uint64_t z = lo; z < hi; ++z) {
    double e = table[z];
    if (e > out.best) {
      out.best = e;
      out.argmax.clear();
      out.argmax.push_back(z);
    } else if (e == out.best) {
      out.argmax.push_back(z);
    }
  }
  return out;
}

BruteForceResult finish(double best, std::vector<std::uint64_t> argmax, int m,
                        bool symmetric) {
  if (symmetric) {
    std::uint64_t mask =
        m == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
    std::size_t half = argmax.size();
    argmax.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i) argmax.push_back(argmax[i] ^ mask);
  }
  std::sort(argmax.begin(), argmax.end());
  argmax.erase(std::unique(argmax.begin(), argmax.end()), argmax.end());

  BruteForceResult res;
  res.best_energy = best;
  res.maximizers.reserve(argmax.size());
  for (std::uint64_t z : argmax) res.maximizers.emplace_back(z, m);
  return res;
}

}  // namespace

BruteForceResult brute_force_max(
    const std::function<double(const Partition&)>& energy, int m,
    bool symmetric) {
  check_m(m, 28);
  std::uint64_t count = std::uint64_t{1} << (symmetric ? m - 1 : m);

  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> argmax;
  for (std::uint64_t z = 0; z < count; ++z) {
    double e = energy(Partition(z, m));
    if (e > best) {
      best = e;
      argmax.clear();
      argmax.push_back(z);
    } else if (e == best) {
      argmax.push_back(z);
    }
  }
  return finish(best, std::move(argmax), m, symmetric);
}

BruteForceResult brute_force_max_table(std::span<const double> table, int m,
                                       bool symmetric) {
  check_m(m, 24);
  if (table.size() != (std::size_t{1} << m))
    throw std::invalid_argument("brute_force_max_table: table size != 2^m");
  std::uint64_t count = std::uint64_t{1} << (symmetric ? m - 1 : m);

  // Fixed chunking, merged in chunk order: identical output for any thread
  // count, including one.
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  std::uint64_t n_chunks = (count + kChunk - 1) / kChunk;
  std::vector<ChunkMax> partial(n_chunks);

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_threads = std::max<std::size_t>(1, std::min<std::uint64_t>(hw, n_chunks));
  if (n_threads <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c)
      partial[c] = scan_chunk(table, c * kChunk, std::min(count, (c + 1) * kChunk));
  } else {
    std::vector<std::thread> pool;
    std::size_t stride = n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t c = t; c < n_chunks; c += stride)
          partial[c] =
              scan_chunk(table, c * kChunk, std::min(count, (c + 1) * kChunk));
      });
    }
    for (auto& th : pool) th.join();
  }

  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> argmax;
  for (const ChunkMax& cm : partial) {
    if (cm.best > best) {
      best = cm.best;
      argmax = cm.argmax;
    } else if (cm.best == best) {
      argmax.insert(argmax.end(), cm.argmax.begin(), cm.argmax.end());
    }
  }
  return finish(best, std::move(argmax), m, symmetric);
}

QaoaBound qaoa_bound(const DataSet& data, const WeightedPointSet& pts,
                     TaylorOrder order) {
  int m = static_cast<int>(pts.size());
  check_m(m, 24);

  std::vector<double> table = taylor_energy_table(pts, order);
  BruteForceResult res = brute_force_max_table(table, m, /*symmetric=*/true);

  QaoaBound bound;
  bound.summary_energy = res.best_energy;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const Partition& part : res.maximizers) {
    double cost = evaluate_on_full(data, pts, part);
    if (cost < best_cost) {
      best_cost = cost;
      bound.partition = part;
    }
  }
  bound.full_cost = best_cost;
  return bound;
}

}  // namespace qmeans
