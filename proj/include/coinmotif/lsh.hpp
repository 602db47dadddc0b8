#ifndef COINMOTIF_LSH_HPP_
#define COINMOTIF_LSH_HPP_

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "coinmotif/types.hpp"

namespace coinmotif {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// p-stable (Gaussian) projection LSH over cluster centroids.
///
/// Each of `tables` hash tables concatenates `hashesPerTable` quantized
/// projections h(x) = floor((a.x + o) / width) into one 64-bit bucket key.
/// A query's candidate set is the union of the clusters sharing at least one
/// bucket with it, returned as sorted unique ids.
template <typename Scalar>
class LshIndex {
 public:
  LshIndex(Index dim, int hashesPerTable, int tables, Scalar width,
           std::uint64_t seed)
      : dim_(dim),
        perTable_(hashesPerTable),
        tables_(tables),
        width_(width) {
    if (hashesPerTable < 1 || tables < 1)
      throw InvalidParamsError("lsh needs at least one hash and one table");
    if (!(width > Scalar(0)))
      throw InvalidParamsError("lsh bucket width must be positive");
    const Index total = static_cast<Index>(perTable_) * tables_;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> shift(0.0, static_cast<double>(width));
    planes_.resize(total, dim_);
    offsets_.resize(total);
    for (Index i = 0; i < total; ++i) {
      for (Index j = 0; j < dim_; ++j)
        planes_(i, j) = static_cast<Scalar>(gauss(rng));
      offsets_[i] = static_cast<Scalar>(shift(rng));
    }
    buckets_.resize(static_cast<std::size_t>(tables_));
  }

  int tableCount() const { return tables_; }
  int hashCountPerTable() const { return perTable_; }
  Scalar width() const { return width_; }

  std::vector<std::uint64_t> bucketKeys(const Vector<Scalar>& point) const {
    const Vector<Scalar> proj = planes_ * point + offsets_;
    std::vector<std::uint64_t> keys(static_cast<std::size_t>(tables_));
    for (int t = 0; t < tables_; ++t) {
      std::uint64_t key = splitmix64(0x9E3779B97F4A7C15ULL * (t + 1));
      for (int i = 0; i < perTable_; ++i) {
        const Scalar v = proj[static_cast<Index>(t) * perTable_ + i] / width_;
        const auto h = static_cast<std::int64_t>(std::floor(v));
        key = splitmix64(key ^ static_cast<std::uint64_t>(h));
      }
      keys[static_cast<std::size_t>(t)] = key;
    }
    return keys;
  }

  void registerCluster(int clusterId, const Vector<Scalar>& centroid) {
    assert(clusterId == static_cast<int>(keysOf_.size()));
    auto keys = bucketKeys(centroid);
    for (int t = 0; t < tables_; ++t)
      buckets_[static_cast<std::size_t>(t)][keys[static_cast<std::size_t>(t)]]
          .push_back(clusterId);
    keysOf_.push_back(std::move(keys));
  }

  /// Re-hashes a cluster whose centroid moved, touching only the tables whose
  /// bucket key actually changed.
  void updateCluster(int clusterId, const Vector<Scalar>& centroid) {
    auto& old = keysOf_[static_cast<std::size_t>(clusterId)];
    const auto fresh = bucketKeys(centroid);
    for (int t = 0; t < tables_; ++t) {
      const auto ti = static_cast<std::size_t>(t);
      if (fresh[ti] == old[ti]) continue;
      auto& table = buckets_[ti];
      auto& stale = table[old[ti]];
      stale.erase(std::find(stale.begin(), stale.end(), clusterId));
      if (stale.empty()) table.erase(old[ti]);
      table[fresh[ti]].push_back(clusterId);
      old[ti] = fresh[ti];
    }
  }

  /// Sorted unique ids of every cluster sharing at least one bucket with
  /// `point`.
  std::vector<int> candidates(const Vector<Scalar>& point) const {
    const auto keys = bucketKeys(point);
    std::vector<int> out;
    for (int t = 0; t < tables_; ++t) {
      const auto ti = static_cast<std::size_t>(t);
      const auto it = buckets_[ti].find(keys[ti]);
      if (it != buckets_[ti].end())
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  Index dim_;
  int perTable_;
  int tables_;
  Scalar width_;
  RowMatrix<Scalar> planes_;
  Vector<Scalar> offsets_;
  std::vector<std::unordered_map<std::uint64_t, std::vector<int>>> buckets_;
  std::vector<std::vector<std::uint64_t>> keysOf_;
};

}  // namespace coinmotif

#endif  // COINMOTIF_LSH_HPP_
