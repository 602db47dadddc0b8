#ifndef COINMOTIF_COIN_HPP_
#define COINMOTIF_COIN_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "coinmotif/cftree.hpp"
#include "coinmotif/cluster.hpp"
#include "coinmotif/lsh.hpp"
#include "coinmotif/types.hpp"

namespace coinmotif {

enum class Accel { Basic, Birch, Lsh };

inline const char* accelName(Accel a) {
  switch (a) {
    case Accel::Basic: return "basic";
    case Accel::Birch: return "birch";
    case Accel::Lsh: return "lsh";
  }
  return "?";
}

inline Accel accelFromString(const std::string& s) {
  if (s == "basic") return Accel::Basic;
  if (s == "birch") return Accel::Birch;
  if (s == "lsh") return Accel::Lsh;
  throw InvalidParamsError("unknown accelerator '" + s +
                           "' (expected basic, birch, or lsh)");
}

// Bucket width 3.5R keeps candidate recall at close range above 95% while
// staying narrow enough that distant centroids rarely share buckets.
inline double defaultLshWidth(double radius) { return 3.5 * radius; }

struct LshParams {
  int hashesPerTable = 3;
  int tables = 5;
  double width = 0;  // <= 0 resolves to defaultLshWidth(radius)
  std::uint64_t seed = 1;
};

template <typename Scalar>
struct CoinParams {
  Scalar radius = Scalar(1);
  Accel accel = Accel::Basic;
  int branching = 50;
  LshParams lsh;
};

/// Exhaustive scan over every existing centroid.
template <typename Scalar>
struct BasicStrategy {
  static constexpr bool kScansAll = true;
  void onInsert(int, const Vector<Scalar>&, const Vector<Scalar>&, bool) {}
};

/// CF-tree lookup: proposes the single leaf reached by greedy descent.
template <typename Scalar>
struct BirchStrategy {
  static constexpr bool kScansAll = false;

  BirchStrategy(int branching, Index dim) : tree(branching, dim) {}

  const std::vector<int>& candidates(const Vector<Scalar>& point) {
    scratch.clear();
    const int leaf = tree.nearestLeaf(point);
    if (leaf >= 0) scratch.push_back(leaf);
    return scratch;
  }

  void onInsert(int clusterId, const Vector<Scalar>& point,
                const Vector<Scalar>&, bool isNew) {
    if (isNew)
      tree.addCluster(clusterId, point);
    else
      tree.addPoint(clusterId, point);
  }

  CFTree<Scalar> tree;
  std::vector<int> scratch;
};

/// Hash lookup: proposes every cluster sharing at least one LSH bucket.
template <typename Scalar>
struct LshStrategy {
  static constexpr bool kScansAll = false;

  LshStrategy(Index dim, int hashesPerTable, int tables, Scalar width,
              std::uint64_t seed)
      : index(dim, hashesPerTable, tables, width, seed) {}

  std::vector<int> candidates(const Vector<Scalar>& point) {
    return index.candidates(point);
  }

  void onInsert(int clusterId, const Vector<Scalar>&,
                const Vector<Scalar>& centroid, bool isNew) {
    if (isNew)
      index.registerCluster(clusterId, centroid);
    else
      index.updateCluster(clusterId, centroid);
  }

  LshIndex<Scalar> index;
};

/// One-pass incremental clustering: each row joins the nearest proposed
/// centroid within `radius` (ties break toward the lowest cluster id, since
/// candidates arrive in ascending id order and only strictly closer centroids
/// replace the running best) or seeds a new singleton cluster.
template <typename Scalar, typename Strategy>
std::vector<Cluster<Scalar>> coinClusterWith(const RowMatrix<Scalar>& points,
                                             Scalar radius,
                                             Strategy& strategy) {
  if (!(radius > Scalar(0)))
    throw InvalidParamsError("cluster radius must be positive");
  const Index n = points.rows();
  const Index d = points.cols();
  std::vector<Cluster<Scalar>> clusters;
  if (n == 0) return clusters;

  const Scalar r2 = radius * radius;
  RowMatrix<Scalar> centroids(16, d);
  Vector<Scalar> point(d);
  Vector<Scalar> cent(d);

  for (Index row = 0; row < n; ++row) {
    point = points.row(row);
    int best = -1;
    Scalar bestSq = std::numeric_limits<Scalar>::infinity();
    if constexpr (Strategy::kScansAll) {
      const int k = static_cast<int>(clusters.size());
      for (int c = 0; c < k; ++c) {
        const Scalar sq =
            squaredDistance(point.data(), centroids.row(c).data(), d);
        if (sq < bestSq) {
          bestSq = sq;
          best = c;
        }
      }
    } else {
      for (const int c : strategy.candidates(point)) {
        if (c < 0 || c >= static_cast<int>(clusters.size()))
          throw InvariantViolation("accelerator proposed unknown cluster id " +
                                   std::to_string(c));
        const Scalar sq =
            squaredDistance(point.data(), centroids.row(c).data(), d);
        if (sq < bestSq) {
          bestSq = sq;
          best = c;
        }
      }
    }

    if (best >= 0 && bestSq <= r2) {
      Cluster<Scalar>& cl = clusters[static_cast<std::size_t>(best)];
      cl.cf.add(point);
      cl.members.push_back(row);
      cent = cl.cf.centroid();
      centroids.row(best) = cent;
      strategy.onInsert(best, point, cent, false);
    } else {
      const int id = static_cast<int>(clusters.size());
      Cluster<Scalar> cl;
      cl.id = id;
      cl.cf = ClusterFeature<Scalar>(d);
      cl.cf.add(point);
      cl.members.push_back(row);
      clusters.push_back(std::move(cl));
      if (id >= centroids.rows())
        centroids.conservativeResize(centroids.rows() * 2, d);
      centroids.row(id) = point;
      strategy.onInsert(id, point, point, true);
    }
  }
  return clusters;
}

template <typename Scalar>
std::vector<Cluster<Scalar>> coinCluster(const RowMatrix<Scalar>& points,
                                         const CoinParams<Scalar>& params) {
  switch (params.accel) {
    case Accel::Birch: {
      BirchStrategy<Scalar> strategy(params.branching,
                                     points.cols() > 0 ? points.cols() : 1);
      return coinClusterWith(points, params.radius, strategy);
    }
    case Accel::Lsh: {
      const Scalar width =
          params.lsh.width > 0
              ? static_cast<Scalar>(params.lsh.width)
              : static_cast<Scalar>(defaultLshWidth(static_cast<double>(params.radius)));
      LshStrategy<Scalar> strategy(points.cols() > 0 ? points.cols() : 1,
                                   params.lsh.hashesPerTable,
                                   params.lsh.tables, width, params.lsh.seed);
      return coinClusterWith(points, params.radius, strategy);
    }
    case Accel::Basic:
    default: {
      BasicStrategy<Scalar> strategy;
      return coinClusterWith(points, params.radius, strategy);
    }
  }
}

}  // namespace coinmotif

#endif  // COINMOTIF_COIN_HPP_
