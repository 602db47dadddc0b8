#ifndef COINMOTIF_CLUSTER_HPP_
#define COINMOTIF_CLUSTER_HPP_

#include <vector>

#include "coinmotif/types.hpp"

namespace coinmotif {

/// BIRCH clustering feature: member count, linear sum, and scalar sum of
/// squared norms. Supports O(1) centroid reads and exact field-wise merges.
template <typename Scalar>
struct ClusterFeature {
  long long n = 0;
  Vector<Scalar> ls;
  Scalar ss = 0;

  ClusterFeature() = default;
  explicit ClusterFeature(Index dim) : ls(Vector<Scalar>::Zero(dim)) {}

  template <typename Derived>
  void add(const Eigen::MatrixBase<Derived>& point) {
    if (n == 0 && ls.size() == 0) ls = Vector<Scalar>::Zero(point.size());
    ++n;
    ls += point;
    ss += point.squaredNorm();
  }

  void merge(const ClusterFeature& other) {
    if (ls.size() == 0) ls = Vector<Scalar>::Zero(other.ls.size());
    n += other.n;
    ls += other.ls;
    ss += other.ss;
  }

  // Plain per-element division; the reference implementations divide the
  // same way, keeping nearest-centroid decisions bit-for-bit comparable.
  Vector<Scalar> centroid() const {
    Vector<Scalar> c(ls.size());
    for (Index j = 0; j < ls.size(); ++j) c[j] = ls[j] / static_cast<Scalar>(n);
    return c;
  }
};

/// A coin cluster: CF triple plus members in insertion order. Members are
/// indices into the candidate matrix.
template <typename Scalar>
struct Cluster {
  int id = 0;
  ClusterFeature<Scalar> cf;
  std::vector<Index> members;

  long long support() const { return static_cast<long long>(members.size()); }
  Vector<Scalar> centroid() const { return cf.centroid(); }
};

/// Squared Euclidean distance as a plain scalar loop. Nearest-centroid
/// decisions use this fixed summation order, so equal inputs give equal
/// decisions on every run.
template <typename Scalar>
inline Scalar squaredDistance(const Scalar* a, const Scalar* b, Index d) {
  Scalar acc = 0;
  for (Index j = 0; j < d; ++j) {
    const Scalar diff = a[j] - b[j];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace coinmotif

#endif  // COINMOTIF_CLUSTER_HPP_
