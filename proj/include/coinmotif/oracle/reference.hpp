#ifndef COINMOTIF_ORACLE_REFERENCE_HPP_
#define COINMOTIF_ORACLE_REFERENCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "coinmotif/types.hpp"

// Brute-force reference implementations used only by tests. Everything here
// is written independently of the library's clustering and extraction code;
// the only shared vocabulary is the plain data types.

namespace coinmotif::oracle {

struct TooLargeError : std::runtime_error {
  explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

template <typename Scalar>
Scalar refSquaredDistance(const Scalar* a, const Scalar* b, Index d) {
  Scalar acc = 0;
  for (Index j = 0; j < d; ++j) {
    const Scalar diff = a[j] - b[j];
    acc += diff * diff;
  }
  return acc;
}

/// Threshold-1-NN clustering over the rows of `points`, in row order: each
/// row joins the nearest existing centroid if that distance is within R
/// (ties to the lowest cluster id), otherwise it founds a new cluster.
/// Returns member row indices per cluster, in creation order.
///
/// Centroids are recomputed from the member lists on every lookup, so the
/// reference carries no incremental state. Summation runs in insertion
/// order, which keeps the result bit-for-bit comparable with a running-sum
/// implementation.
template <typename Scalar>
std::vector<std::vector<Index>> oracleThresholdNN(
    const RowMatrix<Scalar>& points, Scalar R) {
  if (!(R > Scalar(0)))
    throw InvalidParamsError("radius must be positive");
  const Index n = points.rows();
  const Index d = points.cols();
  const Scalar r2 = R * R;

  std::vector<std::vector<Index>> members;
  std::vector<Scalar> centroid(static_cast<std::size_t>(d));

  for (Index row = 0; row < n; ++row) {
    const Scalar* p = points.data() + row * d;
    int best = -1;
    Scalar bestSq = std::numeric_limits<Scalar>::infinity();
    for (std::size_t c = 0; c < members.size(); ++c) {
      std::fill(centroid.begin(), centroid.end(), Scalar(0));
      for (const Index m : members[c]) {
        const Scalar* q = points.data() + m * d;
        for (Index j = 0; j < d; ++j)
          centroid[static_cast<std::size_t>(j)] += q[j];
      }
      const Scalar count = static_cast<Scalar>(members[c].size());
      for (Index j = 0; j < d; ++j)
        centroid[static_cast<std::size_t>(j)] /= count;
      const Scalar sq = refSquaredDistance(p, centroid.data(), d);
      if (sq < bestSq) {
        bestSq = sq;
        best = static_cast<int>(c);
      }
    }
    if (best >= 0 && bestSq <= r2) {
      members[static_cast<std::size_t>(best)].push_back(row);
    } else {
      members.push_back({row});
    }
  }
  return members;
}

struct AuditReport {
  double maxPairwise = 0;      ///< largest member-to-member distance
  long long outlierCount = 0;  ///< members farther than R from the final centroid
};

/// Exhaustive audit of one cluster: largest pairwise distance and the number
/// of members farther than R from the cluster's final (exact mean) centroid.
template <typename Scalar>
AuditReport auditCluster(const RowMatrix<Scalar>& points,
                         const std::vector<Index>& members, Scalar R) {
  AuditReport report;
  if (members.empty()) return report;
  const Index d = points.cols();

  std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
  for (const Index m : members)
    for (Index j = 0; j < d; ++j)
      mean[static_cast<std::size_t>(j)] += static_cast<double>(points(m, j));
  for (auto& v : mean) v /= static_cast<double>(members.size());

  double maxSq = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Scalar sq = refSquaredDistance(
          points.data() + members[i] * d, points.data() + members[j] * d, d);
      maxSq = std::max(maxSq, static_cast<double>(sq));
    }
  report.maxPairwise = std::sqrt(maxSq);

  const double rsq = static_cast<double>(R) * static_cast<double>(R);
  for (const Index m : members) {
    double sq = 0;
    for (Index j = 0; j < d; ++j) {
      const double diff =
          static_cast<double>(points(m, j)) - mean[static_cast<std::size_t>(j)];
      sq += diff * diff;
    }
    if (sq > rsq) ++report.outlierCount;
  }
  return report;
}

struct ReplayReport {
  bool ok = false;
  long long violations = 0;      ///< members inserted farther than R
  long long orderFaults = 0;     ///< rows out of recorded insertion order
  double maxAtInsertion = 0;     ///< largest at-insertion distance seen
};

/// Replays a clustering assignment in row order, maintaining each cluster's
/// running mean with the same per-element adds and divisions the clustering
/// performed, and checks that every non-seed member was within R of its
/// cluster's centroid at the moment it was inserted.
template <typename Scalar>
ReplayReport replayWithinRadius(const RowMatrix<Scalar>& points,
                                const std::vector<std::vector<Index>>& memberships,
                                Scalar R) {
  const Index n = points.rows();
  const Index d = points.cols();
  const Scalar r2 = R * R;
  ReplayReport report;

  std::vector<int> clusterOf(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < memberships.size(); ++c)
    for (const Index row : memberships[c]) {
      if (row < 0 || row >= n || clusterOf[static_cast<std::size_t>(row)] != -1)
        return report;  // not a partition of the rows
      clusterOf[static_cast<std::size_t>(row)] = static_cast<int>(c);
    }
  for (const int c : clusterOf)
    if (c == -1) return report;

  std::vector<long long> counts(memberships.size(), 0);
  std::vector<std::vector<Scalar>> sums(memberships.size());
  std::vector<std::vector<Scalar>> centroids(memberships.size());

  double maxSq = 0;
  for (Index row = 0; row < n; ++row) {
    const auto ci = static_cast<std::size_t>(clusterOf[static_cast<std::size_t>(row)]);
    const Scalar* p = points.data() + row * d;
    if (memberships[ci][static_cast<std::size_t>(counts[ci])] != row)
      ++report.orderFaults;
    if (counts[ci] == 0) {
      sums[ci].assign(p, p + d);
      centroids[ci].assign(p, p + d);
      counts[ci] = 1;
      continue;
    }
    const Scalar sq = refSquaredDistance(p, centroids[ci].data(), d);
    maxSq = std::max(maxSq, static_cast<double>(sq));
    if (!(sq <= r2)) ++report.violations;
    ++counts[ci];
    for (Index j = 0; j < d; ++j) sums[ci][static_cast<std::size_t>(j)] += p[j];
    for (Index j = 0; j < d; ++j)
      centroids[ci][static_cast<std::size_t>(j)] =
          sums[ci][static_cast<std::size_t>(j)] / static_cast<Scalar>(counts[ci]);
  }
  report.maxAtInsertion = std::sqrt(maxSq);
  report.ok = report.violations == 0 && report.orderFaults == 0;
  return report;
}

/// Exhaustive check that every same-series pair in `members` is non-trivially
/// similar within delta: the pair itself is within delta, and some window of
/// the full reduced set starting strictly between the two is farther than
/// delta from both. Cross-series pairs are exempt. Returns the violation
/// count.
template <typename Scalar>
long long countNonTrivialViolations(const std::vector<Index>& members,
                                    const CandidateMatrix<Scalar>& matrix,
                                    const ReducedSet<Scalar>& full,
                                    Scalar delta) {
  const Scalar d2 = delta * delta;
  const Index dim = full.d;
  long long violations = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const auto& a = matrix.entries[static_cast<std::size_t>(members[i])];
      const auto& b = matrix.entries[static_cast<std::size_t>(members[j])];
      if (a.series != b.series) continue;
      if (refSquaredDistance(a.reduced.data(), b.reduced.data(), dim) > d2) {
        ++violations;
        continue;
      }
      const auto* blk = full.blockOf(a.series);
      const Index lo = std::min(a.start, b.start);
      const Index hi = std::max(a.start, b.start);
      bool separated = false;
      for (Index t = lo + 1; t < hi && !separated; ++t) {
        const Scalar* v = full.rows.data() + (blk->firstRow + t) * dim;
        separated = refSquaredDistance(v, a.reduced.data(), dim) > d2 &&
                    refSquaredDistance(v, b.reduced.data(), dim) > d2;
      }
      if (!separated) ++violations;
    }
  return violations;
}

/// Literal frequent-motif search on one series by exhaustive O(n^2) pairwise
/// comparison of mean-shifted windows: neighborhoods under the non-trivial
/// similarity test with delta = 2R, greedy extraction seeded by the densest
/// neighborhood (ties to the earliest start), members added in ascending
/// distance from the seed (ties to the earliest start) while they stay
/// non-trivially similar to every member already taken. Sets larger than s
/// are reported. Returns member start indices per motif.
template <typename Scalar>
std::vector<std::vector<Index>> naiveFrequentMotifs(
    const Vector<Scalar>& series, Index w, Scalar R, long long s) {
  const Index n = series.size();
  if (n > 5000)
    throw TooLargeError("naive motif search is capped at 5000 samples, got " +
                        std::to_string(n));
  if (w < 2 || w > n) return {};

  // z-normalize with population std
  double mean = 0;
  for (Index i = 0; i < n; ++i) mean += static_cast<double>(series[i]);
  mean /= static_cast<double>(n);
  double var = 0;
  for (Index i = 0; i < n; ++i) {
    const double diff = static_cast<double>(series[i]) - mean;
    var += diff * diff;
  }
  var /= static_cast<double>(n);
  if (!(var > 0)) return {};
  const double inv = 1.0 / std::sqrt(var);

  const Index count = n - w + 1;
  std::vector<std::vector<Scalar>> win(static_cast<std::size_t>(count));
  for (Index t = 0; t < count; ++t) {
    auto& v = win[static_cast<std::size_t>(t)];
    v.resize(static_cast<std::size_t>(w));
    double wmean = 0;
    for (Index j = 0; j < w; ++j) {
      const double z = (static_cast<double>(series[t + j]) - mean) * inv;
      v[static_cast<std::size_t>(j)] = static_cast<Scalar>(z);
      wmean += z;
    }
    wmean /= static_cast<double>(w);
    for (Index j = 0; j < w; ++j)
      v[static_cast<std::size_t>(j)] -= static_cast<Scalar>(wmean);
  }

  const Scalar delta = 2 * R;
  const Scalar d2 = delta * delta;
  auto sqDist = [&](Index a, Index b) {
    return refSquaredDistance(win[static_cast<std::size_t>(a)].data(),
                              win[static_cast<std::size_t>(b)].data(), w);
  };
  auto nonTrivial = [&](Index a, Index b) {
    if (sqDist(a, b) > d2) return false;
    const Index lo = std::min(a, b), hi = std::max(a, b);
    for (Index t = lo + 1; t < hi; ++t)
      if (sqDist(t, lo) > d2 && sqDist(t, hi) > d2) return true;
    return false;
  };

  std::vector<std::vector<Index>> nbr(static_cast<std::size_t>(count));
  for (Index a = 0; a < count; ++a)
    for (Index b = a + 1; b < count; ++b)
      if (nonTrivial(a, b)) {
        nbr[static_cast<std::size_t>(a)].push_back(b);
        nbr[static_cast<std::size_t>(b)].push_back(a);
      }

  std::vector<char> taken(static_cast<std::size_t>(count), 0);
  std::vector<char> seedable(static_cast<std::size_t>(count), 1);
  std::vector<std::vector<Index>> motifs;
  for (;;) {
    Index seed = -1;
    std::size_t bestDensity = 0;
    for (Index a = 0; a < count; ++a) {
      if (taken[static_cast<std::size_t>(a)] || !seedable[static_cast<std::size_t>(a)])
        continue;
      std::size_t density = 0;
      for (const Index b : nbr[static_cast<std::size_t>(a)])
        if (!taken[static_cast<std::size_t>(b)]) ++density;
      if (density > bestDensity) {
        bestDensity = density;
        seed = a;
      }
    }
    if (seed < 0 || static_cast<long long>(bestDensity) < s) break;

    std::vector<Index> pool;
    for (const Index b : nbr[static_cast<std::size_t>(seed)])
      if (!taken[static_cast<std::size_t>(b)]) pool.push_back(b);
    std::stable_sort(pool.begin(), pool.end(), [&](Index a, Index b) {
      const Scalar da = sqDist(seed, a), db = sqDist(seed, b);
      if (da != db) return da < db;
      return a < b;
    });
    std::vector<Index> set{seed};
    for (const Index cand : pool) {
      bool compatible = true;
      for (const Index m : set)
        if (!nonTrivial(cand, m)) {
          compatible = false;
          break;
        }
      if (compatible) set.push_back(cand);
    }
    if (static_cast<long long>(set.size()) > s) {
      std::sort(set.begin(), set.end());
      for (const Index m : set) taken[static_cast<std::size_t>(m)] = 1;
      motifs.push_back(std::move(set));
    } else {
      seedable[static_cast<std::size_t>(seed)] = 0;
    }
  }
  return motifs;
}

}  // namespace coinmotif::oracle

#endif  // COINMOTIF_ORACLE_REFERENCE_HPP_
