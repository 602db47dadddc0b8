#ifndef COINMOTIF_EXTRACT_HPP_
#define COINMOTIF_EXTRACT_HPP_

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coinmotif/cluster.hpp"
#include "coinmotif/dbscan1d.hpp"
#include "coinmotif/types.hpp"

namespace coinmotif {

/// Knobs for the shifted-cluster test. `ts` bounds how far apart two start
/// times may lie to count as the same occurrence; 0 is a placeholder the
/// pipeline resolves to the reduced dimension d before use.
struct ShiftTestParams {
  Index ts = 0;
  double p = 50.0;      ///< minimum % of the smaller cluster that must pair up
  double sigmaT = 2.0;  ///< population std-dev bound on the diff-list

  void validate() const {
    if (ts < 1) throw InvalidParamsError("shift window ts must be >= 1");
    if (!(p > 0) || p > 100)
      throw InvalidParamsError("shift match percentage must be in (0, 100]");
    if (!(sigmaT > 0))
      throw InvalidParamsError("shift std-dev threshold must be positive");
  }
};

/// A cluster that survived post-processing; its members are pairwise
/// non-trivially similar within delta = 2R.
template <typename Scalar>
struct GroupMotif {
  Cluster<Scalar> cluster;

  long long support() const { return cluster.support(); }
  Vector<Scalar> centroid() const { return cluster.centroid(); }
};

/// One level-split component of a group motif.
template <typename Scalar>
struct Motif {
  int parent = 0;  ///< id of the group motif's cluster
  std::vector<Index> members;  ///< candidate matrix rows, insertion order
  Scalar levelMean = 0;
  Scalar levelMin = 0;
  Scalar levelMax = 0;
  Vector<Scalar> centroid;  ///< mean of member reduced vectors

  long long support() const { return static_cast<long long>(members.size()); }
};

/// Keeps clusters with strictly more than s members, order preserved.
template <typename Scalar>
std::vector<Cluster<Scalar>> filterSupport(
    const std::vector<Cluster<Scalar>>& clusters, long long s) {
  std::vector<Cluster<Scalar>> kept;
  for (const auto& c : clusters)
    if (c.support() > s) kept.push_back(c);
  return kept;
}

inline double populationStd(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double acc = 0.0;
  for (const double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / n);
}

/// Diff-list test for shifted clusters. For each member of the smaller
/// cluster h1, the nearest-by-vector-distance member of h2 in the same series
/// with a start within `ts` samples contributes its signed start difference.
/// h1 and h2 count as shifted copies when at least p% of h1 found a partner
/// and the differences have population std-dev below sigmaT. Distance ties
/// prefer the smaller start gap, then the earlier start.
template <typename Scalar>
bool detectShiftedPair(const Cluster<Scalar>& h1, const Cluster<Scalar>& h2,
                       const CandidateMatrix<Scalar>& matrix,
                       const ShiftTestParams& params) {
  params.validate();
  assert(h1.support() <= h2.support());
  if (h1.members.empty() || h2.members.empty()) return false;
  const auto& entries = matrix.entries;
  const Index dim = matrix.d;

  std::vector<double> diffs;
  diffs.reserve(h1.members.size());
  std::size_t j0 = 0;
  for (const Index m1 : h1.members) {
    const auto& e1 = entries[static_cast<std::size_t>(m1)];
    while (j0 < h2.members.size()) {
      const auto& e2 = entries[static_cast<std::size_t>(h2.members[j0])];
      if (e2.series < e1.series ||
          (e2.series == e1.series && e2.start < e1.start - params.ts))
        ++j0;
      else
        break;
    }
    Scalar bestSq = std::numeric_limits<Scalar>::infinity();
    Index bestAbs = 0;
    Index bestStart = 0;
    bool found = false;
    for (std::size_t j = j0; j < h2.members.size(); ++j) {
      const auto& e2 = entries[static_cast<std::size_t>(h2.members[j])];
      if (e2.series != e1.series || e2.start > e1.start + params.ts) break;
      const Scalar sq =
          squaredDistance(e1.reduced.data(), e2.reduced.data(), dim);
      const Index gap = std::abs(e2.start - e1.start);
      const bool better =
          sq < bestSq ||
          (sq == bestSq &&
           (gap < bestAbs || (gap == bestAbs && e2.start < bestStart)));
      if (better) {
        bestSq = sq;
        bestAbs = gap;
        bestStart = e2.start;
        found = true;
      }
    }
    if (found)
      diffs.push_back(static_cast<double>(bestStart - e1.start));
  }

  if (static_cast<double>(diffs.size()) * 100.0 <
      params.p * static_cast<double>(h1.members.size()))
    return false;
  return populationStd(diffs) < params.sigmaT;
}

/// Pairwise shifted-cluster removal. Pairs are visited in descending-support
/// order (ties by id); whenever a pair tests shifted the smaller cluster is
/// dropped on the spot and skipped by later pairs. Never drops the larger of
/// a pair. Survivors come back in their original order.
///
/// A pair can only test shifted when at least p% of the smaller cluster's
/// members have a same-series partner in the other cluster within ts. One
/// sweep over the member rows counts those co-locations per cluster pair, so
/// only pairs that clear the bar run the full diff-list test.
template <typename Scalar>
std::vector<Cluster<Scalar>> removeShifted(
    const std::vector<Cluster<Scalar>>& clusters,
    const CandidateMatrix<Scalar>& matrix, const ShiftTestParams& params) {
  params.validate();
  const std::size_t k = clusters.size();
  if (k < 2) return clusters;

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (clusters[a].support() != clusters[b].support())
      return clusters[a].support() > clusters[b].support();
    return clusters[a].id < clusters[b].id;
  });

  struct RowRef {
    int series;
    Index start;
    int cluster;
  };
  std::vector<RowRef> rows;
  for (std::size_t i = 0; i < k; ++i)
    for (const Index m : clusters[i].members) {
      const auto& e = matrix.entries[static_cast<std::size_t>(m)];
      rows.push_back(RowRef{e.series, e.start, static_cast<int>(i)});
    }
  std::sort(rows.begin(), rows.end(), [](const RowRef& a, const RowRef& b) {
    if (a.series != b.series) return a.series < b.series;
    return a.start < b.start;
  });

  std::unordered_map<std::uint64_t, long long> cover;
  std::size_t lo = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    while (lo < i && (rows[lo].series != rows[i].series ||
                      rows[lo].start < rows[i].start - params.ts))
      ++lo;
    for (std::size_t j = lo; j < i; ++j) {
      if (rows[j].cluster == rows[i].cluster) continue;
      const auto x = static_cast<std::uint64_t>(
          std::min(rows[j].cluster, rows[i].cluster));
      const auto y = static_cast<std::uint64_t>(
          std::max(rows[j].cluster, rows[i].cluster));
      ++cover[(x << 32) | y];
    }
  }

  std::vector<std::size_t> orderPos(k);
  for (std::size_t a = 0; a < k; ++a) orderPos[order[a]] = a;
  std::vector<std::vector<std::pair<int, long long>>> adjacent(k);
  for (const auto& [key, count] : cover) {
    const int x = static_cast<int>(key >> 32);
    const int y = static_cast<int>(key & 0xffffffffu);
    adjacent[static_cast<std::size_t>(x)].push_back({y, count});
    adjacent[static_cast<std::size_t>(y)].push_back({x, count});
  }

  std::vector<char> alive(k, 1);
  std::vector<std::pair<std::size_t, int>> pending;
  for (std::size_t a = 0; a < k; ++a) {
    if (!alive[order[a]]) continue;
    pending.clear();
    for (const auto& [other, count] : adjacent[order[a]]) {
      const auto oi = static_cast<std::size_t>(other);
      if (orderPos[oi] <= a || !alive[oi]) continue;
      if (static_cast<double>(count) * 100.0 <
          params.p * static_cast<double>(clusters[oi].support()))
        continue;
      pending.push_back({orderPos[oi], other});
    }
    std::sort(pending.begin(), pending.end());
    for (const auto& [pos, other] : pending) {
      const auto oi = static_cast<std::size_t>(other);
      if (detectShiftedPair(clusters[oi], clusters[order[a]], matrix, params))
        alive[oi] = 0;
    }
  }

  std::vector<Cluster<Scalar>> kept;
  for (std::size_t i = 0; i < k; ++i)
    if (alive[i]) kept.push_back(clusters[i]);
  return kept;
}

/// Intra-cluster trivial-match removal (two-pointer). Members arrive sorted
/// by (series, start). Within one series, the anchor q1 starts at the first
/// member; the next member q2 is retained only when some window of the full
/// reduced set starts strictly between them and sits farther than delta from
/// q1, from q2, and from the cluster centroid (the centroid as it was before
/// the scan). A retained q2 becomes the new anchor. The first member of each
/// series is always retained, as is the first member overall. The result's
/// CF is rebuilt from the survivors.
template <typename Scalar>
Cluster<Scalar> removeTrivialWithin(const Cluster<Scalar>& cluster,
                                    const CandidateMatrix<Scalar>& matrix,
                                    const ReducedSet<Scalar>& full,
                                    Scalar delta) {
  if (!(delta > 0)) throw InvalidParamsError("delta must be positive");
  const Scalar d2 = delta * delta;
  const Index dim = full.d;

  Cluster<Scalar> out;
  out.id = cluster.id;
  out.cf = ClusterFeature<Scalar>(dim);
  if (cluster.members.empty()) return out;

  const Vector<Scalar> centroid = cluster.centroid();
  int curSeries = -1;
  const typename ReducedSet<Scalar>::Block* blk = nullptr;
  const Subsequence<Scalar>* q1 = nullptr;

  for (const Index m : cluster.members) {
    const auto& e = matrix.entries[static_cast<std::size_t>(m)];
    if (e.series != curSeries) {
      curSeries = e.series;
      blk = full.blockOf(e.series);
      out.members.push_back(m);
      q1 = &e;
      continue;
    }
    bool separated = false;
    for (Index t = q1->start + 1; t < e.start && !separated; ++t) {
      const Scalar* v = full.rows.row(blk->firstRow + t).data();
      separated = squaredDistance(v, q1->reduced.data(), dim) > d2 &&
                  squaredDistance(v, e.reduced.data(), dim) > d2 &&
                  squaredDistance(v, centroid.data(), dim) > d2;
    }
    if (separated) {
      out.members.push_back(m);
      q1 = &e;
    }
  }

  for (const Index m : out.members)
    out.cf.add(matrix.entries[static_cast<std::size_t>(m)].reduced);
  return out;
}

/// Splits a group motif by occurrence level: 1-D density clustering over the
/// members' stored levels; each density cluster with support strictly above s
/// becomes a Motif. Noise points and small groups are discarded. Motifs come
/// back ordered by ascending level position.
template <typename Scalar>
std::vector<Motif<Scalar>> splitLevels(const Cluster<Scalar>& group,
                                       const CandidateMatrix<Scalar>& matrix,
                                       Scalar eps, int minPts, long long s) {
  std::vector<Scalar> levels;
  levels.reserve(group.members.size());
  for (const Index m : group.members)
    levels.push_back(matrix.entries[static_cast<std::size_t>(m)].level);
  const std::vector<int> labels = dbscan1d(levels, eps, minPts);

  int nLabels = 0;
  for (const int l : labels) nLabels = std::max(nLabels, l + 1);
  std::vector<std::vector<Index>> buckets(static_cast<std::size_t>(nLabels));
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] >= 0)
      buckets[static_cast<std::size_t>(labels[i])].push_back(group.members[i]);

  std::vector<Motif<Scalar>> motifs;
  for (const auto& rows : buckets) {
    if (static_cast<long long>(rows.size()) <= s) continue;
    Motif<Scalar> motif;
    motif.parent = group.id;
    motif.members = rows;
    motif.centroid = Vector<Scalar>::Zero(matrix.d);
    Scalar lmin = std::numeric_limits<Scalar>::infinity();
    Scalar lmax = -std::numeric_limits<Scalar>::infinity();
    Scalar lsum = 0;
    for (const Index m : rows) {
      const auto& e = matrix.entries[static_cast<std::size_t>(m)];
      motif.centroid += e.reduced;
      lsum += e.level;
      lmin = std::min(lmin, e.level);
      lmax = std::max(lmax, e.level);
    }
    motif.centroid /= static_cast<Scalar>(rows.size());
    motif.levelMean = lsum / static_cast<Scalar>(rows.size());
    motif.levelMin = lmin;
    motif.levelMax = lmax;
    motifs.push_back(std::move(motif));
  }
  return motifs;
}

}  // namespace coinmotif

#endif  // COINMOTIF_EXTRACT_HPP_
