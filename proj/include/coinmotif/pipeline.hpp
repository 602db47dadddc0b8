#ifndef COINMOTIF_PIPELINE_HPP_
#define COINMOTIF_PIPELINE_HPP_

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "coinmotif/coin.hpp"
#include "coinmotif/extract.hpp"
#include "coinmotif/preprocess.hpp"
#include "coinmotif/types.hpp"

namespace coinmotif {

/// Per-stage object counts. Cluster counts track how many clusters exist
/// after each stage; member counts track how many subsequences those clusters
/// still hold. Member counts never increase from the support filter onward.
struct StageCounts {
  long long series = 0;
  long long normalized = 0;
  long long zeroVariance = 0;
  long long windowTooLong = 0;
  long long windows = 0;
  long long afterDeviation = 0;
  long long candidates = 0;
  long long clusters = 0;
  long long clusterMembers = 0;
  long long supportClusters = 0;
  long long supportMembers = 0;
  long long shiftClusters = 0;
  long long shiftMembers = 0;
  long long trivialClusters = 0;
  long long trivialMembers = 0;
  long long shiftRerunClusters = 0;
  long long shiftRerunMembers = 0;
  long long motifs = 0;
  long long motifMembers = 0;
};

/// Wall-clock seconds per stage.
struct StageTimings {
  double normalize = 0;
  double reduce = 0;
  double cluster = 0;
  double supportFilter = 0;
  double shiftRemoval = 0;
  double trivialRemoval = 0;
  double shiftRerun = 0;
  double levelSplit = 0;
  double total = 0;
};

/// Everything about one discovery run that is not part of PipelineParams:
/// accelerator choice and the post-processing knobs.
struct DiscoverOptions {
  Accel accel = Accel::Basic;
  int branching = 50;
  LshParams lsh;          ///< seed is overridden by PipelineParams::lshSeed
  ShiftTestParams shift;  ///< ts == 0 resolves to the reduced dimension d
  double levelEps = 0.5;
  int levelMinPts = 2;
};

template <typename Scalar>
struct PipelineResult {
  PipelineParams params;
  DiscoverOptions options;
  StageCounts counts;
  StageTimings timings;
  std::vector<std::string> warnings;
  CandidateMatrix<Scalar> matrix;
  ReducedSet<Scalar> full;
  std::vector<GroupMotif<Scalar>> groups;  ///< survivors of the re-run
  std::vector<Motif<Scalar>> motifs;
};

namespace detail {
inline double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <typename Scalar>
long long memberTotal(const std::vector<Cluster<Scalar>>& clusters) {
  long long total = 0;
  for (const auto& c : clusters) total += c.support();
  return total;
}
}  // namespace detail

/// The full discovery pipeline: normalize, window, filter, reduce, symbolic
/// de-dup, coin clustering, support filter, shifted-cluster removal, trivial
/// member removal, one shifted-cluster re-run with the updated supports, and
/// the level split. Constant series and series shorter than the window are
/// skipped with a warning.
template <typename Scalar>
PipelineResult<Scalar> discoverMotifs(
    const std::vector<TimeSeries<Scalar>>& seriesSet,
    const PipelineParams& params, const DiscoverOptions& options = {}) {
  params.validate();
  if (seriesSet.empty()) throw NoSeriesError("no input series");

  PipelineResult<Scalar> out;
  out.params = params;
  out.options = options;
  out.options.lsh.seed = params.lshSeed;
  if (out.options.lsh.width <= 0) out.options.lsh.width = defaultLshWidth(params.R);
  if (out.options.shift.ts < 1) out.options.shift.ts = params.d;
  out.counts.series = static_cast<long long>(seriesSet.size());
  const auto tTotal = std::chrono::steady_clock::now();

  auto t0 = std::chrono::steady_clock::now();
  std::vector<ZSeries<Scalar>> zs;
  zs.reserve(seriesSet.size());
  for (const auto& series : seriesSet) {
    try {
      zs.push_back(znormalize(series));
    } catch (const ZeroVarianceError&) {
      ++out.counts.zeroVariance;
      out.warnings.push_back("series " + series.id +
                             ": zero variance, skipped");
      continue;
    }
    if (series.values.size() < params.w) {
      ++out.counts.windowTooLong;
      out.warnings.push_back("series " + series.id + ": window " +
                             std::to_string(params.w) +
                             " longer than series (" +
                             std::to_string(series.values.size()) +
                             " samples), no subsequences");
    }
  }
  out.counts.normalized = static_cast<long long>(zs.size());
  out.timings.normalize = detail::secondsSince(t0);

  t0 = std::chrono::steady_clock::now();
  auto pre = buildCandidateMatrix(zs, params);
  out.counts.windows = pre.counts.windows;
  out.counts.afterDeviation = pre.counts.afterDeviation;
  out.counts.candidates = pre.counts.candidates;
  out.matrix = std::move(pre.matrix);
  out.full = std::move(pre.full);
  out.timings.reduce = detail::secondsSince(t0);

  t0 = std::chrono::steady_clock::now();
  const auto& entries = out.matrix.entries;
  RowMatrix<Scalar> points(static_cast<Index>(entries.size()), params.d);
  for (std::size_t i = 0; i < entries.size(); ++i)
    points.row(static_cast<Index>(i)) = entries[i].reduced.transpose();
  CoinParams<Scalar> coinParams;
  coinParams.radius = static_cast<Scalar>(params.R);
  coinParams.accel = out.options.accel;
  coinParams.branching = out.options.branching;
  coinParams.lsh = out.options.lsh;
  auto clusters = coinCluster(points, coinParams);
  out.counts.clusters = static_cast<long long>(clusters.size());
  out.counts.clusterMembers = detail::memberTotal(clusters);
  out.timings.cluster = detail::secondsSince(t0);

  t0 = std::chrono::steady_clock::now();
  auto high = filterSupport(clusters, params.s);
  out.counts.supportClusters = static_cast<long long>(high.size());
  out.counts.supportMembers = detail::memberTotal(high);
  out.timings.supportFilter = detail::secondsSince(t0);

  const ShiftTestParams& shift = out.options.shift;

  t0 = std::chrono::steady_clock::now();
  auto unshifted = removeShifted(high, out.matrix, shift);
  out.counts.shiftClusters = static_cast<long long>(unshifted.size());
  out.counts.shiftMembers = detail::memberTotal(unshifted);
  out.timings.shiftRemoval = detail::secondsSince(t0);

  t0 = std::chrono::steady_clock::now();
  const Scalar delta = static_cast<Scalar>(2 * params.R);
  std::vector<Cluster<Scalar>> pruned;
  pruned.reserve(unshifted.size());
  for (const auto& c : unshifted)
    pruned.push_back(removeTrivialWithin(c, out.matrix, out.full, delta));
  out.counts.trivialClusters = static_cast<long long>(pruned.size());
  out.counts.trivialMembers = detail::memberTotal(pruned);
  out.timings.trivialRemoval = detail::secondsSince(t0);

  t0 = std::chrono::steady_clock::now();
  auto survivors = removeShifted(pruned, out.matrix, shift);
  out.counts.shiftRerunClusters = static_cast<long long>(survivors.size());
  out.counts.shiftRerunMembers = detail::memberTotal(survivors);
  out.timings.shiftRerun = detail::secondsSince(t0);

  t0 = std::chrono::steady_clock::now();
  out.groups.reserve(survivors.size());
  for (auto& c : survivors) {
    auto motifs = splitLevels(c, out.matrix,
                              static_cast<Scalar>(out.options.levelEps),
                              out.options.levelMinPts, params.s);
    for (auto& m : motifs) out.motifs.push_back(std::move(m));
    out.groups.push_back(GroupMotif<Scalar>{std::move(c)});
  }
  out.counts.motifs = static_cast<long long>(out.motifs.size());
  for (const auto& m : out.motifs)
    out.counts.motifMembers += m.support();
  out.timings.levelSplit = detail::secondsSince(t0);

  out.timings.total = detail::secondsSince(tTotal);
  return out;
}

}  // namespace coinmotif

#endif  // COINMOTIF_PIPELINE_HPP_
