#ifndef COINMOTIF_PREPROCESS_HPP_
#define COINMOTIF_PREPROCESS_HPP_

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "coinmotif/sax.hpp"
#include "coinmotif/types.hpp"

namespace coinmotif {

/// z-normalizes a series: (v - mean) / population standard deviation.
/// Throws ZeroVarianceError for constant series; they carry no waveform
/// information and the pipeline skips them with a warning.
template <typename Scalar>
ZSeries<Scalar> znormalize(const TimeSeries<Scalar>& series) {
  const Index n = series.values.size();
  if (n == 0) throw InvalidParamsError("znormalize: empty series " + series.id);
  const Scalar mean = series.values.mean();
  const Scalar var = (series.values.array() - mean).square().sum() / static_cast<Scalar>(n);
  // A constant series can still show var > 0 from accumulated rounding, so
  // the exact max == min test decides.
  if (series.values.minCoeff() == series.values.maxCoeff() || !(var > Scalar(0)))
    throw ZeroVarianceError("series " + series.id + " has zero variance");
  ZSeries<Scalar> out;
  out.source = series.id;
  out.z = (series.values.array() - mean) / std::sqrt(var);
  return out;
}

/// All length-w windows of a z-normalized series, start ascending. A series
/// shorter than the window contributes no subsequences.
template <typename Scalar>
std::vector<Vector<Scalar>> generateSubsequences(const ZSeries<Scalar>& z, int w) {
  if (w < 2) throw InvalidParamsError("window length must be >= 2");
  std::vector<Vector<Scalar>> windows;
  const Index n = z.z.size();
  if (n < w) return windows;
  windows.reserve(static_cast<std::size_t>(n - w + 1));
  for (Index k = 0; k + w <= n; ++k) windows.push_back(z.z.segment(k, w));
  return windows;
}

/// Max-minus-min spread of a window, in z-score units.
template <typename Derived>
typename Derived::Scalar windowDeviation(const Eigen::MatrixBase<Derived>& window) {
  return window.maxCoeff() - window.minCoeff();
}

/// Windows whose deviation reaches the threshold, order preserved.
template <typename Scalar>
std::vector<Vector<Scalar>> filterLowDeviation(const std::vector<Vector<Scalar>>& windows,
                                               Scalar f) {
  std::vector<Vector<Scalar>> kept;
  kept.reserve(windows.size());
  for (const auto& win : windows)
    if (windowDeviation(win) >= f) kept.push_back(win);
  return kept;
}

/// Piecewise-averages a length-w window down to d segments, then shifts the
/// result to zero mean. Returns (reduced, level) where level is the subtracted
/// mean, so reduced + level restores the piecewise-averaged window. Segment
/// boundaries are floor(i*w/d), giving lengths that differ by at most one.
template <typename Derived>
std::pair<Vector<typename Derived::Scalar>, typename Derived::Scalar> reduceAndMergeLevel(
    const Eigen::MatrixBase<Derived>& window, int d) {
  using Scalar = typename Derived::Scalar;
  const Index w = window.size();
  if (d < 1 || d > w) throw InvalidParamsError("reduced dimension must be in [1, w]");
  Vector<Scalar> reduced(d);
  for (Index i = 0; i < d; ++i) {
    const Index j0 = i * w / d;
    const Index j1 = (i + 1) * w / d;
    reduced(i) = window.segment(j0, j1 - j0).mean();
  }
  const Scalar level = reduced.mean();
  reduced.array() -= level;
  return {std::move(reduced), level};
}

/// Per-series preprocessing counters.
struct PreprocessCounts {
  long long windows = 0;           ///< windows generated (F2)
  long long afterDeviation = 0;    ///< survivors of the deviation filter (F3)
  long long candidates = 0;        ///< survivors of the symbolic de-dup (F5)
  long long skippedSeries = 0;     ///< series shorter than the window
};

template <typename Scalar>
struct PreprocessResult {
  CandidateMatrix<Scalar> matrix;
  ReducedSet<Scalar> full;  ///< every window, reduced identically, unfiltered
  PreprocessCounts counts;
};

/// Runs F2-F5 over a set of z-normalized series: windowing, deviation filter,
/// piecewise reduction with mean-shift, symbolic de-duplication. Also builds
/// the unfiltered reduced set the trivial-match stage scans later.
template <typename Scalar>
PreprocessResult<Scalar> buildCandidateMatrix(const std::vector<ZSeries<Scalar>>& series,
                                              const PipelineParams& params) {
  params.validate();
  PreprocessResult<Scalar> out;
  out.matrix.w = params.w;
  out.matrix.d = params.d;
  out.full.w = params.w;
  out.full.d = params.d;

  Index totalWindows = 0;
  for (const auto& zs : series)
    totalWindows += std::max<Index>(0, zs.z.size() - params.w + 1);
  out.full.rows.resize(totalWindows, params.d);

  std::vector<int> candSeries;
  std::vector<std::string> candWords;
  std::vector<Subsequence<Scalar>> pending;

  Index row = 0;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& zs = series[si];
    out.matrix.seriesIds.push_back(zs.source);
    const Index n = zs.z.size();
    const Index count = std::max<Index>(0, n - params.w + 1);
    out.full.blocks.push_back({static_cast<int>(si), row, count});
    if (count == 0) {
      ++out.counts.skippedSeries;
      continue;
    }
    for (Index k = 0; k < count; ++k, ++row) {
      auto window = zs.z.segment(k, params.w);
      auto [reduced, level] = reduceAndMergeLevel(window, params.d);
      out.full.rows.row(row) = reduced.transpose();
      ++out.counts.windows;
      if (windowDeviation(window) < static_cast<Scalar>(params.f)) continue;
      ++out.counts.afterDeviation;
      candSeries.push_back(static_cast<int>(si));
      candWords.push_back(saxEncode(reduced, params.saxAlphabet));
      Subsequence<Scalar> sub;
      sub.series = static_cast<int>(si);
      sub.start = k;
      sub.raw = window;
      sub.reduced = std::move(reduced);
      sub.level = level;
      pending.push_back(std::move(sub));
    }
  }

  const auto keep = saxDedupKeepMask(candSeries, candWords);
  out.matrix.entries.reserve(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i)
    if (keep[i]) out.matrix.entries.push_back(std::move(pending[i]));
  out.counts.candidates = static_cast<long long>(out.matrix.entries.size());
  return out;
}

}  // namespace coinmotif

#endif  // COINMOTIF_PREPROCESS_HPP_
