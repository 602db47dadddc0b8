#ifndef COINMOTIF_BENCH_HPP_
#define COINMOTIF_BENCH_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "coinmotif/oracle/reference.hpp"
#include "coinmotif/pipeline.hpp"
#include "coinmotif/preprocess.hpp"
#include "coinmotif/types.hpp"

namespace coinmotif {

/// Synthetic load for scaling runs: a quiet autoregressive baseline with
/// short smooth events stamped on top. Event shapes come from a finite pool
/// and amplitudes from a finite level set, so the population of distinct
/// windows fills in quickly at small lengths and saturates at large ones
/// while the number of window instances keeps growing linearly.
struct BenchGenConfig {
  Index eventLength = 20;
  int spacingMin = 45;
  int spacingMax = 55;
  int shapePool = 10;
  std::vector<double> ampLevels{1.3, 2.6};
  double baselinePhi = 0.9;
  double baselineSigma = 0.1;
  double jitterSigma = 0.1;
};

template <typename Scalar = double>
TimeSeries<Scalar> benchSeries(Index length, std::uint64_t seed,
                               const BenchGenConfig& cfg = {}) {
  if (length < 1) throw InvalidParamsError("bench series length must be >= 1");
  if (cfg.eventLength < 2) throw InvalidParamsError("event length must be >= 2");
  if (cfg.spacingMin < 1 || cfg.spacingMax < cfg.spacingMin)
    throw InvalidParamsError("bad event spacing range");
  if (cfg.shapePool < 1) throw InvalidParamsError("shape pool must be >= 1");
  if (cfg.ampLevels.empty())
    throw InvalidParamsError("amplitude level set must not be empty");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const Index L = cfg.eventLength;
  const double pi = std::numbers::pi;

  // Shape pool: two-tone sinusoids with random phases, unit RMS.
  std::vector<std::vector<double>> shapes(
      static_cast<std::size_t>(cfg.shapePool));
  std::uniform_int_distribution<int> lowFreq(1, 2);
  std::uniform_int_distribution<int> highFreq(2, 4);
  for (auto& shape : shapes) {
    const int f1 = lowFreq(rng);
    const int f2 = highFreq(rng);
    const double p1 = 2.0 * pi * unit(rng);
    const double p2 = 2.0 * pi * unit(rng);
    const double u = 0.3 + 0.4 * unit(rng);
    shape.resize(static_cast<std::size_t>(L));
    double ssq = 0;
    for (Index j = 0; j < L; ++j) {
      const double t = (static_cast<double>(j) + 0.5) / static_cast<double>(L);
      const double v = u * std::sin(2.0 * pi * f1 * t + p1) +
                       (1.0 - u) * std::sin(2.0 * pi * f2 * t + p2);
      shape[static_cast<std::size_t>(j)] = v;
      ssq += v * v;
    }
    const double rms = std::sqrt(ssq / static_cast<double>(L));
    for (auto& v : shape) v /= rms;
  }

  TimeSeries<Scalar> out;
  out.id = "bench-" + std::to_string(length);
  out.sensor = "synthetic";
  out.values.resize(length);

  const double innovation =
      cfg.baselineSigma * std::sqrt(1.0 - cfg.baselinePhi * cfg.baselinePhi);
  double prev = cfg.baselineSigma * gauss(rng);
  for (Index t = 0; t < length; ++t) {
    out.values[t] = static_cast<Scalar>(prev);
    prev = cfg.baselinePhi * prev + innovation * gauss(rng);
  }

  std::uniform_int_distribution<int> spacing(cfg.spacingMin, cfg.spacingMax);
  std::uniform_int_distribution<int> pick(0, cfg.shapePool - 1);
  std::uniform_int_distribution<std::size_t> pickAmp(0, cfg.ampLevels.size() - 1);
  Index start = spacing(rng);
  while (start + L <= length) {
    const auto& shape = shapes[static_cast<std::size_t>(pick(rng))];
    const double amp = cfg.ampLevels[pickAmp(rng)];
    for (Index j = 0; j < L; ++j) {
      double v = amp * shape[static_cast<std::size_t>(j)];
      if (cfg.jitterSigma > 0) v += cfg.jitterSigma * gauss(rng);
      out.values[start + j] += static_cast<Scalar>(v);
    }
    start += spacing(rng);
  }
  return out;
}

struct BenchRow {
  Index length = 0;
  std::string strategy;
  long long candidates = 0;
  long long clusters = 0;
  double clusterSeconds = 0;
  double totalSeconds = 0;
};

struct BenchConfig {
  std::vector<Index> lengths;
  std::vector<Accel> strategies{Accel::Basic, Accel::Birch, Accel::Lsh};
  bool includeOracle = false;
  Index oracleCap = 50000;
  /// Each strategy row keeps the fastest of this many passes.
  int repeats = 1;
  std::uint64_t seed = 1;
  PipelineParams params;
  DiscoverOptions options;
  /// When non-empty, each bench length takes a prefix of this series instead
  /// of synthetic data.
  std::vector<double> baseValues;
  std::string baseId = "base";
};

template <typename Scalar = double>
std::vector<BenchRow> runBench(const BenchConfig& cfg,
                               const BenchGenConfig& gen = {}) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (const Index length : cfg.lengths) {
    TimeSeries<Scalar> series;
    if (cfg.baseValues.empty()) {
      series = benchSeries<Scalar>(length, cfg.seed, gen);
    } else {
      if (length > static_cast<Index>(cfg.baseValues.size()))
        throw InvalidParamsError("bench length " + std::to_string(length) +
                                 " exceeds the supplied series (" +
                                 std::to_string(cfg.baseValues.size()) +
                                 " samples)");
      series.id = cfg.baseId + "-" + std::to_string(length);
      series.sensor = cfg.baseId;
      series.values.resize(length);
      for (Index t = 0; t < length; ++t)
        series.values[t] = static_cast<Scalar>(cfg.baseValues[t]);
    }
    std::vector<TimeSeries<Scalar>> input{series};

    const int passes = std::max(1, cfg.repeats);
    for (const Accel accel : cfg.strategies) {
      DiscoverOptions options = cfg.options;
      options.accel = accel;
      BenchRow row;
      row.length = length;
      row.strategy = accelName(accel);
      for (int pass = 0; pass < passes; ++pass) {
        const PipelineResult<Scalar> res =
            discoverMotifs<Scalar>(input, cfg.params, options);
        if (pass == 0 || res.timings.total < row.totalSeconds) {
          row.clusterSeconds = res.timings.cluster;
          row.totalSeconds = res.timings.total;
        }
        row.candidates = res.counts.candidates;
        row.clusters = res.counts.clusters;
      }
      rows.push_back(std::move(row));
    }

    if (cfg.includeOracle && length <= cfg.oracleCap) {
      const auto prepStart = clock::now();
      const PreprocessResult<Scalar> prep = buildCandidateMatrix<Scalar>(
          std::vector<ZSeries<Scalar>>{znormalize(series)}, cfg.params);
      const Index rowsN = static_cast<Index>(prep.matrix.entries.size());
      RowMatrix<Scalar> points(rowsN, cfg.params.d);
      for (Index i = 0; i < rowsN; ++i)
        points.row(i) = prep.matrix.entries[static_cast<std::size_t>(i)].reduced;
      const auto clusterStart = clock::now();
      const auto memberships =
          oracle::oracleThresholdNN<Scalar>(points, cfg.params.R);
      const auto end = clock::now();

      BenchRow row;
      row.length = length;
      row.strategy = "oracle";
      row.candidates = rowsN;
      row.clusters = static_cast<long long>(memberships.size());
      row.clusterSeconds =
          std::chrono::duration<double>(end - clusterStart).count();
      row.totalSeconds = std::chrono::duration<double>(end - prepStart).count();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline void writeBenchTable(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "length\tstrategy\tcandidates\tclusters\tcluster_seconds\ttotal_seconds\n";
  char buf[64];
  for (const auto& row : rows) {
    os << row.length << '\t' << row.strategy << '\t' << row.candidates << '\t'
       << row.clusters << '\t';
    std::snprintf(buf, sizeof(buf), "%.6f", row.clusterSeconds);
    os << buf << '\t';
    std::snprintf(buf, sizeof(buf), "%.6f", row.totalSeconds);
    os << buf << '\n';
  }
}

}  // namespace coinmotif

#endif  // COINMOTIF_BENCH_HPP_
