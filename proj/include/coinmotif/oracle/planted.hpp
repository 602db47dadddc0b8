#ifndef COINMOTIF_ORACLE_PLANTED_HPP_
#define COINMOTIF_ORACLE_PLANTED_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "coinmotif/types.hpp"

namespace coinmotif::oracle {

struct SpecInfeasibleError : std::runtime_error {
  explicit SpecInfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Recipe for a synthetic series with known motif occurrences.
template <typename Scalar>
struct PlantedSpec {
  Vector<Scalar> pattern;       ///< the injected waveform, one window long
  int count = 0;                ///< number of injections
  std::vector<Scalar> levels;   ///< offsets cycled over the injections
  Scalar noiseSigma = 0;        ///< per-sample jitter on injected windows
  std::uint64_t seed = 1;
  Index seriesLength = 0;
};

template <typename Scalar>
struct PlantedResult {
  TimeSeries<Scalar> series;
  std::vector<Index> starts;   ///< injection starts, ascending
  std::vector<Scalar> levels;  ///< level of each injection, same order
};

/// Builds a unit-Gaussian white-noise series and replaces `count`
/// non-overlapping windows with level + pattern + jitter. Injection k takes
/// levels[k mod levels.size()]. Fully determined by the seed. Throws
/// SpecInfeasible when the injections cannot fit without overlap.
template <typename Scalar>
PlantedResult<Scalar> generatePlanted(const PlantedSpec<Scalar>& spec) {
  const Index w = spec.pattern.size();
  const Index length = spec.seriesLength;
  if (length < 1) throw InvalidParamsError("series length must be >= 1");
  if (spec.count < 0) throw InvalidParamsError("injection count must be >= 0");
  if (spec.count > 0 && w < 1)
    throw InvalidParamsError("pattern must be non-empty to inject");
  if (spec.count > 0 && spec.levels.empty())
    throw InvalidParamsError("need at least one level to inject");
  const Index occupied = static_cast<Index>(spec.count) * w;
  if (spec.count > 0 && occupied >= length)
    throw SpecInfeasibleError(
        "cannot place " + std::to_string(spec.count) + " windows of " +
        std::to_string(w) + " samples in " + std::to_string(length));

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  PlantedResult<Scalar> out;
  out.series.id = "planted-" + std::to_string(spec.seed);
  out.series.sensor = "synthetic";
  out.series.values.resize(length);
  for (Index i = 0; i < length; ++i)
    out.series.values[i] = static_cast<Scalar>(gauss(rng));

  if (spec.count == 0) return out;

  // Draw starts in the collapsed space without the windows, sort, then
  // re-expand; consecutive starts end up at least w apart.
  const double slack = static_cast<double>(length - occupied);
  std::uniform_real_distribution<double> uni(0.0, slack);
  std::vector<double> gaps(static_cast<std::size_t>(spec.count));
  for (auto& g : gaps) g = uni(rng);
  std::sort(gaps.begin(), gaps.end());
  out.starts.resize(static_cast<std::size_t>(spec.count));
  for (int k = 0; k < spec.count; ++k)
    out.starts[static_cast<std::size_t>(k)] =
        static_cast<Index>(gaps[static_cast<std::size_t>(k)]) +
        static_cast<Index>(k) * w;

  out.levels.resize(static_cast<std::size_t>(spec.count));
  for (int k = 0; k < spec.count; ++k) {
    const Scalar level = spec.levels[static_cast<std::size_t>(k) % spec.levels.size()];
    out.levels[static_cast<std::size_t>(k)] = level;
    const Index start = out.starts[static_cast<std::size_t>(k)];
    for (Index j = 0; j < w; ++j) {
      Scalar v = level + spec.pattern[j];
      if (spec.noiseSigma > 0)
        v += spec.noiseSigma * static_cast<Scalar>(gauss(rng));
      out.series.values[start + j] = v;
    }
  }
  return out;
}

}  // namespace coinmotif::oracle

#endif  // COINMOTIF_ORACLE_PLANTED_HPP_
