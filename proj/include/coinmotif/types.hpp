#ifndef COINMOTIF_TYPES_HPP_
#define COINMOTIF_TYPES_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coinmotif {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Row-major so that row(i) is a contiguous subsequence vector.
template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Errors

struct ZeroVarianceError : std::runtime_error {
  explicit ZeroVarianceError(const std::string& what) : std::runtime_error(what) {}
};

struct NoSeriesError : std::runtime_error {
  explicit NoSeriesError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParamsError : std::invalid_argument {
  explicit InvalidParamsError(const std::string& what) : std::invalid_argument(what) {}
};

// Violation of an internal contract, e.g. inserting a point farther than the
// coin radius from a cluster centroid. Not recoverable.
struct InvariantViolation : std::logic_error {
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// ---------------------------------------------------------------------------
// Domain types

/// One run of one sensor, uniformly sampled.
template <typename Scalar>
struct TimeSeries {
  std::string id;         ///< run identifier
  Vector<Scalar> values;  ///< raw sensor readings
  std::string sensor;     ///< sensor name
};

/// A z-normalized series (zero mean, unit population variance).
template <typename Scalar>
struct ZSeries {
  std::string source;  ///< run identifier of the originating series
  Vector<Scalar> z;
};

/// A windowed slice: z-score window plus its piecewise-averaged, mean-shifted
/// reduction. `level` is the mean removed by the shift, so `reduced + level`
/// restores the piecewise-averaged window.
template <typename Scalar>
struct Subsequence {
  int series = 0;  ///< index into the owning matrix's seriesIds
  Index start = 0;
  Vector<Scalar> raw;      ///< length w, z-scores before reduction
  Vector<Scalar> reduced;  ///< length d, mean-shifted
  Scalar level = 0;
};

/// Subsequences that survive the deviation filter and the symbolic
/// de-duplication, in (series, start) order. This is what gets clustered.
template <typename Scalar>
struct CandidateMatrix {
  std::vector<Subsequence<Scalar>> entries;
  int w = 0;
  int d = 0;
  std::vector<std::string> seriesIds;

  const std::string& seriesIdOf(const Subsequence<Scalar>& s) const {
    return seriesIds[static_cast<std::size_t>(s.series)];
  }
};

/// The full reduced subsequence set: every window of every series, reduced
/// and mean-shifted identically to the candidates, with no filtering. The
/// intra-cluster trivial-match removal scans this set for separating
/// subsequences, so it must cover starts the candidate matrix dropped.
template <typename Scalar>
struct ReducedSet {
  struct Block {
    int series = 0;
    Index firstRow = 0;  ///< row of the window starting at sample 0
    Index count = 0;     ///< number of windows in this series
  };

  RowMatrix<Scalar> rows;  ///< one reduced window per row
  std::vector<Block> blocks;
  int w = 0;
  int d = 0;

  const Block* blockOf(int series) const {
    for (const auto& b : blocks)
      if (b.series == series) return &b;
    return nullptr;
  }
};

struct PipelineParams {
  int w = 20;         ///< window length in samples
  double R = 1.0;     ///< coin radius in z-score distance units
  int s = 50;         ///< minimum support (strict: kept clusters have > s members)
  double f = 1.0;     ///< minimum normalized deviation of a window
  int d = 10;         ///< reduced dimension after piecewise averaging
  int saxAlphabet = 4;
  std::uint64_t lshSeed = 1;

  void validate() const {
    if (w < 2) throw InvalidParamsError("window length must be >= 2");
    if (d < 1 || d > w) throw InvalidParamsError("reduced dimension must be in [1, w]");
    if (!(R > 0)) throw InvalidParamsError("coin radius must be positive");
    if (s < 1) throw InvalidParamsError("minimum support must be >= 1");
    if (f < 0) throw InvalidParamsError("deviation threshold must be >= 0");
    if (saxAlphabet < 2) throw InvalidParamsError("sax alphabet must be >= 2");
  }
};

/// The radius the experiments derive from the window length: 1 at w = 20,
/// scaled by sqrt(w/20) elsewhere.
inline double defaultRadius(int w) { return std::sqrt(static_cast<double>(w) / 20.0); }

}  // namespace coinmotif

#endif  // COINMOTIF_TYPES_HPP_
