#include <glob.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "coinmotif/bench.hpp"
#include "coinmotif/catalog.hpp"
#include "coinmotif/io.hpp"
#include "coinmotif/pipeline.hpp"
#include "coinmotif/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::vector<std::string> expandGlob(const std::string& pattern) {
  glob_t g{};
  const int rc = glob(pattern.c_str(), GLOB_ERR, nullptr, &g);
  std::vector<std::string> paths;
  if (rc == 0)
    for (std::size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH)
    throw std::runtime_error("cannot expand pattern " + pattern);
  return paths;
}

int classify(const std::exception& e) {
  if (dynamic_cast<const coinmotif::InvalidParamsError*>(&e)) return kExitConfig;
  if (dynamic_cast<const std::logic_error*>(&e)) return kExitInternal;
  if (dynamic_cast<const std::runtime_error*>(&e)) return kExitData;
  return kExitInternal;
}

std::string sanitized(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_')
      c = '_';
  return out;
}

struct SensorOutcome {
  std::string sensor;
  std::vector<coinmotif::TimeSeries<double>> runs;
  coinmotif::PipelineResult<double> result;
  coinmotif::SensorCatalog catalog;
  std::string error;
  int errorExit = kExitOk;
};

SensorOutcome processSensor(const std::string& sensor,
                            const std::vector<std::string>& paths,
                            const coinmotif::PipelineParams& params,
                            const coinmotif::DiscoverOptions& options) {
  SensorOutcome out;
  out.sensor = sensor;
  try {
    out.runs = coinmotif::loadRuns<double>(paths, sensor);
    out.result = coinmotif::discoverMotifs<double>(out.runs, params, options);
    out.catalog = coinmotif::summarize(sensor, out.result);
  } catch (const std::exception& e) {
    out.error = e.what();
    out.errorExit = classify(e);
  }
  return out;
}

struct SeriesStats {
  double mean = 0;
  double sd = 1;
};

SeriesStats statsOf(const coinmotif::Vector<double>& values) {
  SeriesStats st;
  st.mean = values.mean();
  const double var =
      (values.array() - st.mean).square().sum() / static_cast<double>(values.size());
  st.sd = var > 0 ? std::sqrt(var) : 1.0;
  return st;
}

int writePlots(const SensorOutcome& outcome, const std::filesystem::path& outDir) {
  const auto& result = outcome.result;
  std::map<std::string, std::pair<const coinmotif::TimeSeries<double>*, SeriesStats>> byRun;
  for (const auto& run : outcome.runs)
    byRun.emplace(run.id, std::make_pair(&run, statsOf(run.values)));

  const int w = result.matrix.w;
  const int d = result.matrix.d;
  int written = 0;
  for (std::size_t k = 0; k < result.motifs.size(); ++k) {
    const auto& motif = result.motifs[k];
    std::vector<coinmotif::PlotTrace> traces;
    traces.reserve(motif.members.size());
    double meanSum = 0, sdSum = 0;
    for (const coinmotif::Index row : motif.members) {
      const auto& e = result.matrix.entries[static_cast<std::size_t>(row)];
      const auto& runEntry = byRun.at(result.matrix.seriesIdOf(e));
      const auto& values = runEntry.first->values;
      coinmotif::PlotTrace trace;
      trace.y.resize(static_cast<std::size_t>(w));
      for (int j = 0; j < w; ++j)
        trace.y[static_cast<std::size_t>(j)] = values[e.start + j];
      trace.dataMember = runEntry.first->id + ":" + std::to_string(e.start);
      traces.push_back(std::move(trace));
      meanSum += runEntry.second.mean;
      sdSum += runEntry.second.sd;
    }
    const double n = static_cast<double>(motif.members.size());
    const double mean = n > 0 ? meanSum / n : 0.0;
    const double sd = n > 0 ? sdSum / n : 1.0;

    // Undo the reduction and the normalization: repeat each averaged segment
    // over its sample range, add the level back, rescale to sensor units.
    std::vector<double> centroid(static_cast<std::size_t>(w));
    for (int i = 0; i < d; ++i) {
      const int j0 = i * w / d;
      const int j1 = (i + 1) * w / d;
      const double v =
          (static_cast<double>(motif.centroid[i]) + motif.levelMean) * sd + mean;
      for (int j = j0; j < j1; ++j) centroid[static_cast<std::size_t>(j)] = v;
    }

    const std::string name = "motif_" + sanitized(outcome.sensor) + "_" +
                             std::to_string(k) + ".svg";
    std::ofstream os(outDir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (outDir / name).string());
    coinmotif::writeMotifSvg(
        os, outcome.sensor + " motif " + std::to_string(k), traces, centroid,
        outcome.sensor);
    ++written;
  }
  return written;
}

std::vector<coinmotif::Index> parseLengths(const std::string& csv) {
  std::vector<coinmotif::Index> lengths;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    lengths.push_back(static_cast<coinmotif::Index>(std::stoll(token)));
  }
  return lengths;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequent motif discovery in sensor time series"};

  std::string inputGlob;
  std::vector<std::string> sensors;
  int window = 20;
  double radius = 0;
  int support = 50;
  double filter = 1.0;
  int paaDim = 0;
  std::string accel = "birch";
  int branching = 50;
  int lshR = 3;
  int lshB = 5;
  double lshWidth = 0;
  std::uint64_t seed = 1;
  std::string outDir = ".";
  bool plots = false;
  bool bench = false;
  double levelEps = 0.5;
  int levelMinPts = 2;
  long long shiftTs = 0;
  double shiftP = 50.0;
  double shiftSigma = 2.0;
  std::string benchLengths = "10000,20000,40000";
  std::string benchStrategies = "basic,birch,lsh";
  long long benchOracleCap = 50000;
  int benchRepeats = 1;

  app.add_option("--input", inputGlob, "glob of delimited run files");
  app.add_option("--sensor", sensors, "sensor column to analyze (repeatable)")
      ->delimiter(',');
  app.add_option("--window", window, "window length in samples");
  app.add_option("--radius", radius,
                 "cluster radius in z-score units (default: sqrt(window/20))");
  app.add_option("--support", support, "minimum support; kept clusters need more members");
  app.add_option("--filter", filter, "minimum max-min spread of a window, z-score units");
  app.add_option("--paa-dim", paaDim,
                 "reduced dimension (default: window/2, capped at 10)");
  app.add_option("--accel", accel, "clustering strategy: basic, birch, or lsh");
  app.add_option("--branching", branching, "tree branching factor for birch");
  app.add_option("--lsh-r", lshR, "hash functions per lsh table");
  app.add_option("--lsh-b", lshB, "number of lsh tables");
  app.add_option("--lsh-width", lshWidth,
                 "lsh quantization width (default: 3.5 * radius)");
  app.add_option("--seed", seed, "seed for all randomized components");
  app.add_option("--out", outDir, "output directory");
  app.add_flag("--plots", plots, "write one svg per motif");
  app.add_flag("--bench", bench, "run the scaling benchmark instead of discovery");
  app.add_option("--level-eps", levelEps, "level grouping distance");
  app.add_option("--level-minpts", levelMinPts, "level grouping density threshold");
  app.add_option("--shift-ts", shiftTs,
                 "max start offset for the shifted-cluster test (default: paa-dim)");
  app.add_option("--shift-p", shiftP, "percent of members that must pair up");
  app.add_option("--shift-sigma", shiftSigma, "max spread of pairing offsets");
  app.add_option("--bench-lengths", benchLengths, "comma list of series lengths");
  app.add_option("--bench-strategies", benchStrategies,
                 "comma list of strategies; 'oracle' adds the quadratic baseline");
  app.add_option("--bench-oracle-cap", benchOracleCap,
                 "longest series the quadratic baseline runs on");
  app.add_option("--bench-repeats", benchRepeats,
                 "passes per strategy row; the fastest is kept");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  coinmotif::PipelineParams params;
  coinmotif::DiscoverOptions options;
  try {
    params.w = window;
    params.R = radius > 0 ? radius : coinmotif::defaultRadius(window);
    params.s = support;
    params.f = filter;
    params.d = paaDim > 0 ? paaDim : std::max(1, std::min(window / 2, 10));
    params.lshSeed = seed;
    params.validate();
    options.accel = coinmotif::accelFromString(accel);
    options.branching = branching;
    options.lsh.hashesPerTable = lshR;
    options.lsh.tables = lshB;
    options.lsh.width = lshWidth;
    options.shift.ts = shiftTs;
    options.shift.p = shiftP;
    options.shift.sigmaT = shiftSigma;
    options.levelEps = levelEps;
    options.levelMinPts = levelMinPts;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (bench) {
      coinmotif::BenchConfig cfg;
      cfg.lengths = parseLengths(benchLengths);
      cfg.strategies.clear();
      std::stringstream ss(benchStrategies);
      std::string token;
      while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        if (token == "oracle")
          cfg.includeOracle = true;
        else
          cfg.strategies.push_back(coinmotif::accelFromString(token));
      }
      cfg.oracleCap = benchOracleCap;
      cfg.repeats = benchRepeats;
      cfg.seed = seed;
      cfg.params = params;
      cfg.options = options;
      if (!inputGlob.empty()) {
        const auto paths = expandGlob(inputGlob);
        if (paths.empty()) {
          std::cerr << "error: no files match " << inputGlob << "\n";
          return kExitData;
        }
        if (sensors.empty()) {
          std::cerr << "error: --sensor is required with file-backed --bench\n";
          return kExitConfig;
        }
        const auto series = coinmotif::loadRun<double>(paths.front(), sensors.front());
        cfg.baseValues.assign(series.values.data(),
                              series.values.data() + series.values.size());
        cfg.baseId = series.id;
      }
      const auto rows = coinmotif::runBench<double>(cfg);
      coinmotif::writeBenchTable(std::cout, rows);
      return kExitOk;
    }

    if (inputGlob.empty() || sensors.empty()) {
      std::cerr << "error: --input and --sensor are required\n";
      return kExitConfig;
    }
    const auto paths = expandGlob(inputGlob);
    if (paths.empty()) {
      std::cerr << "error: no files match " << inputGlob << "\n";
      return kExitData;
    }

    std::vector<std::future<SensorOutcome>> futures;
    futures.reserve(sensors.size());
    for (const auto& sensor : sensors)
      futures.push_back(std::async(std::launch::async, processSensor, sensor,
                                   paths, params, options));

    coinmotif::MotifCatalog catalog;
    catalog.params = params;
    std::vector<SensorOutcome> outcomes;
    outcomes.reserve(sensors.size());
    int failExit = kExitOk;
    bool haveOptions = false;
    for (auto& f : futures) {
      SensorOutcome outcome = f.get();
      if (outcome.errorExit != kExitOk) {
        std::cerr << "sensor " << outcome.sensor << ": " << outcome.error << "\n";
        failExit = std::max(failExit, outcome.errorExit);
      } else {
        if (!haveOptions) {
          catalog.options = outcome.result.options;
          haveOptions = true;
        }
        catalog.sensors.push_back(outcome.catalog);
      }
      outcomes.push_back(std::move(outcome));
    }
    if (!haveOptions) {
      std::cerr << "error: no sensor completed\n";
      return failExit == kExitOk ? kExitData : failExit;
    }

    const std::filesystem::path out(outDir);
    std::filesystem::create_directories(out);
    const auto catalogPath = out / "catalog.json";
    {
      std::ofstream os(catalogPath, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + catalogPath.string());
      coinmotif::writeCatalog(os, catalog);
    }

    for (const auto& outcome : outcomes) {
      if (outcome.errorExit != kExitOk) continue;
      std::cout << outcome.sensor << ": " << outcome.result.counts.candidates
                << " candidates, " << outcome.result.counts.clusters
                << " clusters, " << outcome.result.motifs.size() << " motifs\n";
      for (const auto& warning : outcome.result.warnings)
        std::cerr << outcome.sensor << ": " << warning << "\n";
      if (plots) {
        const int written = writePlots(outcome, out);
        if (written > 0)
          std::cout << outcome.sensor << ": wrote " << written << " plots\n";
      }
    }
    std::cout << "wrote " << catalogPath.string() << "\n";
    return failExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  }
}
