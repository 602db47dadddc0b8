// Generates the bundled sample extract: a few runs of two synthetic sensor
// channels with recurring level-shifted patterns stamped onto a quiet
// baseline. Re-running with the same seed and standard library reproduces the
// committed files byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

constexpr int kPatternLen = 20;

double tempMain(int j) {
  return 2.5 * std::sin(2.0 * std::numbers::pi * (j + 0.5) / kPatternLen);
}

double tempBump(int j) {
  const double x = (j - 9.5) / 3.2;
  return 2.8 * std::exp(-x * x);
}

double pressureRamp(int j) {
  if (j < 14) return 2.6 * (j + 1) / 14.0;
  return 2.6 * (19 - j) / 6.0;
}

double pressureWave(int j) {
  return 2.2 * std::sin(4.0 * std::numbers::pi * (j + 0.5) / kPatternLen);
}

struct Injection {
  double (*pattern)(int);
  double level;
};

std::vector<double> makeChannel(std::mt19937_64& rng, int length,
                                double (*mainPattern)(int), double levelA,
                                double levelB, double (*sidePattern)(int),
                                double sideLevel) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> slotJitter(-25, 25);

  std::vector<double> values(static_cast<std::size_t>(length));
  const double phi = 0.5;
  const double sigma = 0.08;
  const double innovation = sigma * std::sqrt(1.0 - phi * phi);
  double prev = sigma * gauss(rng);
  for (int t = 0; t < length; ++t) {
    values[static_cast<std::size_t>(t)] = prev;
    prev = phi * prev + innovation * gauss(rng);
  }

  std::vector<Injection> labels;
  for (int i = 0; i < 8; ++i) labels.push_back({mainPattern, levelA});
  for (int i = 0; i < 8; ++i) labels.push_back({mainPattern, levelB});
  for (int i = 0; i < 10; ++i) labels.push_back({sidePattern, sideLevel});
  std::shuffle(labels.begin(), labels.end(), rng);

  for (std::size_t k = 0; k < labels.size(); ++k) {
    const int pos = 120 + static_cast<int>(k) * 180 + slotJitter(rng);
    for (int j = 0; j < kPatternLen; ++j) {
      values[static_cast<std::size_t>(pos + j)] +=
          labels[k].level + labels[k].pattern(j) + 0.05 * gauss(rng);
    }
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the bundled sample sensor extract"};
  std::string outDir = "data/extract";
  int runs = 8;
  int length = 5000;
  std::uint64_t seed = 42;
  app.add_option("--out", outDir, "output directory");
  app.add_option("--runs", runs, "number of run files");
  app.add_option("--length", length, "samples per run");
  app.add_option("--seed", seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  if (length < 4700) {
    std::cerr << "length must be at least 4700 to fit the injections\n";
    return 1;
  }

  std::filesystem::create_directories(outDir);
  std::mt19937_64 rng(seed);
  char buf[64];
  for (int r = 1; r <= runs; ++r) {
    const auto temp = makeChannel(rng, length, tempMain, 0.0, 4.0, tempBump, 1.0);
    const auto pressure =
        makeChannel(rng, length, pressureRamp, 0.0, 4.0, pressureWave, 2.0);

    std::snprintf(buf, sizeof(buf), "run%02d.csv", r);
    const auto path = std::filesystem::path(outDir) / buf;
    std::ofstream os(path, std::ios::binary);
    if (!os) {
      std::cerr << "cannot write " << path.string() << "\n";
      return 1;
    }
    os << "time,temp,pressure\n";
    for (int t = 0; t < length; ++t) {
      std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f\n", t,
                    temp[static_cast<std::size_t>(t)],
                    pressure[static_cast<std::size_t>(t)]);
      os << buf;
    }
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}
