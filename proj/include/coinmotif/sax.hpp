#ifndef COINMOTIF_SAX_HPP_
#define COINMOTIF_SAX_HPP_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "coinmotif/types.hpp"

namespace coinmotif {

/// Equiprobable breakpoints of the standard normal for alphabet sizes 2..20,
/// i.e. quantiles at i/a for i = 1..a-1.
inline const std::vector<double>& saxBreakpoints(int alphabet) {
  static const std::vector<std::vector<double>> table = {
      /* 2*/ {0.0},
      /* 3*/ {-0.430727299295457, 0.430727299295457},
      /* 4*/ {-0.674489750196082, 0.0, 0.674489750196082},
      /* 5*/ {-0.841621233572914, -0.253347103135800, 0.253347103135800, 0.841621233572914},
      /* 6*/ {-0.967421566101701, -0.430727299295457, 0.0, 0.430727299295457,
              0.967421566101701},
      /* 7*/ {-1.067570523878140, -0.565948821932863, -0.180012369792705, 0.180012369792705,
              0.565948821932863, 1.067570523878140},
      /* 8*/ {-1.150349380376010, -0.674489750196082, -0.318639363964375, 0.0,
              0.318639363964375, 0.674489750196082, 1.150349380376010},
      /* 9*/ {-1.220640348847350, -0.764709673786387, -0.430727299295457, -0.139710298881862,
              0.139710298881862, 0.430727299295457, 0.764709673786387, 1.220640348847350},
      /*10*/ {-1.281551565544600, -0.841621233572914, -0.524400512708041, -0.253347103135800,
              0.0, 0.253347103135800, 0.524400512708041, 0.841621233572914, 1.281551565544600},
      /*11*/ {-1.335177736118940, -0.908457868537385, -0.604585346583237, -0.348755695517045,
              -0.114185294321428, 0.114185294321428, 0.348755695517045, 0.604585346583237,
              0.908457868537385, 1.335177736118940},
      /*12*/ {-1.382994127100640, -0.967421566101701, -0.674489750196082, -0.430727299295457,
              -0.210428394247925, 0.0, 0.210428394247925, 0.430727299295457, 0.674489750196082,
              0.967421566101701, 1.382994127100640},
      /*13*/ {-1.426076872272850, -1.020076232786200, -0.736315917376129, -0.502402223373355,
              -0.293381232121193, -0.096558615289639, 0.096558615289639, 0.293381232121194,
              0.502402223373355, 0.736315917376130, 1.020076232786200, 1.426076872272850},
      /*14*/ {-1.465233792685520, -1.067570523878140, -0.791638607743375, -0.565948821932863,
              -0.366106356800570, -0.180012369792705, 0.0, 0.180012369792705, 0.366106356800570,
              0.565948821932863, 0.791638607743375, 1.067570523878140, 1.465233792685520},
      /*15*/ {-1.501085946044020, -1.110771616636790, -0.841621233572914, -0.622925723210088,
              -0.430727299295457, -0.253347103135800, -0.083651733907129, 0.083651733907129,
              0.253347103135800, 0.430727299295457, 0.622925723210088, 0.841621233572914,
              1.110771616636790, 1.501085946044020},
      /*16*/ {-1.534120544352550, -1.150349380376010, -0.887146559018876, -0.674489750196082,
              -0.488776411114669, -0.318639363964375, -0.157310684610171, 0.0,
              0.157310684610171, 0.318639363964375, 0.488776411114669, 0.674489750196082,
              0.887146559018876, 1.150349380376010, 1.534120544352550},
      /*17*/ {-1.564726471439750, -1.186831586551300, -0.928899491647271, -0.721522283982343,
              -0.541395085129088, -0.377391943828554, -0.223007830940367, -0.073791273808273,
              0.073791273808273, 0.223007830940367, 0.377391943828554, 0.541395085129088,
              0.721522283982343, 0.928899491647271, 1.186831586551300, 1.564726471439750},
      /*18*/ {-1.593218818457420, -1.220640348847350, -0.967421566101701, -0.764709673786387,
              -0.589455797849779, -0.430727299295457, -0.282215756368352, -0.139710298881862,
              0.0, 0.139710298881862, 0.282215756368352, 0.430727299295457, 0.589455797849779,
              0.764709673786387, 0.967421566101701, 1.220640348847350, 1.593218818457420},
      /*19*/ {-1.619856258559230, -1.252119520265430, -1.003014898549150, -0.804596380360300,
              -0.633640000779701, -0.479505653330950, -0.336038140371823, -0.199201324789267,
              -0.066011812519606, 0.066011812519606, 0.199201324789267, 0.336038140371823,
              0.479505653330950, 0.633640000779701, 0.804596380360300, 1.003014898549150,
              1.252119520265430, 1.619856258559230},
      /*20*/ {-1.644853626951470, -1.281551565544600, -1.036433389493790, -0.841621233572914,
              -0.674489750196082, -0.524400512708041, -0.385320466407568, -0.253347103135800,
              -0.125661346855074, 0.0, 0.125661346855074, 0.253347103135800, 0.385320466407568,
              0.524400512708041, 0.674489750196082, 0.841621233572914, 1.036433389493790,
              1.281551565544600, 1.644853626951470},
  };
  if (alphabet < 2 || alphabet > 20)
    throw InvalidParamsError("sax alphabet must be in [2, 20]");
  return table[static_cast<std::size_t>(alphabet - 2)];
}

/// Maps a real vector to a symbol string. A value exactly at a breakpoint
/// belongs to the upper interval.
template <typename Derived>
std::string saxEncode(const Eigen::MatrixBase<Derived>& reduced, int alphabet) {
  const auto& bps = saxBreakpoints(alphabet);
  std::string word(static_cast<std::size_t>(reduced.size()), 'a');
  for (Index i = 0; i < reduced.size(); ++i) {
    const double v = static_cast<double>(reduced(i));
    const auto up = std::upper_bound(bps.begin(), bps.end(), v);
    word[static_cast<std::size_t>(i)] =
        static_cast<char>('a' + std::distance(bps.begin(), up));
  }
  return word;
}

/// Keep mask for the symbolic de-duplication: within one series, a window is
/// dropped when its word matches the word of the nearest earlier window that
/// was kept. Inputs are in (series, start) order.
inline std::vector<char> saxDedupKeepMask(std::span<const int> series,
                                          std::span<const std::string> words) {
  std::vector<char> keep(words.size(), 1);
  int curSeries = -1;
  const std::string* lastKept = nullptr;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (series[i] != curSeries) {
      curSeries = series[i];
      lastKept = &words[i];
      continue;  // first surviving window of a series is always kept
    }
    if (lastKept && words[i] == *lastKept) {
      keep[i] = 0;
    } else {
      lastKept = &words[i];
    }
  }
  return keep;
}

}  // namespace coinmotif

#endif  // COINMOTIF_SAX_HPP_
