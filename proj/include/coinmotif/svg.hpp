#ifndef COINMOTIF_SVG_HPP_
#define COINMOTIF_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace coinmotif {

/// One overlaid curve of a motif plot. `dataMember` tags member curves with
/// "run:start" so plots can be cross-checked against the catalog.
struct PlotTrace {
  std::vector<double> y;
  std::string dataMember;
};

namespace detail {

inline std::string fmtCoord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string fmtTick(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string xmlEscaped(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Standalone SVG: every member window overlaid in light strokes, the motif
/// centroid on top, axes in sample index (x) and the sensor's original units
/// (y).
inline void writeMotifSvg(std::ostream& os, const std::string& title,
                          const std::vector<PlotTrace>& members,
                          const std::vector<double>& centroid,
                          const std::string& yLabel) {
  const double W = 860, H = 420;
  const double left = 70, right = 20, top = 44, bottom = 52;
  const double plotW = W - left - right;
  const double plotH = H - top - bottom;

  std::size_t samples = centroid.size();
  for (const auto& t : members) samples = std::max(samples, t.y.size());
  if (samples < 2) samples = 2;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto widen = [&](const std::vector<double>& ys) {
    for (const double v : ys) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };
  for (const auto& t : members) widen(t.y);
  widen(centroid);
  if (!(lo < hi)) {
    lo = lo - 1;
    hi = hi + 1;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  auto px = [&](double sample) {
    return left + plotW * sample / static_cast<double>(samples - 1);
  };
  auto py = [&](double v) { return top + plotH * (hi - v) / (hi - lo); };

  auto polyline = [&](const std::vector<double>& ys) {
    std::string pts;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (i) pts += ' ';
      pts += detail::fmtCoord(px(static_cast<double>(i)));
      pts += ',';
      pts += detail::fmtCoord(py(ys[i]));
    }
    return pts;
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"#ffffff\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">"
     << detail::xmlEscaped(title) << "</text>\n";

  // axes
  os << "<line x1=\"" << left << "\" y1=\"" << top + plotH << "\" x2=\""
     << left + plotW << "\" y2=\"" << top + plotH
     << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
     << "\" y2=\"" << top + plotH << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double sample =
        static_cast<double>(samples - 1) * static_cast<double>(i) / 4.0;
    const double x = px(sample);
    os << "<line x1=\"" << detail::fmtCoord(x) << "\" y1=\"" << top + plotH
       << "\" x2=\"" << detail::fmtCoord(x) << "\" y2=\"" << top + plotH + 5
       << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << detail::fmtCoord(x) << "\" y=\"" << top + plotH + 20
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << detail::fmtTick(std::round(sample)) << "</text>\n";

    const double v = lo + (hi - lo) * static_cast<double>(i) / 4.0;
    const double y = py(v);
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::fmtCoord(y)
       << "\" x2=\"" << left << "\" y2=\"" << detail::fmtCoord(y)
       << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << left - 9 << "\" y=\"" << detail::fmtCoord(y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << detail::fmtTick(v) << "</text>\n";
  }

  os << "<text x=\"" << left + plotW / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        "sample</text>\n";
  os << "<text x=\"16\" y=\"" << top + plotH / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 "
     << top + plotH / 2 << ")\">" << detail::xmlEscaped(yLabel) << "</text>\n";

  for (const auto& t : members) {
    os << "<polyline fill=\"none\" stroke=\"#4878a8\" stroke-width=\"1\" "
          "stroke-opacity=\"0.35\" data-member=\""
       << detail::xmlEscaped(t.dataMember) << "\" points=\"" << polyline(t.y)
       << "\"/>\n";
  }
  if (!centroid.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#c03028\" stroke-width=\"2.5\" "
          "data-role=\"centroid\" points=\""
       << polyline(centroid) << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace coinmotif

#endif  // COINMOTIF_SVG_HPP_
