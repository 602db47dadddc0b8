#ifndef COINMOTIF_CATALOG_HPP_
#define COINMOTIF_CATALOG_HPP_

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coinmotif/pipeline.hpp"
#include "coinmotif/types.hpp"

namespace coinmotif {

struct CatalogMember {
  std::string run;
  long long start = 0;
  double level = 0;
};

struct CatalogMotif {
  int parent = 0;
  long long support = 0;
  double levelMean = 0;
  double levelMin = 0;
  double levelMax = 0;
  std::vector<double> centroid;
  std::vector<CatalogMember> members;
};

struct SensorCatalog {
  std::string sensor;
  StageCounts counts;
  StageTimings timings;
  std::vector<std::string> warnings;
  std::vector<CatalogMotif> motifs;
};

/// The serialized result set: parameter echo plus per-sensor stage counts,
/// warnings, timings, and motifs with full member provenance.
struct MotifCatalog {
  PipelineParams params;
  DiscoverOptions options;  ///< with lsh width and shift window resolved
  std::vector<SensorCatalog> sensors;
};

template <typename Scalar>
SensorCatalog summarize(const std::string& sensor,
                        const PipelineResult<Scalar>& result) {
  SensorCatalog out;
  out.sensor = sensor;
  out.counts = result.counts;
  out.timings = result.timings;
  out.warnings = result.warnings;
  out.motifs.reserve(result.motifs.size());
  for (const auto& m : result.motifs) {
    CatalogMotif cm;
    cm.parent = m.parent;
    cm.support = m.support();
    cm.levelMean = static_cast<double>(m.levelMean);
    cm.levelMin = static_cast<double>(m.levelMin);
    cm.levelMax = static_cast<double>(m.levelMax);
    cm.centroid.reserve(static_cast<std::size_t>(m.centroid.size()));
    for (Index j = 0; j < m.centroid.size(); ++j)
      cm.centroid.push_back(static_cast<double>(m.centroid[j]));
    cm.members.reserve(m.members.size());
    for (const Index row : m.members) {
      const auto& e = result.matrix.entries[static_cast<std::size_t>(row)];
      cm.members.push_back(CatalogMember{result.matrix.seriesIdOf(e),
                                         static_cast<long long>(e.start),
                                         static_cast<double>(e.level)});
    }
    out.motifs.push_back(std::move(cm));
  }
  return out;
}

namespace detail {

/// Nine significant digits, locale-independent, with -0 normalized. The
/// format round-trips: parsing the text and re-formatting it reproduces the
/// same bytes.
inline std::string fmtFloat(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline void appendEscaped(std::string& out, const std::string& s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

class JsonWriter {
 public:
  explicit JsonWriter(std::string& out) : out_(out) {}

  void openObject() { open('{'); }
  void closeObject() { close('}'); }
  void openArray() { open('['); }
  void closeArray() { close(']'); }

  void key(const char* name) {
    comma();
    indent();
    appendEscaped(out_, name);
    out_ += ": ";
    pendingValue_ = true;
  }

  void value(const std::string& s) { lead(); appendEscaped(out_, s); }
  void value(const char* s) { value(std::string(s)); }
  void value(double v) { lead(); out_ += fmtFloat(v); }
  void value(long long v) { lead(); out_ += std::to_string(v); }
  void value(int v) { value(static_cast<long long>(v)); }
  void value(unsigned long long v) { lead(); out_ += std::to_string(v); }

 private:
  void open(char c) {
    lead();
    out_ += c;
    fresh_.push_back(true);
  }
  void close(char c) {
    const bool wasEmpty = fresh_.back();
    fresh_.pop_back();
    if (!wasEmpty) {
      out_ += '\n';
      indentRaw();
    }
    out_ += c;
  }
  void comma() {
    if (!fresh_.back()) out_ += ',';
    fresh_.back() = false;
    out_ += '\n';
  }
  void lead() {
    if (pendingValue_) {
      pendingValue_ = false;
      return;
    }
    if (!fresh_.empty()) {
      if (!fresh_.back()) out_ += ',';
      fresh_.back() = false;
      out_ += '\n';
      indentRaw();
    }
  }
  void indent() { indentRaw(); }
  void indentRaw() { out_.append(fresh_.size() * 2, ' '); }

  std::string& out_;
  std::vector<bool> fresh_{};
  bool pendingValue_ = false;
};

}  // namespace detail

inline std::string serializeCatalog(const MotifCatalog& catalog,
                                    bool withTimings = true) {
  std::string out;
  detail::JsonWriter w(out);
  w.openObject();

  w.key("params");
  w.openObject();
  w.key("window"); w.value(catalog.params.w);
  w.key("radius"); w.value(catalog.params.R);
  w.key("support"); w.value(catalog.params.s);
  w.key("filter"); w.value(catalog.params.f);
  w.key("paa_dim"); w.value(catalog.params.d);
  w.key("sax_alphabet"); w.value(catalog.params.saxAlphabet);
  w.key("seed"); w.value(static_cast<unsigned long long>(catalog.params.lshSeed));
  w.key("accel"); w.value(accelName(catalog.options.accel));
  w.key("branching"); w.value(catalog.options.branching);
  w.key("lsh_r"); w.value(catalog.options.lsh.hashesPerTable);
  w.key("lsh_b"); w.value(catalog.options.lsh.tables);
  w.key("lsh_width"); w.value(catalog.options.lsh.width);
  w.key("shift_ts"); w.value(static_cast<long long>(catalog.options.shift.ts));
  w.key("shift_p"); w.value(catalog.options.shift.p);
  w.key("shift_sigma"); w.value(catalog.options.shift.sigmaT);
  w.key("level_eps"); w.value(catalog.options.levelEps);
  w.key("level_minpts"); w.value(catalog.options.levelMinPts);
  w.closeObject();

  w.key("sensors");
  w.openArray();
  for (const auto& sc : catalog.sensors) {
    w.openObject();
    w.key("sensor"); w.value(sc.sensor);

    w.key("counts");
    w.openObject();
    const auto& c = sc.counts;
    w.key("series"); w.value(c.series);
    w.key("normalized"); w.value(c.normalized);
    w.key("zero_variance"); w.value(c.zeroVariance);
    w.key("window_too_long"); w.value(c.windowTooLong);
    w.key("windows"); w.value(c.windows);
    w.key("after_deviation"); w.value(c.afterDeviation);
    w.key("candidates"); w.value(c.candidates);
    w.key("clusters"); w.value(c.clusters);
    w.key("cluster_members"); w.value(c.clusterMembers);
    w.key("support_clusters"); w.value(c.supportClusters);
    w.key("support_members"); w.value(c.supportMembers);
    w.key("shift_clusters"); w.value(c.shiftClusters);
    w.key("shift_members"); w.value(c.shiftMembers);
    w.key("trivial_clusters"); w.value(c.trivialClusters);
    w.key("trivial_members"); w.value(c.trivialMembers);
    w.key("shift_rerun_clusters"); w.value(c.shiftRerunClusters);
    w.key("shift_rerun_members"); w.value(c.shiftRerunMembers);
    w.key("motifs"); w.value(c.motifs);
    w.key("motif_members"); w.value(c.motifMembers);
    w.closeObject();

    if (withTimings) {
      w.key("timings");
      w.openObject();
      const auto& t = sc.timings;
      w.key("normalize"); w.value(t.normalize);
      w.key("reduce"); w.value(t.reduce);
      w.key("cluster"); w.value(t.cluster);
      w.key("support_filter"); w.value(t.supportFilter);
      w.key("shift_removal"); w.value(t.shiftRemoval);
      w.key("trivial_removal"); w.value(t.trivialRemoval);
      w.key("shift_rerun"); w.value(t.shiftRerun);
      w.key("level_split"); w.value(t.levelSplit);
      w.key("total"); w.value(t.total);
      w.closeObject();
    }

    w.key("warnings");
    w.openArray();
    for (const auto& warning : sc.warnings) w.value(warning);
    w.closeArray();

    w.key("motifs");
    w.openArray();
    for (const auto& m : sc.motifs) {
      w.openObject();
      w.key("parent"); w.value(m.parent);
      w.key("support"); w.value(m.support);
      w.key("level");
      w.openObject();
      w.key("mean"); w.value(m.levelMean);
      w.key("min"); w.value(m.levelMin);
      w.key("max"); w.value(m.levelMax);
      w.closeObject();
      w.key("centroid");
      w.openArray();
      for (const double v : m.centroid) w.value(v);
      w.closeArray();
      w.key("members");
      w.openArray();
      for (const auto& member : m.members) {
        w.openObject();
        w.key("run"); w.value(member.run);
        w.key("start"); w.value(member.start);
        w.key("level"); w.value(member.level);
        w.closeObject();
      }
      w.closeArray();
      w.closeObject();
    }
    w.closeArray();
    w.closeObject();
  }
  w.closeArray();
  w.closeObject();
  out += '\n';
  return out;
}

inline void writeCatalog(std::ostream& os, const MotifCatalog& catalog,
                         bool withTimings = true) {
  os << serializeCatalog(catalog, withTimings);
}

/// Parses a serialized catalog back into the in-memory form. Fields the
/// writer may omit (timings) default to zero.
inline MotifCatalog readCatalog(std::istream& is) {
  const nlohmann::json j = nlohmann::json::parse(is);
  MotifCatalog cat;

  const auto& p = j.at("params");
  cat.params.w = p.at("window").get<int>();
  cat.params.R = p.at("radius").get<double>();
  cat.params.s = p.at("support").get<int>();
  cat.params.f = p.at("filter").get<double>();
  cat.params.d = p.at("paa_dim").get<int>();
  cat.params.saxAlphabet = p.at("sax_alphabet").get<int>();
  cat.params.lshSeed = p.at("seed").get<std::uint64_t>();
  cat.options.accel = accelFromString(p.at("accel").get<std::string>());
  cat.options.branching = p.at("branching").get<int>();
  cat.options.lsh.hashesPerTable = p.at("lsh_r").get<int>();
  cat.options.lsh.tables = p.at("lsh_b").get<int>();
  cat.options.lsh.width = p.at("lsh_width").get<double>();
  cat.options.lsh.seed = cat.params.lshSeed;
  cat.options.shift.ts = p.at("shift_ts").get<long long>();
  cat.options.shift.p = p.at("shift_p").get<double>();
  cat.options.shift.sigmaT = p.at("shift_sigma").get<double>();
  cat.options.levelEps = p.at("level_eps").get<double>();
  cat.options.levelMinPts = p.at("level_minpts").get<int>();

  for (const auto& js : j.at("sensors")) {
    SensorCatalog sc;
    sc.sensor = js.at("sensor").get<std::string>();
    const auto& jc = js.at("counts");
    auto& c = sc.counts;
    c.series = jc.at("series").get<long long>();
    c.normalized = jc.at("normalized").get<long long>();
    c.zeroVariance = jc.at("zero_variance").get<long long>();
    c.windowTooLong = jc.at("window_too_long").get<long long>();
    c.windows = jc.at("windows").get<long long>();
    c.afterDeviation = jc.at("after_deviation").get<long long>();
    c.candidates = jc.at("candidates").get<long long>();
    c.clusters = jc.at("clusters").get<long long>();
    c.clusterMembers = jc.at("cluster_members").get<long long>();
    c.supportClusters = jc.at("support_clusters").get<long long>();
    c.supportMembers = jc.at("support_members").get<long long>();
    c.shiftClusters = jc.at("shift_clusters").get<long long>();
    c.shiftMembers = jc.at("shift_members").get<long long>();
    c.trivialClusters = jc.at("trivial_clusters").get<long long>();
    c.trivialMembers = jc.at("trivial_members").get<long long>();
    c.shiftRerunClusters = jc.at("shift_rerun_clusters").get<long long>();
    c.shiftRerunMembers = jc.at("shift_rerun_members").get<long long>();
    c.motifs = jc.at("motifs").get<long long>();
    c.motifMembers = jc.at("motif_members").get<long long>();

    if (js.contains("timings")) {
      const auto& jt = js.at("timings");
      auto& t = sc.timings;
      t.normalize = jt.at("normalize").get<double>();
      t.reduce = jt.at("reduce").get<double>();
      t.cluster = jt.at("cluster").get<double>();
      t.supportFilter = jt.at("support_filter").get<double>();
      t.shiftRemoval = jt.at("shift_removal").get<double>();
      t.trivialRemoval = jt.at("trivial_removal").get<double>();
      t.shiftRerun = jt.at("shift_rerun").get<double>();
      t.levelSplit = jt.at("level_split").get<double>();
      t.total = jt.at("total").get<double>();
    }

    for (const auto& jw : js.at("warnings"))
      sc.warnings.push_back(jw.get<std::string>());

    for (const auto& jm : js.at("motifs")) {
      CatalogMotif m;
      m.parent = jm.at("parent").get<int>();
      m.support = jm.at("support").get<long long>();
      m.levelMean = jm.at("level").at("mean").get<double>();
      m.levelMin = jm.at("level").at("min").get<double>();
      m.levelMax = jm.at("level").at("max").get<double>();
      for (const auto& jv : jm.at("centroid"))
        m.centroid.push_back(jv.get<double>());
      for (const auto& jmem : jm.at("members"))
        m.members.push_back(CatalogMember{jmem.at("run").get<std::string>(),
                                          jmem.at("start").get<long long>(),
                                          jmem.at("level").get<double>()});
      sc.motifs.push_back(std::move(m));
    }
    cat.sensors.push_back(std::move(sc));
  }
  return cat;
}

inline MotifCatalog readCatalogFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return readCatalog(in);
}

}  // namespace coinmotif

#endif  // COINMOTIF_CATALOG_HPP_
