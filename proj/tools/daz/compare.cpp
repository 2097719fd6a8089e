#include "compare.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <string>

#include "config.hpp"
#include "daz/csv.hpp"
#include "daz/errors.hpp"

namespace daz::app {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunFiles {
  json meta;
  std::map<std::uint64_t, double> tv;
};

RunFiles load_run(const fs::path& dir) {
  const fs::path meta_path = dir / "run.json";
  const fs::path metrics_path = dir / "metrics.csv";
  for (const auto& p : {meta_path, metrics_path})
    if (!fs::exists(p)) throw InvalidArgument("missing file '" + p.string() + "'");
  RunFiles r;
  r.meta = load_json_file(meta_path);
  for (const auto& row : read_numeric_csv(metrics_path)) {
    if (row.size() != 4) throw InvalidArgument("'" + metrics_path.string() + "': expected 4 columns");
    r.tv[static_cast<std::uint64_t>(row[0])] = row[3];
  }
  return r;
}

std::optional<std::uint64_t> first_crossing(const std::map<std::uint64_t, double>& tv, double level) {
  for (const auto& [it, v] : tv)
    if (v < level) return it;
  return std::nullopt;
}

std::string label(const json& meta, const fs::path& dir) {
  return dir.filename().string() + " (" + meta.at("sampler").at("kind").get<std::string>() + ")";
}

}  // namespace

Comparison compare_runs(const fs::path& dir_a, const fs::path& dir_b) {
  const RunFiles a = load_run(dir_a), b = load_run(dir_b);
  const auto ha = a.meta.at("reference_hash").get<std::string>();
  const auto hb = b.meta.at("reference_hash").get<std::string>();
  if (ha != hb)
    throw InvalidArgument("runs '" + dir_a.string() + "' and '" + dir_b.string() +
                          "' use different models or references (" + ha + " vs " + hb + ")");

  Comparison cmp;
  for (const auto& [it, tva] : a.tv) {
    const auto found = b.tv.find(it);
    if (found == b.tv.end()) continue;
    const double tvb = found->second;
    double ratio;
    if (tva == 0.0 && tvb == 0.0) ratio = 1.0;
    else if (tvb == 0.0) ratio = std::numeric_limits<double>::infinity();
    else ratio = tva / tvb;
    cmp.rows.push_back({it, tva, tvb, ratio});
  }
  if (cmp.rows.empty()) throw InvalidArgument("the two runs share no checkpoint iterations");

  json crossings = json::object();
  for (double level : kCrossingThresholds) {
    const auto ca = first_crossing(a.tv, level), cb = first_crossing(b.tv, level);
    std::string first = "none";
    if (ca && (!cb || *ca < *cb)) first = "a";
    else if (cb && (!ca || *cb < *ca)) first = "b";
    else if (ca && cb) first = "tie";
    crossings[format_double(level)] = {{"a", ca ? json(*ca) : json(nullptr)},
                                       {"b", cb ? json(*cb) : json(nullptr)},
                                       {"first", first}};
  }
  cmp.summary = {{"a", {{"dir", dir_a.string()}, {"label", label(a.meta, dir_a)},
                        {"config_hash", a.meta.at("config_hash")},
                        {"final_iteration", a.tv.rbegin()->first},
                        {"final_tv_error", a.tv.rbegin()->second}}},
                 {"b", {{"dir", dir_b.string()}, {"label", label(b.meta, dir_b)},
                        {"config_hash", b.meta.at("config_hash")},
                        {"final_iteration", b.tv.rbegin()->first},
                        {"final_tv_error", b.tv.rbegin()->second}}},
                 {"reference_hash", ha},
                 {"shared_checkpoints", cmp.rows.size()},
                 {"first_below", crossings}};
  return cmp;
}

void write_comparison(const Comparison& cmp, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const fs::path csv = out_dir / "comparison.csv";
  std::ofstream out(csv, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + csv.string() + "'");
  out << "# reference_hash=" << cmp.summary.at("reference_hash").get<std::string>() << '\n'
      << "iter,tv_a,tv_b,ratio\n";
  for (const auto& r : cmp.rows)
    out << r.iteration << ',' << format_double(r.tv_a) << ',' << format_double(r.tv_b) << ','
        << format_double(r.ratio) << '\n';
  std::ofstream(out_dir / "summary.json", std::ios::binary) << cmp.summary.dump(2) << '\n';
}

}  // namespace daz::app
