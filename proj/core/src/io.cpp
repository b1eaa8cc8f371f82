#include "lpq/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lpq/error.hpp"
#include "lpq/format.hpp"

namespace lpq {

using nlohmann::json;
using nlohmann::ordered_json;

GridFunction read_grid(std::istream& in) {
  std::string line;
  int dim = 0;
  int size = 0;
  bool have_header = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream row(line);
    if (!have_header) {
      if (!(row >> dim >> size)) throw ConfigError("grid file: expected header 'n N'");
      check_dim(dim);
      checked_log2_size(size);
      have_header = true;
      values.reserve(dim == 1 ? static_cast<std::size_t>(size) : static_cast<std::size_t>(size) * size);
      continue;
    }
    std::string token;
    while (row >> token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw ConfigError("grid file: bad value '" + token + "'");
      values.push_back(v);
    }
  }
  if (!have_header) throw ConfigError("grid file: missing header");
  const std::size_t expected = dim == 1 ? static_cast<std::size_t>(size) : static_cast<std::size_t>(size) * size;
  if (values.size() != expected) {
    throw ConfigError("grid file: expected " + std::to_string(expected) + " values, found " +
                      std::to_string(values.size()));
  }
  return GridFunction(dim, size, std::move(values));
}

GridFunction read_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid file '" + path.string() + "'");
  return read_grid(in);
}

void write_grid(std::ostream& out, const GridFunction& f) {
  out << f.dim() << ' ' << f.size() << '\n';
  const auto values = f.values();
  const std::size_t row = f.dim() == 1 ? values.size() : static_cast<std::size_t>(f.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_double(values[i]) << ((i + 1) % row == 0 ? '\n' : ' ');
  }
}

void write_grid_file(const std::filesystem::path& path, const GridFunction& f) {
  std::ostringstream out;
  write_grid(out, f);
  write_text_file(path, out.str());
}

namespace {

template <class T>
T field_or(const json& obj, const char* key, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("corpus: field '") + key + "' has the wrong type");
  }
}

CorpusSpec spec_from_json(const json& entry, std::size_t position) {
  if (!entry.is_object()) throw ConfigError("corpus: entry " + std::to_string(position) + " is not an object");
  CorpusSpec spec;
  spec.kind = corpus_kind_from_string(field_or<std::string>(entry, "kind", ""));
  spec.id = field_or<std::string>(entry, "id", std::string(to_string(spec.kind)) + "_" + std::to_string(position));
  spec.dim = field_or<int>(entry, "n", spec.dim);
  spec.size = field_or<int>(entry, "N", spec.size);
  spec.seed = field_or<std::uint64_t>(entry, "seed", spec.seed);
  const json params = entry.contains("params") ? entry.at("params") : json::object();
  if (!params.is_object()) throw ConfigError("corpus: params of '" + spec.id + "' is not an object");
  for (const auto& [key, value] : params.items()) {
    if (key != "value" && key != "frequency" && key != "width" && key != "sharpness" && key != "slope") {
      throw ConfigError("corpus: unknown parameter '" + key + "' in '" + spec.id + "'");
    }
  }
  spec.value = field_or<double>(params, "value", spec.value);
  spec.width = field_or<double>(params, "width", spec.width);
  spec.sharpness = field_or<double>(params, "sharpness", spec.sharpness);
  spec.slope = field_or<double>(params, "slope", spec.slope);
  if (params.contains("frequency")) {
    const auto freq = field_or<std::vector<std::int64_t>>(params, "frequency", {});
    if (freq.empty() || freq.size() > 2) throw ConfigError("corpus: frequency needs 1 or 2 components");
    spec.frequency = Index{freq[0], freq.size() > 1 ? freq[1] : 0};
  }
  return spec;
}

ordered_json cube_json(const Cube& c) {
  ordered_json corner = ordered_json::array();
  for (int d = 0; d < c.dim; ++d) corner.push_back(c.corner[d]);
  return {{"corner", corner}, {"edge", c.edge}};
}

std::string cube_csv(const Cube& c) {
  std::string s = format_double(c.corner[0]);
  s += ',';
  s += c.dim == 2 ? format_double(c.corner[1]) : "";
  s += ',';
  s += format_double(c.edge);
  return s;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string point_csv(const Point& p, int dim) {
  return dim == 1 ? format_double(p[0]) : format_double(p[0]) + "," + format_double(p[1]);
}

}  // namespace

std::vector<CorpusSpec> parse_corpus(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("corpus: invalid JSON: ") + e.what());
  }
  const json& list = doc.is_object() && doc.contains("corpus") ? doc.at("corpus") : doc;
  if (!list.is_array()) throw ConfigError("corpus: expected a list of entries");
  std::vector<CorpusSpec> out;
  for (std::size_t i = 0; i < list.size(); ++i) out.push_back(spec_from_json(list[i], i));
  return out;
}

std::vector<CorpusSpec> read_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_corpus(text.str());
}

std::string corpus_to_json(std::span<const CorpusSpec> corpus) {
  ordered_json list = ordered_json::array();
  for (const auto& s : corpus) {
    ordered_json params = ordered_json::object();
    switch (s.kind) {
      case CorpusKind::constant: params["value"] = s.value; break;
      case CorpusKind::harmonic:
        params["frequency"] = s.dim == 1 ? ordered_json::array({s.frequency[0]})
                                         : ordered_json::array({s.frequency[0], s.frequency[1]});
        break;
      case CorpusKind::gaussian_bump:
      case CorpusKind::schwartz_like: params["width"] = s.width; break;
      case CorpusKind::smoothed_step: params["sharpness"] = s.sharpness; break;
      case CorpusKind::spectral_noise: params["slope"] = s.slope; break;
    }
    list.push_back({{"id", s.id},
                    {"kind", std::string(to_string(s.kind))},
                    {"n", s.dim},
                    {"N", s.size},
                    {"seed", s.seed},
                    {"params", params}});
  }
  return dump(ordered_json{{"corpus", list}});
}

std::string to_json(const NormReport& report) {
  ordered_json table = ordered_json::array();
  for (const auto& row : report.table) table.push_back({{"cube", cube_json(row.cube)}, {"value", row.value}});
  ordered_json j{{"kind", std::string(to_string(report.kind))},
                 {report.kind == NormKind::campanato ? "lambda" : "alpha", report.exponent},
                 {"value", report.value},
                 {"argmax", cube_json(report.argmax)},
                 {"notes", report.notes},
                 {"table", table}};
  return dump(j);
}

std::string to_csv(const NormReport& report) {
  std::string out = "corner0,corner1,edge,value\n";
  for (const auto& row : report.table) out += cube_csv(row.cube) + "," + format_double(row.value) + "\n";
  return out;
}

std::string to_json(const MorreyBesovReport& report) {
  ordered_json bands = ordered_json::array();
  for (const auto& b : report.bands) {
    bands.push_back({{"band", b.band}, {"value", b.value}, {"argmax", cube_json(b.argmax)}});
  }
  return dump(ordered_json{{"kind", "mb"},
                           {"alpha", report.alpha},
                           {"sigma", report.sigma},
                           {"p", 2},
                           {"q", 2},
                           {"value", report.value},
                           {"bands", bands}});
}

std::string to_csv(const MorreyBesovReport& report) {
  std::string out = "band,value,corner0,corner1,edge\n";
  for (const auto& b : report.bands) {
    out += std::to_string(b.band) + "," + format_double(b.value) + "," + cube_csv(b.argmax) + "\n";
  }
  return out;
}

std::string to_json(const EquivalenceReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"id", r.id},
                    {"N", r.size},
                    {"qalpha", r.q_alpha},
                    {"lpmorrey", r.lp_morrey},
                    {"ratio", r.ratio},
                    {"both_zero", r.both_zero},
                    {"qalpha_argmax", cube_json(r.q_argmax)},
                    {"lpmorrey_argmax", cube_json(r.lp_argmax)}});
  }
  ordered_json trends = ordered_json::array();
  for (const auto& t : report.trends) {
    trends.push_back({{"id", t.id},
                      {"ratios", t.ratios},
                      {"drift_per_doubling", t.drift},
                      {"max_drift", t.max_drift},
                      {"monotone", t.monotone},
                      {"flagged", t.flagged}});
  }
  return dump(ordered_json{{"check", "equivalence"},
                           {"alpha", report.alpha},
                           {"sizes", report.sizes},
                           {"c_low", report.c_low},
                           {"c_high", report.c_high},
                           {"spread", report.spread()},
                           {"notes", report.notes},
                           {"rows", rows},
                           {"trends", trends}});
}

std::string to_csv(const EquivalenceReport& report) {
  std::string out = "id,N,qalpha,lpmorrey,ratio,both_zero\n";
  for (const auto& r : report.rows) {
    out += r.id + "," + std::to_string(r.size) + "," + format_double(r.q_alpha) + "," + format_double(r.lp_morrey) +
           "," + format_double(r.ratio) + "," + (r.both_zero ? "1" : "0") + "\n";
  }
  return out;
}

std::string to_json(const FubiniSweep& sweep) {
  return dump(ordered_json{{"check", "fubini"},
                           {"checks", sweep.checks},
                           {"max_discrepancy", sweep.max_discrepancy},
                           {"worst",
                            {{"id", sweep.worst_id},
                             {"alpha", sweep.worst_alpha},
                             {"cube", cube_json(sweep.worst_cube)},
                             {"K", sweep.worst_depth}}}});
}

std::string to_csv(const FubiniSweep& sweep) {
  return "checks,max_discrepancy,worst_id,worst_alpha,worst_K\n" + std::to_string(sweep.checks) + "," +
         format_double(sweep.max_discrepancy) + "," + sweep.worst_id + "," + format_double(sweep.worst_alpha) + "," +
         std::to_string(sweep.worst_depth) + "\n";
}

std::string lemma23_json(std::span<const Lemma23Record> records) {
  ordered_json rows = ordered_json::array();
  double max_ratio = 0.0;
  for (const auto& r : records) {
    max_ratio = std::max(max_ratio, r.ratio);
    rows.push_back({{"id", r.id},
                    {"alpha", r.alpha},
                    {"m", r.m},
                    {"K", r.depth},
                    {"lhs", r.lhs},
                    {"qalpha", r.q_alpha},
                    {"ratio", r.ratio}});
  }
  return dump(ordered_json{{"check", "lemma23"}, {"max_ratio", max_ratio}, {"rows", rows}});
}

std::string lemma23_csv(std::span<const Lemma23Record> records) {
  std::string out = "id,alpha,m,K,lhs,qalpha,ratio\n";
  for (const auto& r : records) {
    out += r.id + "," + format_double(r.alpha) + "," + format_double(r.m) + "," + std::to_string(r.depth) + "," +
           format_double(r.lhs) + "," + format_double(r.q_alpha) + "," + format_double(r.ratio) + "\n";
  }
  return out;
}

std::string kernel_csv(std::span<const KernelEvaluation> rows, int dim) {
  std::string out = dim == 1 ? "x,y" : "x0,x1,y0,y1";
  out += ",distance,k_full,k_allowed,gamma_size,allowed_size,max_first,max_second,rings\n";
  for (const auto& r : rows) {
    std::string rings;
    for (const auto& c : r.rings.per_shell) {
      if (!rings.empty()) rings += ';';
      rings += std::to_string(c.shell) + ":" + std::to_string(c.first_kind) + "/" + std::to_string(c.second_kind);
    }
    out += point_csv(r.pair.x, dim) + "," + point_csv(r.pair.y, dim) + "," + format_double(r.distance) + "," +
           format_double(r.full) + "," + format_double(r.allowed) + "," + std::to_string(r.gamma_size) + "," +
           std::to_string(r.allowed_size) + "," + std::to_string(r.rings.max_first) + "," +
           std::to_string(r.rings.max_second) + "," + rings + "\n";
  }
  return out;
}

std::string to_json(const DecayRecord& record) {
  return dump(ordered_json{{"check", "decay"},
                           {"alpha", record.alpha},
                           {"m", record.m},
                           {"n", record.dim},
                           {"pairs", record.rows.size()},
                           {"slope", record.slope},
                           {"expected_slope", -(2.0 * record.alpha + record.dim)},
                           {"max_full_product", record.max_full_product},
                           {"max_allowed_product", record.max_allowed_product},
                           {"max_full_over_allowed", record.max_full_over_allowed},
                           {"max_second", record.max_second},
                           {"max_first_normalized", record.max_first_normalized},
                           {"subset_ok", record.subset_ok}});
}

std::string to_csv(const DecayRecord& record) { return kernel_csv(record.rows, record.dim); }

std::string to_json(const EmbeddingReport& report) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"id", r.id},
                    {"N", r.size},
                    {"qalpha", r.q_alpha},
                    {"mb", r.morrey_besov},
                    {"ratio", r.ratio},
                    {"excluded", r.excluded},
                    {"violation", r.violation}});
  }
  return dump(ordered_json{{"check", "embedding"},
                           {"alpha", report.alpha},
                           {"max_ratio", report.max_ratio},
                           {"violation", report.violation},
                           {"rows", rows}});
}

std::string to_csv(const EmbeddingReport& report) {
  std::string out = "id,N,qalpha,mb,ratio,excluded,violation\n";
  for (const auto& r : report.rows) {
    out += r.id + "," + std::to_string(r.size) + "," + format_double(r.q_alpha) + "," + format_double(r.morrey_besov) +
           "," + format_double(r.ratio) + "," + (r.excluded ? "1" : "0") + "," + (r.violation ? "1" : "0") + "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

}  // namespace lpq
