#include "ihl/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ihl/generators.hpp"

namespace ihl {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::kInvalidScenario, path + ": " + message);
}

/// Typed accessors that report the JSON path of the offending field.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& node() const { return node_; }
  bool has(const char* key) const { return node_.is_object() && node_.contains(key); }

  Reader at(const char* key) const {
    if (!node_.is_object()) fail(path_, "expected an object");
    const auto it = node_.find(key);
    if (it == node_.end()) fail(path_ + "." + key, "missing field");
    return Reader(*it, path_ + "." + key);
  }

  Reader at(std::size_t i) const { return Reader(node_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::size_t size() const {
    if (!node_.is_array()) fail(path_, "expected an array");
    return node_.size();
  }

  double number() const {
    if (!node_.is_number()) fail(path_, "expected a number");
    const double x = node_.get<double>();
    if (!std::isfinite(x)) fail(path_, "expected a finite number");
    return x;
  }

  std::uint64_t unsigned_integer() const {
    if (!node_.is_number_unsigned()) fail(path_, "expected a nonnegative integer");
    return node_.get<std::uint64_t>();
  }

  std::string string() const {
    if (!node_.is_string()) fail(path_, "expected a string");
    return node_.get<std::string>();
  }

  Coords coords() const {
    Coords out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i).number();
    return out;
  }

  std::vector<Coords> coords_list() const {
    std::vector<Coords> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i).coords();
    return out;
  }

 private:
  const json& node_;
  std::string path_;
};

template <typename Fn>
auto with_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidScenario) throw;
    fail(path, e.what());
  }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

GeneratorSpec read_generator(const Reader& r) {
  GeneratorSpec spec;
  const auto name = r.at("family").string();
  const auto family = parse_family(name);
  if (!family) fail(r.path() + ".family", "unknown family '" + name + "'");
  spec.family = *family;
  spec.size = r.at("size").unsigned_integer();
  spec.seed = r.at("seed").unsigned_integer();
  spec.param = r.has("param") ? r.at("param").number() : default_param(spec.family);
  spec.kappa = r.has("kappa") ? r.at("kappa").unsigned_integer() : 2;
  return spec;
}

TGrid read_tgrid(const Reader& r) {
  if (r.has("times")) {
    const auto times = r.at("times").coords();
    return with_path(r.path() + ".times", [&] { return TGrid(times); });
  }
  const double t_min = r.at("t_min").number();
  const double t_max = r.at("t_max").number();
  const auto count = r.at("count").unsigned_integer();
  const auto spacing = r.at("spacing").string();
  if (spacing != "linear" && spacing != "log") {
    fail(r.path() + ".spacing", "expected 'linear' or 'log'");
  }
  return with_path(r.path(), [&] {
    return spacing == "log" ? TGrid::log(t_min, t_max, count) : TGrid::linear(t_min, t_max, count);
  });
}

FiberBackend read_backend(const Reader& r) {
  if (!r.node().is_object() || r.node().size() != 1) {
    fail(r.path(), "expected exactly one of 'affine_graph' or 'finite'");
  }
  if (r.has("affine_graph")) return AffineGraph{r.at("affine_graph").at("base_dim").unsigned_integer()};
  if (r.has("finite")) {
    const auto finite = r.at("finite");
    FiniteFibers fibers;
    fibers.points = finite.at("points").coords_list();
    const auto assignment = finite.at("assignment");
    fibers.assignment.resize(assignment.size());
    for (std::size_t i = 0; i < fibers.assignment.size(); ++i) {
      fibers.assignment[i] = assignment.at(i).unsigned_integer();
    }
    return fibers;
  }
  fail(r.path(), "expected 'affine_graph' or 'finite'");
}

Scenario read_scenario(const json& doc) {
  const Reader root(doc, "$");
  if (!doc.is_object()) fail("$", "expected an object");
  const auto version = root.at("schema_version").unsigned_integer();
  if (version != static_cast<std::uint64_t>(kSchemaVersion)) {
    fail("$.schema_version", "unsupported version " + std::to_string(version));
  }
  const auto kappa = root.at("kappa").unsigned_integer();

  const auto sample_node = root.at("sample");
  const auto points = sample_node.at("points").coords_list();
  const auto box_node = sample_node.at("bounding_box");
  BoundingBox box{box_node.at("min").coords(), box_node.at("max").coords()};
  SampleSet sample = with_path(sample_node.path(), [&] { return SampleSet(points, box); });

  FiberBackend backend = read_backend(root.at("fiber_backend"));
  Quotient quotient =
      with_path("$", [&] { return Quotient(kappa, std::move(sample), std::move(backend)); });

  const auto section_node = root.at("section");
  std::optional<GeneratorSpec> spec;
  if (section_node.has("generator")) spec = read_generator(section_node.at("generator"));
  std::vector<Coords> values;
  if (section_node.has("values")) {
    values = section_node.at("values").coords_list();
  } else if (spec) {
    values = with_path(section_node.path() + ".generator",
                       [&] { return generate(*spec).section.values(); });
  } else {
    fail(section_node.path(), "needs values or a generator");
  }
  Section section = with_path(section_node.path(), [&] { return Section(values, spec); });
  const auto violations = validate_section(quotient, section);
  if (!violations.empty()) {
    fail(section_node.path() + ".values[" + std::to_string(violations.front().index) + "]",
         violations.front().reason);
  }

  TGrid tgrid = read_tgrid(root.at("tgrid"));
  std::optional<RadiusSchedule> radii;
  if (root.has("radii")) {
    const auto r = root.at("radii").coords();
    radii = with_path("$.radii", [&] { return RadiusSchedule(r); });
  }
  std::optional<TheoremId> fault;
  if (root.has("fault_injection")) {
    const auto name = root.at("fault_injection").string();
    fault = parse_theorem_id(name);
    if (!fault) fail("$.fault_injection", "unknown check '" + name + "'");
  }
  std::string id = root.has("id") ? root.at("id").string() : std::string("scenario");
  return Scenario{std::move(id), std::move(quotient), std::move(section), std::move(tgrid),
                  std::move(radii), fault};
}

json coords_json(const std::vector<Coords>& list) {
  json out = json::array();
  for (const auto& c : list) out.push_back(c);
  return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::kInvalidScenario, "line " + std::to_string(line) + ", column " +
                                                 std::to_string(column) + ": malformed JSON");
  }
  return read_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidScenario, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string dump_scenario(const Scenario& s) {
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["id"] = s.id;
  doc["kappa"] = s.quotient.kappa();
  if (const auto* affine = std::get_if<AffineGraph>(&s.quotient.backend())) {
    doc["fiber_backend"] = {{"affine_graph", {{"base_dim", affine->base_dim}}}};
  } else {
    const auto& fibers = std::get<FiniteFibers>(s.quotient.backend());
    doc["fiber_backend"] = {
        {"finite", {{"points", coords_json(fibers.points)}, {"assignment", fibers.assignment}}}};
  }
  const auto& sample = s.quotient.sample();
  doc["sample"] = {{"points", coords_json(sample.points())},
                   {"bounding_box", {{"min", sample.box().min}, {"max", sample.box().max}}}};
  json section = {{"values", coords_json(s.section.values())}};
  if (const auto& g = s.section.generator()) {
    section["generator"] = {{"family", std::string(to_string(g->family))},
                            {"size", g->size},
                            {"seed", g->seed},
                            {"param", g->param},
                            {"kappa", g->kappa}};
  }
  doc["section"] = std::move(section);
  doc["tgrid"] = {{"times", std::vector<double>(s.tgrid.times().begin(), s.tgrid.times().end())}};
  if (s.radii) doc["radii"] = s.radii->radii();
  if (s.fault) doc["fault_injection"] = std::string(to_string(*s.fault));
  return doc.dump(1) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << dump_scenario(scenario);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep_csv(std::ostream& out, std::span<const SemigroupPoint> cells) {
  out << "t,y_index,value,d_minus,d_plus,argmin_size\n";
  for (const auto& c : cells) {
    out << format_double(c.t) << ',' << c.y_index << ',' << format_double(c.value) << ','
        << format_double(c.d_minus) << ',' << format_double(c.d_plus) << ','
        << c.argmin_indices.size() << '\n';
  }
}

std::string slope_report_json(const SlopeReport& report) {
  json radius_used = json::array();
  for (const auto& r : report.radius_used) radius_used.push_back(r ? json(*r) : json(nullptr));
  json doc = {{"ils_global", report.ils_global},
              {"k_bound", report.k_bound},
              {"radius_schedule", report.radius_schedule.radii()},
              {"slope", report.slope},
              {"slope_asymptotic", report.slope_asymptotic},
              {"radius_used", std::move(radius_used)}};
  return doc.dump(1) + "\n";
}

void write_slope_csv(std::ostream& out, const SlopeReport& report) {
  out << "index,slope,slope_asymptotic\n";
  for (std::size_t i = 0; i < report.slope.size(); ++i) {
    out << i << ',' << format_double(report.slope[i]) << ','
        << format_double(report.slope_asymptotic[i]) << '\n';
  }
}

std::string theorem_reports_json(std::span<const TheoremReport> reports) {
  json doc = json::array();
  for (const auto& r : reports) {
    json details = json::array();
    for (const auto& v : r.details) details.push_back({{"where", v.where}, {"margin", finite_or_null(v.margin)}});
    json series = json::array();
    for (const auto& s : r.series) {
      json values = json::array();
      for (double x : s.values) values.push_back(finite_or_null(x));
      series.push_back({{"name", s.name}, {"values", std::move(values)}});
    }
    doc.push_back({{"theorem_id", std::string(to_string(r.theorem_id))},
                   {"scenario_id", r.scenario_id},
                   {"passed", r.passed},
                   {"applicable", r.applicable},
                   {"surrogate", r.surrogate},
                   {"worst_margin", finite_or_null(r.worst_margin)},
                   {"tolerance", r.tolerance},
                   {"cells_checked", r.cells_checked},
                   {"details", std::move(details)},
                   {"series", std::move(series)},
                   {"warnings", r.warnings}});
  }
  return doc.dump(1) + "\n";
}

std::string summary_table(std::span<const TheoremReport> reports) {
  struct Row {
    std::size_t passed = 0;
    std::size_t total = 0;
    double worst = std::numeric_limits<double>::infinity();
    bool surrogate = false;
  };
  std::map<int, Row> rows;
  for (const auto& r : reports) {
    auto& row = rows[static_cast<int>(r.theorem_id)];
    row.surrogate = r.surrogate;
    if (!r.applicable) continue;
    ++row.total;
    if (r.passed) ++row.passed;
    row.worst = std::min(row.worst, r.worst_margin);
  }
  std::ostringstream os;
  os << std::left << std::setw(14) << "theorem_id" << std::setw(10) << "passed" << "worst_margin\n";
  for (const auto& [id, row] : rows) {
    std::string name(to_string(static_cast<TheoremId>(id)));
    if (row.surrogate) name += "*";
    os << std::setw(14) << name << std::setw(10)
       << (std::to_string(row.passed) + "/" + std::to_string(row.total))
       << (row.total == 0 ? std::string("n/a") : format_double(row.worst)) << '\n';
  }
  return os.str();
}

}  // namespace ihl
