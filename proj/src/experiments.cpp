#include "folnerlab/experiments.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "folnerlab/averaging.hpp"
#include "folnerlab/decomposition.hpp"
#include "folnerlab/error.hpp"
#include "folnerlab/folner.hpp"
#include "folnerlab/meanlin.hpp"
#include "folnerlab/recurrence.hpp"
#include "spec_text.hpp"

namespace folnerlab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kGolden = 0.6180339887498949;    // (sqrt 5 - 1) / 2
constexpr double kSilver = 0.41421356237309503;   // sqrt 2 - 1

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---- config access -------------------------------------------------------

const json& field(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ConfigError(std::string("config is missing '") + key + "'");
  return cfg.at(key);
}

std::string get_string(const json& cfg, const char* key) {
  const auto& v = field(cfg, key);
  if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

double get_number(const json& cfg, const char* key) {
  const auto& v = field(cfg, key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& cfg, const char* key) {
  const auto& v = field(cfg, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::size_t get_count(const json& cfg, const char* key) {
  const auto v = get_integer(cfg, key);
  if (v < 1) throw ConfigError(std::string("'") + key + "' must be >= 1");
  return static_cast<std::size_t>(v);
}

std::uint64_t get_seed(const json& cfg) {
  const auto& v = field(cfg, "seed");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ConfigError("'seed' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::vector<std::size_t> get_indices(const json& cfg, const char* key = "indices") {
  const auto& v = field(cfg, key);
  std::vector<std::size_t> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer() || e.get<std::int64_t>() < 1)
        throw ConfigError(std::string("'") + key + "' entries must be integers >= 1");
      out.push_back(e.get<std::size_t>());
    }
  } else if (v.is_object()) {
    const auto from = get_count(v, "from");
    const auto to = get_count(v, "to");
    const std::size_t step = v.contains("step") ? get_count(v, "step") : 1;
    for (std::size_t n = from; n <= to; n += step) out.push_back(n);
  } else {
    throw ConfigError(std::string("'") + key + "' must be an array or {from, to, step}");
  }
  if (out.empty()) throw ConfigError(std::string("'") + key + "' is empty");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw ConfigError(std::string("'") + key + "' must be strictly increasing");
  return out;
}

Point parse_point(const Action& action, const json& v);

Point parse_point_for(const Action& action, const json& v) {
  switch (action.phase_space()) {
    case PhaseSpace::circle:
      if (!v.is_number()) throw ConfigError("circle point must be a number");
      return CirclePoint{v.get<double>()};
    case PhaseSpace::torus: {
      if (!v.is_array()) throw ConfigError("torus point must be an array");
      TorusPoint p;
      for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("torus coordinates must be numbers");
        p.x.push_back(e.get<double>());
      }
      return p;
    }
    case PhaseSpace::two_circle:
      if (!v.is_object()) throw ConfigError("two-circle point must be {component, x}");
      return TwoCirclePoint{static_cast<int>(get_integer(v, "component")), get_number(v, "x")};
    case PhaseSpace::line:
      if (!v.is_number_integer()) throw ConfigError("line point must be an integer site");
      return LinePoint{v.get<std::int64_t>()};
    case PhaseSpace::shift: {
      if (!v.is_number_integer()) throw ConfigError("shift point must be an integer configuration seed");
      return ShiftPoint{v.get<std::uint64_t>(), action.group().identity()};
    }
    case PhaseSpace::product: {
      const auto& prod = dynamic_cast<const ProductAction&>(action);
      if (!v.is_array() || v.size() != prod.factors().size())
        throw ConfigError("product point must list one point per factor");
      ProductPoint p;
      for (std::size_t i = 0; i < v.size(); ++i) p.parts.push_back(parse_point(*prod.factors()[i], v[i]));
      return p;
    }
  }
  throw ConfigError("unsupported phase space");
}

Point parse_point(const Action& action, const json& v) {
  Point p = parse_point_for(action, v);
  try {
    action.check_point(p);
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid point: ") + e.what());
  }
  return p;
}

Point get_point(const Action& action, const json& cfg) {
  if (!cfg.contains("point")) return action.default_point();
  return parse_point(action, cfg.at("point"));
}

ActionPtr get_system(const json& cfg, const char* key = "system") { return parse_action(get_string(cfg, key)); }

FolnerSequence get_sequence(const json& cfg, const GroupDescriptor& group, const char* key = "sequence") {
  return make_family(get_string(cfg, key), group);
}

Observable get_observable(const json& cfg, const ActionPtr& action, const char* key = "observable") {
  return observables::parse(get_string(cfg, key), action);
}

// ---- output --------------------------------------------------------------

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const json& config, const std::vector<std::string>& columns) : path_(path) {
    out_.open(path, std::ios::binary);
    if (!out_) throw ConfigError("cannot write '" + path.string() + "'");
    out_ << "# folnerlab " << kVersion << '\n' << "# config " << config.dump() << '\n';
    row(columns);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::ofstream out_;
};

fs::path write_report(const fs::path& dir, const std::string& name, const json& config, json body) {
  json doc;
  doc["folnerlab"] = std::string(kVersion);
  doc["config"] = config;
  doc["report"] = std::move(body);
  const auto path = dir / (name + ".json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
  return path;
}

std::string count(std::size_t v) { return std::to_string(v); }

void write_trace(CsvWriter& csv, const AverageTrace& trace) {
  for (const auto& p : trace.points) csv.row({count(p.n), count(p.cardinality), fmt(p.value), fmt(p.oscillation)});
}

const std::vector<std::string> kTraceColumns{"n", "cardinality", "value", "oscillation"};
const std::vector<std::string> kDensityColumns{"n", "cardinality", "hits", "ratio", "lower_envelope", "upper_envelope"};

json density_rows(CsvWriter& csv, const std::vector<DensityEstimate>& rows) {
  json arr = json::array();
  for (const auto& d : rows) {
    csv.row({count(d.n), count(d.cardinality), count(d.hits), fmt(d.ratio), fmt(d.lower_envelope),
             fmt(d.upper_envelope)});
    arr.push_back({{"n", d.n}, {"ratio", d.ratio}});
  }
  return arr;
}

json trace_summary(const AverageTrace& t) {
  return {{"final_value", t.points.back().value}, {"final_oscillation", t.final_oscillation()}, {"window", t.window}};
}

using Outputs = std::vector<fs::path>;
using Runner = std::function<Outputs(const json&, const fs::path&)>;

// ---- experiments ---------------------------------------------------------

Outputs run_folner_check(const json& cfg, const fs::path& dir) {
  const auto group = GroupDescriptor::parse(get_string(cfg, "group"));
  const auto seq = get_sequence(cfg, group);
  const auto indices = get_indices(cfg);
  const auto budget = element_budget();
  std::vector<Element> probes = group.generators();
  for (const auto& g : group.generators()) probes.push_back(group.inverse(g));
  CsvWriter csv(dir / "folner-check.csv", cfg,
                {"n", "cardinality", "boundary", "boundary_value", "tempelman", "tempelman_value", "shulman",
                 "shulman_value", "nested"});
  bool nested = true;
  std::optional<FiniteSubset> prev;
  json rows = json::array();
  for (const auto n : indices) {
    const FiniteSubset F = seq.at(n);
    Ratio boundary(0);
    for (const auto& g : probes) boundary = std::max(boundary, boundary_ratio(F, g));
    const auto cr = condition_ratios(seq, n, budget);
    if (prev && !is_subset(*prev, F)) nested = false;
    prev = F;
    csv.row({count(n), count(F.size()), to_string(boundary), fmt(to_double(boundary)), to_string(cr.tempelman),
             fmt(to_double(cr.tempelman)), to_string(cr.shulman), fmt(to_double(cr.shulman)),
             nested ? "true" : "false"});
    rows.push_back({{"n", n}, {"tempelman", to_string(cr.tempelman)}, {"shulman", to_string(cr.shulman)}});
  }
  json body{{"sequence", seq.label()}, {"group", group.name()}, {"nested", nested}, {"rows", rows}};
  return {csv.path(), write_report(dir, "folner-check", cfg, body)};
}

Outputs run_average(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto seq = get_sequence(cfg, action->group());
  const auto phi = get_observable(cfg, action);
  const auto x = get_point(*action, cfg);
  const auto indices = get_indices(cfg);
  const std::size_t window = cfg.contains("window") ? get_count(cfg, "window") : 5;
  const auto trace = average_trace(*action, seq, phi, x, indices, window);
  CsvWriter csv(dir / "average.csv", cfg, kTraceColumns);
  write_trace(csv, trace);
  return {csv.path(), write_report(dir, "average", cfg, trace_summary(trace))};
}

Outputs run_multiple(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto& G = action->group();
  const auto phi = get_observable(cfg, action);
  const auto x = get_point(*action, cfg);
  const auto indices = get_indices(cfg);
  const auto K = get_sequence(cfg, GroupDescriptor::integers());
  const auto& gs = field(cfg, "g");
  if (!gs.is_array() || gs.empty()) throw ConfigError("'g' must be a nonempty array of group elements");
  std::vector<Element> tuple;
  for (const auto& e : gs) {
    std::vector<std::int64_t> coords;
    if (e.is_number_integer()) coords.push_back(e.get<std::int64_t>());
    else if (e.is_array()) for (const auto& c : e) coords.push_back(c.get<std::int64_t>());
    else throw ConfigError("entries of 'g' must be integers or coordinate arrays");
    try {
      tuple.push_back(G.element(coords));
    } catch (const Error& err) {
      throw ConfigError(std::string("bad entry in 'g': ") + err.what());
    }
  }
  AverageTrace trace;
  for (const auto n : indices) {
    const auto Kn = K.at(n);
    trace.points.push_back({n, Kn.size(), multiple_average(*action, tuple, Kn, phi, x), 0.0});
  }
  update_oscillation(trace);
  CsvWriter csv(dir / "multiple.csv", cfg, kTraceColumns);
  write_trace(csv, trace);
  return {csv.path(), write_report(dir, "multiple", cfg, trace_summary(trace))};
}

Outputs run_product_average(const json& cfg, const fs::path& dir) {
  const auto& systems = field(cfg, "systems");
  const auto& sequences = field(cfg, "sequences");
  if (!systems.is_array() || !sequences.is_array() || systems.empty() || systems.size() != sequences.size())
    throw ConfigError("'systems' and 'sequences' must be arrays of equal nonzero length");
  std::vector<ActionPtr> actions;
  std::vector<FolnerSequence> seqs;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (!systems[i].is_string() || !sequences[i].is_string()) throw ConfigError("system and sequence specs are strings");
    actions.push_back(parse_action(systems[i].get<std::string>()));
    seqs.push_back(make_family(sequences[i].get<std::string>(), actions.back()->group()));
  }
  const auto phi = get_observable(cfg, actions.front());
  const auto x = get_point(*actions.front(), cfg);
  const auto indices = get_indices(cfg);
  AverageTrace trace;
  for (const auto n : indices) {
    std::size_t card = 1;
    for (const auto& s : seqs) card *= s.at(n).size();
    trace.points.push_back({n, card, iterated_product_average(actions, seqs, phi, x, n), 0.0});
  }
  update_oscillation(trace);
  CsvWriter csv(dir / "product-average.csv", cfg, kTraceColumns);
  write_trace(csv, trace);
  json body = trace_summary(trace);
  body["commutativity_defect"] = commutativity_defect(actions);
  return {csv.path(), write_report(dir, "product-average", cfg, body)};
}

meanlin::Matrix parse_matrix(const json& v) {
  if (!v.is_array() || v.empty()) throw ConfigError("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(v[0].is_array() ? v[0].size() : 0);
  meanlin::Matrix A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& r = v[static_cast<std::size_t>(i)];
    if (!r.is_array() || static_cast<Eigen::Index>(r.size()) != cols) throw ConfigError("matrix rows are ragged");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& e = r[static_cast<std::size_t>(j)];
      if (!e.is_number()) throw ConfigError("matrix entries must be numbers");
      A(i, j) = e.get<double>();
    }
  }
  return A;
}

json matrix_json(const meanlin::Matrix& A) {
  json out = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    out.push_back(row);
  }
  return out;
}

Outputs run_meanlin(const json& cfg, const fs::path& dir) {
  meanlin::Matrix T;
  if (cfg.contains("matrix_csv")) {
    std::ifstream in(get_string(cfg, "matrix_csv"));
    if (!in) throw ConfigError("cannot read matrix_csv");
    T = meanlin::read_matrix_csv(in);
  } else {
    T = parse_matrix(field(cfg, "matrix"));
  }
  const double beta = cfg.contains("beta") ? get_number(cfg, "beta") : 1.0;
  const auto indices = get_indices(cfg);
  const meanlin::OperatorFamily family({T}, beta);
  const auto duality = meanlin::duality_check(family);
  const auto P = meanlin::fixed_projection(T, beta);
  const auto cox = meanlin::cox_check({P}, {family});

  CsvWriter csv(dir / "meanlin.csv", cfg, {"n", "cesaro_error"});
  json errors = json::array();
  for (const auto n : indices) {
    const double err = meanlin::operator_norm(meanlin::cesaro_average(T, n, beta) - P);
    csv.row({count(n), fmt(err)});
    errors.push_back({{"n", n}, {"error", err}});
  }
  std::ofstream proj(dir / "projection.csv", std::ios::binary);
  if (!proj) throw ConfigError("cannot write projection.csv");
  proj << "# folnerlab " << kVersion << '\n' << "# config " << cfg.dump() << '\n';
  meanlin::write_matrix_csv(proj, P);

  json body{{"duality",
             {{"dimension", duality.dimension},
              {"vanishing", duality.vanishing},
              {"range_adjoint", duality.range_adjoint},
              {"range", duality.range},
              {"vanishing_adjoint", duality.vanishing_adjoint},
              {"dimensions_consistent", duality.dimensions_consistent},
              {"max_defect", duality.max_defect}}},
            {"projection", matrix_json(P)},
            {"cesaro", errors},
            {"cox", {{"norm", cox.norm}, {"applicable", cox.applicable}, {"conclusion", cox.conclusion}}}};
  return {csv.path(), dir / "projection.csv", write_report(dir, "meanlin", cfg, body)};
}

std::vector<Observable> get_dictionary(const json& cfg, const ActionPtr& action) {
  if (!cfg.contains("dictionary")) return observables::default_dictionary(action);
  const auto& v = cfg.at("dictionary");
  if (v.is_string() && v.get<std::string>() == "default") return observables::default_dictionary(action);
  if (!v.is_array() || v.empty()) throw ConfigError("'dictionary' must be \"default\" or a nonempty array");
  std::vector<Observable> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw ConfigError("dictionary entries must be observable specs");
    out.push_back(observables::parse(e.get<std::string>(), action));
  }
  return out;
}

Outputs run_decompose(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto seq = get_sequence(cfg, action->group());
  const auto dictionary = get_dictionary(cfg, action);
  const auto n = get_count(cfg, "n");
  const auto samples = get_count(cfg, "samples");
  const auto seed = get_seed(cfg);
  const auto& pts = field(cfg, "points");
  if (!pts.is_array() || pts.empty()) throw ConfigError("'points' must be a nonempty array");
  std::vector<Point> points;
  for (const auto& p : pts) points.push_back(parse_point(*action, p));

  CsvWriter csv(dir / "component.csv", cfg, {"point_id", "observable", "estimate", "oscillation"});
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto est = component_estimate(*action, seq, points[i], dictionary, n);
    for (std::size_t k = 0; k < est.labels.size(); ++k)
      csv.row({count(i), est.labels[k], fmt(est.estimates[k]), fmt(est.oscillation[k])});
  }
  const auto rows = disintegration_check(*action, seq, MeasureSampler(action), dictionary, n, samples, seed);
  const auto score = ergodicity_score(*action, seq, points, dictionary, n);
  json dis = json::array();
  for (const auto& r : rows) {
    json j{{"observable", r.label}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"diff", r.diff},
           {"tolerance", r.tolerance}, {"within_tolerance", r.within_tolerance}};
    j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
    dis.push_back(j);
  }
  json spread = json::array();
  for (std::size_t k = 0; k < score.labels.size(); ++k)
    spread.push_back({{"observable", score.labels[k]}, {"stddev", score.spread[k]}});
  json body{{"disintegration", dis}, {"ergodicity_score", score.score}, {"spread", spread}};
  return {csv.path(), write_report(dir, "decompose", cfg, body)};
}

Outputs run_khintchine(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto seq = get_sequence(cfg, action->group());
  const auto phi = get_observable(cfg, action);
  const auto indices = get_indices(cfg);
  KhintchineOptions opt;
  opt.epsilon = get_number(cfg, "epsilon");
  opt.seed = get_seed(cfg);
  if (cfg.contains("samples")) opt.sample_count = get_count(cfg, "samples");
  const auto rows = khintchine_density(*action, phi, seq, indices, MeasureSampler(action), opt);
  CsvWriter csv(dir / "khintchine.csv", cfg, kDensityColumns);
  json body{{"rows", density_rows(csv, rows)},
            {"finite_range_lower_envelope", rows.back().lower_envelope},
            {"exact_path", exact_correlation(*action, phi, action->group().identity()).has_value()}};
  return {csv.path(), write_report(dir, "khintchine", cfg, body)};
}

Outputs run_visit(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto seq = get_sequence(cfg, action->group());
  const auto phi = get_observable(cfg, action);
  const auto x = get_point(*action, cfg);
  const auto rows = visit_density(*action, x, phi, seq, get_indices(cfg));
  CsvWriter csv(dir / "visit.csv", cfg, kDensityColumns);
  json body{{"rows", density_rows(csv, rows)}, {"finite_range_lower_envelope", rows.back().lower_envelope}};
  return {csv.path(), write_report(dir, "visit", cfg, body)};
}

Outputs run_qwap(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto seq = get_sequence(cfg, action->group());
  const auto x = get_point(*action, cfg);
  const auto rows = qwap_density(*action, x, get_number(cfg, "epsilon"), seq, get_indices(cfg));
  CsvWriter csv(dir / "qwap.csv", cfg, kDensityColumns);
  json body{{"rows", density_rows(csv, rows)}, {"finite_range_lower_envelope", rows.back().lower_envelope}};
  return {csv.path(), write_report(dir, "qwap", cfg, body)};
}

Outputs run_dissipativity(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto seq = get_sequence(cfg, action->group());
  const auto phi = get_observable(cfg, action);
  const auto x = get_point(*action, cfg);
  const auto probe = dissipativity_probe(*action, phi, x, seq, get_indices(cfg));
  CsvWriter csv(dir / "dissipativity.csv", cfg, kTraceColumns);
  write_trace(csv, probe.trace);
  json body = trace_summary(probe.trace);
  json bounds = json::array();
  for (std::size_t i = 0; i < probe.bounds.size(); ++i)
    bounds.push_back({{"n", probe.trace.points[i].n},
                      {"bound", probe.bounds[i]},
                      {"within_bound", probe.trace.points[i].value <= probe.bounds[i]}});
  body["bounds"] = bounds;
  return {csv.path(), write_report(dir, "dissipativity", cfg, body)};
}

Outputs run_diverge_demo(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto phi = get_observable(cfg, action);
  const auto x = get_point(*action, cfg);
  const auto horizon = get_integer(cfg, "horizon");
  const auto indices = get_indices(cfg);
  const auto seq = adversarial_divergence_sequence(action, phi, x, horizon);
  const auto& G = action->group();
  CsvWriter csv(dir / "diverge-demo.csv", cfg,
                {"n", "cardinality", "orbit_index", "value", "boundary_plus", "boundary_minus"});
  json rows = json::array();
  for (const auto n : indices) {
    const auto F = seq.at(n);
    const double value = ergodic_average(*action, F, phi, x, true);
    const auto plus = boundary_ratio(F, G.element({1}));
    const auto minus = boundary_ratio(F, G.element({-1}));
    const auto orbit_index = F.row(F.size() - 1)[0];
    csv.row({count(n), count(F.size()), std::to_string(orbit_index), fmt(value), to_string(plus), to_string(minus)});
    rows.push_back({{"n", n}, {"value", value}, {"value_at_least_n", value >= static_cast<double>(n)}});
  }
  return {csv.path(), write_report(dir, "diverge-demo", cfg, {{"rows", rows}})};
}

Outputs run_perturb_check(const json& cfg, const fs::path& dir) {
  const auto action = get_system(cfg);
  const auto base = get_sequence(cfg, action->group(), "sequence");
  const auto pert = get_sequence(cfg, action->group(), "perturbed");
  const auto phi = get_observable(cfg, action);
  const auto x = get_point(*action, cfg);
  CsvWriter csv(dir / "perturb-check.csv", cfg,
                {"n", "cardinality", "perturbed_cardinality", "symmetric_difference", "average", "perturbed_average",
                 "lhs", "bound"});
  bool holds = true;
  for (const auto n : get_indices(cfg)) {
    const auto F = base.at(n);
    const auto C = pert.at(n);
    const auto r = perturbation_bound_check(*action, F, C, phi, x);
    holds = holds && r.lhs <= r.bound + 1e-12;
    csv.row({count(n), count(F.size()), count(C.size()), count(r.symmetric_difference), fmt(r.average_f),
             fmt(r.average_c), fmt(r.lhs), fmt(r.bound)});
  }
  return {csv.path(), write_report(dir, "perturb-check", cfg, {{"bound_holds", holds}})};
}

struct Experiment {
  CatalogEntry entry;
  Runner runner;
  std::function<json()> defaults;
};

std::string rotation(double alpha) { return "rotation:alpha=" + fmt(alpha); }

const std::vector<Experiment>& registry() {
  static const std::vector<Experiment> table = [] {
    std::vector<Experiment> t;
    t.push_back({{"folner-check", "Følner, Tempelman and Shulman ratios of a set sequence"},
                 run_folner_check,
                 [] {
                   return json{{"group", "Z"}, {"sequence", "djr"}, {"indices", {{"from", 1}, {"to", 20}}}, {"seed", 1}};
                 }});
    t.push_back({{"average", "mean ergodic theorem along Følner sequences: convergence trace of A(F_n, phi)(x)"},
                 run_average,
                 [] {
                   return json{{"system", rotation(kGolden)}, {"sequence", "intervals"}, {"observable", "cos"},
                               {"point", 0.0},          {"indices", {100, 1000, 10000}}, {"window", 5},
                               {"seed", 1}};
                 }});
    t.push_back({{"multiple", "multiple ergodic averages along t g_1, ..., t g_l for a Z-module action"},
                 run_multiple,
                 [] {
                   return json{{"system", rotation(kGolden)}, {"sequence", "intervals"},
                               {"observable", "const:c=1 + cos"}, {"g", {1, 2}},
                               {"point", 0.0}, {"indices", {1000, 10000, 100000}}, {"seed", 1}};
                 }});
    t.push_back({{"product-average", "mean ergodic theorem for commuting actions of a product group"},
                 run_product_average,
                 [] {
                   return json{{"systems",
                                {"torus:alpha=[" + fmt(kGolden) + ",0]", "torus:alpha=[0," + fmt(kSilver) + "]"}},
                               {"sequences", {"intervals", "intervals"}},
                               {"observable", "cos:coord=0 * cos:coord=1"},
                               {"point", {0.0, 0.0}},
                               {"indices", {10, 100, 1000}},
                               {"seed", 1}};
                 }});
    t.push_back({{"meanlin", "vanishing space and range duality, Cesàro averages and the fixed-vector projection"},
                 run_meanlin,
                 [] {
                   return json{{"matrix", {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}},
                               {"beta", 1.0},
                               {"indices", {3, 30, 300, 3000}},
                               {"seed", 1}};
                 }});
    t.push_back({{"decompose", "ergodic decomposition: component moments, disintegration identity and 0-1 law"},
                 run_decompose,
                 [] {
                   return json{{"system", "twocircle:a0=" + fmt(kGolden) + ",a1=" + fmt(kSilver)},
                               {"sequence", "intervals"},
                               {"dictionary", {"const:c=1", "component:j=1", "arc:a=0.3", "cos"}},
                               {"points",
                                {{{"component", 0}, {"x", 0.2}},
                                 {{"component", 0}, {"x", 0.55}},
                                 {{"component", 1}, {"x", 0.7}},
                                 {{"component", 1}, {"x", 0.05}}}},
                               {"n", 1000},
                               {"samples", 1000},
                               {"seed", 1}};
                 }});
    t.push_back({{"khintchine", "Khintchine recurrence: the set of large autocorrelations has positive density"},
                 run_khintchine,
                 [] {
                   return json{{"system", rotation(kGolden)}, {"sequence", "intervals"}, {"observable", "arc:a=0.3"},
                               {"epsilon", 0.01},           {"indices", {1000, 10000, 100000}},
                               {"samples", 10000},          {"seed", 1}};
                 }});
    t.push_back({{"visit", "positive recurrence: visit density of an orbit to a set of positive measure"},
                 run_visit,
                 [] {
                   return json{{"system", rotation(kGolden)}, {"sequence", "intervals"}, {"observable", "arc:a=0.25"},
                               {"point", 0.1},              {"indices", {1000, 10000, 100000}}, {"seed", 1}};
                 }});
    t.push_back({{"qwap", "quasi-weakly almost periodic points: density of epsilon-returns"},
                 run_qwap,
                 [] {
                   return json{{"system", rotation(kGolden)}, {"sequence", "intervals"}, {"epsilon", 0.05},
                               {"point", 0.1},              {"indices", {1000, 10000, 100000}}, {"seed", 1}};
                 }});
    t.push_back({{"dissipativity", "dissipative actions: averages of compactly supported observables vanish"},
                 run_dissipativity,
                 [] {
                   return json{{"system", "line"}, {"sequence", "intervals"}, {"observable", "tent:w=5"},
                               {"point", 0},       {"indices", {10, 100, 1000, 10000}}, {"seed", 1}};
                 }});
    t.push_back({{"diverge-demo", "L1 divergence of pointwise averages along a non-tempered Følner sequence"},
                 run_diverge_demo,
                 [] {
                   return json{{"system", rotation(kSilver)}, {"observable", "invsqrt"}, {"point", 0.3},
                               {"horizon", 10000000},       {"indices", {{"from", 5}, {"to", 50}}},
                               {"seed", 1}};
                 }});
    t.push_back({{"perturb-check", "averages are stable under Følner perturbations of vanishing relative size"},
                 run_perturb_check,
                 [] {
                   return json{{"system", rotation(kGolden)},
                               {"sequence", "intervals"},
                               {"perturbed", "perturb(base=intervals,d=tail-sqrt)"},
                               {"observable", "cos"},
                               {"point", 0.0},
                               {"indices", {10, 100, 1000, 10000}},
                               {"seed", 1}};
                 }});
    return t;
  }();
  return table;
}

const Experiment& find_experiment(std::string_view name) {
  for (const auto& e : registry())
    if (e.entry.name == name) return e;
  throw ConfigError("unknown experiment '" + std::string(name) + "' (see --list)");
}

}  // namespace

const std::vector<CatalogEntry>& list_experiments() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> out;
    for (const auto& e : registry()) out.push_back(e.entry);
    return out;
  }();
  return catalog;
}

json default_config(std::string_view experiment) {
  const auto& e = find_experiment(experiment);
  json cfg = e.defaults();
  cfg["experiment"] = e.entry.name;
  return cfg;
}

std::size_t element_budget() {
  const char* env = std::getenv("FOLNERLAB_BUDGET");
  if (!env || !*env) return kDefaultElementBudget;
  const auto v = detail::parse_int(env, "FOLNERLAB_BUDGET");
  if (v < 1) throw ConfigError("FOLNERLAB_BUDGET must be >= 1");
  return static_cast<std::size_t>(v);
}

std::vector<fs::path> run(const json& config, const fs::path& out_dir) {
  if (!config.is_object() || config.empty()) throw ConfigError("config must be a nonempty JSON object");
  const auto name = get_string(config, "experiment");
  const auto& e = find_experiment(name);
  get_seed(config);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir.string() + "'");
  try {
    return e.runner(config, out_dir);
  } catch (const json::exception& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
}

}  // namespace folnerlab::cli
