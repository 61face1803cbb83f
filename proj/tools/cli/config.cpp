#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "graphmark/error.hpp"
#include "toml.hpp"

namespace graphmark::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json toml_to_json(const toml::node& node) {
  if (const auto* t = node.as_table()) {
    json obj = json::object();
    for (const auto& [k, v] : *t) obj[std::string(k.str())] = toml_to_json(v);
    return obj;
  }
  if (const auto* a = node.as_array()) {
    json arr = json::array();
    for (const auto& v : *a) arr.push_back(toml_to_json(v));
    return arr;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  std::ostringstream os;
  node.visit([&](auto&& v) { os << v; });
  return os.str();
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown field '" + join(where, k) + "'");
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& table(const json& obj, const char* key, const std::string& where) {
  static const json empty = json::object();
  const json* v = find(obj, key);
  if (!v) return empty;
  if (!v->is_object()) throw ConfigError("field '" + join(where, key) + "' must be a table");
  return *v;
}

std::optional<double> number(const json& obj, const char* key, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) return std::nullopt;
  if (!v->is_number()) throw ConfigError("field '" + join(where, key) + "' must be a number");
  return v->get<double>();
}

std::optional<std::string> string(const json& obj, const char* key, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) return std::nullopt;
  if (!v->is_string()) throw ConfigError("field '" + join(where, key) + "' must be a string");
  return v->get<std::string>();
}

std::optional<std::int64_t> integer(const json& obj, const char* key, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) return std::nullopt;
  if (!v->is_number_integer()) {
    throw ConfigError("field '" + join(where, key) + "' must be an integer");
  }
  return v->get<std::int64_t>();
}

std::optional<std::uint64_t> seed_field(const json& obj, const char* key, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) return std::nullopt;
  if (v->is_number_unsigned()) return v->get<std::uint64_t>();
  if (v->is_number_integer() && v->get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v->get<std::int64_t>());
  }
  throw ConfigError("field '" + join(where, key) + "' must be a nonnegative integer");
}

double positive(std::optional<double> v, double fallback, const std::string& field) {
  const double x = v.value_or(fallback);
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("field '" + field + "' must be positive");
  return x;
}

template <class T, class Parse>
T named(const std::optional<std::string>& s, T fallback, Parse parse, const std::string& field) {
  if (!s) return fallback;
  auto v = parse(*s);
  if (!v) throw ConfigError("field '" + field + "' has unknown value '" + *s + "'");
  return *v;
}

std::optional<PaddingPolicy> parse_padding(std::string_view s) {
  if (s == "auto") return PaddingPolicy::auto_pad;
  if (s == "require_equal") return PaddingPolicy::require_equal_order;
  return std::nullopt;
}

std::string_view padding_name(PaddingPolicy p) {
  return p == PaddingPolicy::auto_pad ? "auto" : "require_equal";
}

std::optional<EnvelopeStatistic> parse_statistic(std::string_view s) {
  if (s == "mark_correlation") return EnvelopeStatistic::mark_correlation;
  if (s == "K") return EnvelopeStatistic::weighted_k;
  if (s == "C") return EnvelopeStatistic::weighted_c;
  return std::nullopt;
}

std::string_view statistic_name(EnvelopeStatistic s) {
  switch (s) {
    case EnvelopeStatistic::mark_correlation: return "mark_correlation";
    case EnvelopeStatistic::weighted_k: return "K";
    case EnvelopeStatistic::weighted_c: return "C";
  }
  return "mark_correlation";
}

Window parse_window(const json& j, const std::string& where) {
  allow_keys(j, where, {"xmin", "xmax", "ymin", "ymax"});
  const double xmin = number(j, "xmin", where).value_or(0.0);
  const double xmax = number(j, "xmax", where).value_or(1.0);
  const double ymin = number(j, "ymin", where).value_or(0.0);
  const double ymax = number(j, "ymax", where).value_or(1.0);
  if (!(xmax > xmin) || !(ymax > ymin)) {
    throw ConfigError("field '" + where + "' needs xmax > xmin and ymax > ymin");
  }
  return Window(xmin, xmax, ymin, ymax);
}

}  // namespace

json read_config_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (path.extension() == ".json") {
    try {
      json j = json::parse(text);
      if (!j.is_object()) throw ConfigError(path.string() + ": top level must be an object");
      return j;
    } catch (const json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  try {
    toml::table t = toml::parse(text, path.string());
    return toml_to_json(t);
  } catch (const toml::parse_error& e) {
    throw ConfigError(path.string() + ":" + std::to_string(e.source().begin.line) + ": " +
                      std::string(e.description()));
  }
}

MetricSpec parse_metric_spec(const json& j, const std::string& field) {
  MetricSpec spec;
  if (j.is_string()) {
    spec.kind = named(std::optional<std::string>(j.get<std::string>()), spec.kind,
                      parse_metric_kind, field);
    return spec;
  }
  if (!j.is_object()) throw ConfigError("field '" + field + "' must be a string or a table");
  allow_keys(j, field, {"kind", "delta", "eps", "sigma", "xi", "padding"});
  spec.kind = named(string(j, "kind", field), spec.kind, parse_metric_kind, join(field, "kind"));
  spec.delta = named(string(j, "delta", field), spec.delta, parse_delta_kind, join(field, "delta"));
  if (auto eps = number(j, "eps", field)) spec.eps = positive(eps, 0.0, join(field, "eps"));
  spec.sigma = positive(number(j, "sigma", field), spec.sigma, join(field, "sigma"));
  if (const json* xi = find(j, "xi")) {
    if (!(xi->is_string() && xi->get<std::string>() == "auto")) {
      spec.xi = positive(number(j, "xi", field), 0.0, join(field, "xi"));
    }
  }
  spec.padding =
      named(string(j, "padding", field), spec.padding, parse_padding, join(field, "padding"));
  return spec;
}

SimulationConfig parse_simulation_config(const json& j) {
  allow_keys(j, "", {"seed", "window", "ground", "marks"});
  SimulationConfig cfg;
  cfg.seed = seed_field(j, "seed", "").value_or(0);
  cfg.window = parse_window(table(j, "window", ""), "window");

  const json& g = table(j, "ground", "");
  const std::string gkind = string(g, "kind", "ground").value_or("poisson");
  if (gkind == "poisson") {
    allow_keys(g, "ground", {"kind", "lambda", "fixed_n"});
    PoissonGround p;
    p.lambda = positive(number(g, "lambda", "ground"), p.lambda, "ground.lambda");
    if (auto n = integer(g, "fixed_n", "ground")) {
      if (*n < 0) throw ConfigError("field 'ground.fixed_n' must be nonnegative");
      p.fixed_n = static_cast<std::size_t>(*n);
    }
    cfg.ground = p;
  } else if (gkind == "strauss") {
    allow_keys(g, "ground", {"kind", "beta", "gamma", "radius", "n_iter"});
    StraussGround s;
    s.beta = positive(number(g, "beta", "ground"), s.beta, "ground.beta");
    s.gamma = number(g, "gamma", "ground").value_or(s.gamma);
    if (!(s.gamma >= 0.0 && s.gamma <= 1.0)) {
      throw ConfigError("field 'ground.gamma' must lie in [0, 1]");
    }
    s.radius = positive(number(g, "radius", "ground"), s.radius, "ground.radius");
    const auto iters = integer(g, "n_iter", "ground").value_or(s.n_iter);
    if (iters < 0 || iters > 2'000'000'000) {
      throw ConfigError("field 'ground.n_iter' out of range");
    }
    s.n_iter = static_cast<int>(iters);
    cfg.ground = s;
  } else if (gkind == "thomas") {
    allow_keys(g, "ground", {"kind", "lambda_p", "sigma", "mu"});
    ThomasGround t;
    t.lambda_p = positive(number(g, "lambda_p", "ground"), t.lambda_p, "ground.lambda_p");
    t.sigma = positive(number(g, "sigma", "ground"), t.sigma, "ground.sigma");
    t.mu = positive(number(g, "mu", "ground"), t.mu, "ground.mu");
    cfg.ground = t;
  } else {
    throw ConfigError("field 'ground.kind' has unknown value '" + gkind + "'");
  }

  const json& m = table(j, "marks", "");
  allow_keys(m, "marks", {"kind", "n_vertices", "p", "adjacency"});
  const std::string mkind = string(m, "kind", "marks").value_or("er_const");
  const auto nv = integer(m, "n_vertices", "marks").value_or(25);
  if (nv < 2 || nv > 100000) throw ConfigError("field 'marks.n_vertices' must be at least 2");
  if (mkind == "er_const") {
    const double p = number(m, "p", "marks").value_or(0.5);
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("field 'marks.p' must lie in (0, 1)");
    cfg.marks = ErConstMarks{static_cast<int>(nv), p};
  } else if (mkind == "er_boundary") {
    cfg.marks = ErBoundaryMarks{static_cast<int>(nv)};
  } else if (mkind == "none") {
    cfg.marks = NoMarks{};
  } else {
    throw ConfigError("field 'marks.kind' has unknown value '" + mkind + "'");
  }
  const std::string adj = string(m, "adjacency", "marks").value_or("binary");
  if (adj == "binary") {
    cfg.adjacency = AdjacencyMode::binary;
  } else if (adj == "degree_weighted") {
    cfg.adjacency = AdjacencyMode::degree_weighted;
  } else {
    throw ConfigError("field 'marks.adjacency' has unknown value '" + adj + "'");
  }
  return cfg;
}

AnalysisConfig parse_analysis_config(const json& j) {
  allow_keys(j, "", {"statistic", "test_function", "estimation", "envelope"});
  AnalysisConfig cfg;
  cfg.statistic = named(string(j, "statistic", ""), cfg.statistic, parse_statistic, "statistic");

  const std::string tw = "test_function";
  const json& t = table(j, "test_function", "");
  allow_keys(t, tw, {"kind", "normalization", "metric", "matrix", "fbp_eps", "norm", "padding"});
  TestFunctionSpec& tf = cfg.test_function;
  tf.kind = named(string(t, "kind", tw), tf.kind, parse_test_function_kind, join(tw, "kind"));
  if (auto n = string(t, "normalization", tw)) {
    if (*n == "raw") {
      tf.normalization = Normalization::raw;
    } else if (*n == "kappa") {
      tf.normalization = Normalization::kappa;
    } else {
      throw ConfigError("field 'test_function.normalization' has unknown value '" + *n + "'");
    }
  }
  if (const json* m = find(t, "metric")) {
    tf.metric = parse_metric_spec(*m, join(tw, "metric"));
  } else {
    tf.metric.kind = MetricKind::ipsen_mikhailov;
  }
  tf.metric.padding =
      named(string(t, "padding", tw), tf.metric.padding, parse_padding, join(tw, "padding"));
  tf.rep.matrix = named(string(t, "matrix", tw), tf.rep.matrix, parse_matrix_rep, join(tw, "matrix"));
  if (auto eps = number(t, "fbp_eps", tw)) tf.rep.eps = positive(eps, 0.0, join(tw, "fbp_eps"));
  if (const json* n = find(t, "norm")) {
    if (n->is_string() && n->get<std::string>() == "frobenius") {
      tf.norm = {NormKind::frobenius, 2.0};
    } else if (n->is_number() && n->get<double>() >= 1.0 && std::isfinite(n->get<double>())) {
      tf.norm = {NormKind::entrywise_p, n->get<double>()};
    } else {
      throw ConfigError("field 'test_function.norm' must be \"frobenius\" or a number p >= 1");
    }
  }

  const std::string ew = "estimation";
  const json& e = table(j, "estimation", "");
  allow_keys(e, ew, {"r_grid", "r_max", "grid_points", "kernel", "bandwidth", "edge_correction"});
  EstimationConfig& est = cfg.estimation;
  if (const json* g = find(e, "r_grid")) {
    if (!g->is_array() || g->empty()) throw ConfigError("field 'estimation.r_grid' must be a list");
    for (const auto& v : *g) {
      if (!v.is_number()) throw ConfigError("field 'estimation.r_grid' must hold numbers");
      est.r_grid.push_back(v.get<double>());
    }
    for (std::size_t k = 0; k < est.r_grid.size(); ++k) {
      if (!(est.r_grid[k] > 0.0) || (k > 0 && !(est.r_grid[k] > est.r_grid[k - 1]))) {
        throw ConfigError("field 'estimation.r_grid' must be positive and strictly increasing");
      }
    }
  }
  if (auto rm = number(e, "r_max", ew)) cfg.r_max = positive(rm, 0.0, "estimation.r_max");
  if (auto gp = integer(e, "grid_points", ew)) {
    if (*gp < 1 || *gp > 1'000'000) throw ConfigError("field 'estimation.grid_points' out of range");
    cfg.grid_points = static_cast<int>(*gp);
  }
  est.kernel = named(string(e, "kernel", ew), est.kernel, parse_kernel_kind, join(ew, "kernel"));
  if (const json* b = find(e, "bandwidth")) {
    if (!(b->is_string() && b->get<std::string>() == "auto")) {
      est.bandwidth = positive(number(e, "bandwidth", ew), 0.0, "estimation.bandwidth");
    }
  }
  est.edge_correction = named(string(e, "edge_correction", ew), est.edge_correction,
                              parse_edge_correction, join(ew, "edge_correction"));

  const std::string vw = "envelope";
  const json& v = table(j, "envelope", "");
  allow_keys(v, vw, {"s", "alpha", "seed"});
  if (auto s = integer(v, "s", vw)) {
    if (*s < 1) throw ConfigError("field 'envelope.s' must be at least 1");
    cfg.s = static_cast<std::size_t>(*s);
  }
  if (auto a = number(v, "alpha", vw)) {
    if (!(*a > 0.0 && *a < 1.0)) throw ConfigError("field 'envelope.alpha' must lie in (0, 1)");
    cfg.alpha = *a;
  }
  cfg.seed = seed_field(v, "seed", vw).value_or(0);
  return cfg;
}

ordered_json to_json(const MetricSpec& spec) {
  ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["delta"] = to_string(spec.delta);
  j["eps"] = spec.eps ? ordered_json(*spec.eps) : ordered_json("auto");
  j["sigma"] = spec.sigma;
  j["xi"] = spec.xi ? ordered_json(*spec.xi) : ordered_json("auto");
  j["padding"] = padding_name(spec.padding);
  return j;
}

ordered_json to_json(const SimulationConfig& cfg) {
  ordered_json j;
  j["seed"] = cfg.seed;
  j["window"] = {{"xmin", cfg.window.xmin()},
                 {"xmax", cfg.window.xmax()},
                 {"ymin", cfg.window.ymin()},
                 {"ymax", cfg.window.ymax()}};
  ordered_json g;
  if (const auto* p = std::get_if<PoissonGround>(&cfg.ground)) {
    g["kind"] = "poisson";
    g["lambda"] = p->lambda;
    if (p->fixed_n) g["fixed_n"] = *p->fixed_n;
  } else if (const auto* s = std::get_if<StraussGround>(&cfg.ground)) {
    g["kind"] = "strauss";
    g["beta"] = s->beta;
    g["gamma"] = s->gamma;
    g["radius"] = s->radius;
    g["n_iter"] = s->n_iter;
  } else {
    const auto& t = std::get<ThomasGround>(cfg.ground);
    g["kind"] = "thomas";
    g["lambda_p"] = t.lambda_p;
    g["sigma"] = t.sigma;
    g["mu"] = t.mu;
  }
  j["ground"] = g;
  ordered_json m;
  if (const auto* c = std::get_if<ErConstMarks>(&cfg.marks)) {
    m["kind"] = "er_const";
    m["n_vertices"] = c->n_vertices;
    m["p"] = c->p;
  } else if (const auto* b = std::get_if<ErBoundaryMarks>(&cfg.marks)) {
    m["kind"] = "er_boundary";
    m["n_vertices"] = b->n_vertices;
  } else {
    m["kind"] = "none";
  }
  m["adjacency"] = cfg.adjacency == AdjacencyMode::binary ? "binary" : "degree_weighted";
  j["marks"] = m;
  return j;
}

ordered_json to_json(const AnalysisConfig& cfg) {
  ordered_json j;
  j["statistic"] = statistic_name(cfg.statistic);
  const TestFunctionSpec& tf = cfg.test_function;
  ordered_json t;
  t["kind"] = to_string(tf.kind);
  t["normalization"] = tf.normalization == Normalization::raw ? "raw" : "kappa";
  t["metric"] = to_json(tf.metric);
  t["matrix"] = to_string(tf.rep.matrix);
  t["fbp_eps"] = tf.rep.eps ? ordered_json(*tf.rep.eps) : ordered_json("auto");
  t["norm"] = tf.norm.kind == NormKind::frobenius ? ordered_json("frobenius") : ordered_json(tf.norm.p);
  t["padding"] = padding_name(tf.metric.padding);
  j["test_function"] = t;
  ordered_json e;
  if (!cfg.estimation.r_grid.empty()) e["r_grid"] = cfg.estimation.r_grid;
  e["r_max"] = cfg.r_max ? ordered_json(*cfg.r_max) : ordered_json("auto");
  e["grid_points"] = cfg.grid_points;
  e["kernel"] = to_string(cfg.estimation.kernel);
  e["bandwidth"] =
      cfg.estimation.bandwidth ? ordered_json(*cfg.estimation.bandwidth) : ordered_json("auto");
  e["edge_correction"] = to_string(cfg.estimation.edge_correction);
  j["estimation"] = e;
  j["envelope"] = {{"s", cfg.s}, {"alpha", cfg.alpha}, {"seed", cfg.seed}};
  return j;
}

std::vector<double> resolve_grid(const AnalysisConfig& cfg, const Window& w) {
  if (!cfg.estimation.r_grid.empty()) return cfg.estimation.r_grid;
  if (!cfg.r_max) return default_r_grid(w, cfg.grid_points);
  std::vector<double> r(static_cast<std::size_t>(cfg.grid_points));
  for (int k = 0; k < cfg.grid_points; ++k) r[k] = *cfg.r_max * (k + 1) / cfg.grid_points;
  return r;
}

std::string config_digest(const ordered_json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace graphmark::cli
