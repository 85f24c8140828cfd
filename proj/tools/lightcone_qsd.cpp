// SPDX-License-Identifier: Apache-2.0
//
// Scenario runner: overlap | kernel | covertime | distinguish | protocol.
// Configs are strict JSON (unknown keys rejected); outputs are plot-ready
// CSV plus archival JSON with deterministic byte layout.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcq/coverage.hpp"
#include "lcq/distinguish.hpp"
#include "lcq/errors.hpp"
#include "lcq/inner_product.hpp"
#include "lcq/pauli_jordan.hpp"
#include "lcq/polarization.hpp"
#include "lcq/position.hpp"
#include "lcq/protocol.hpp"
#include "lcq/report_io.hpp"

namespace {

using nlohmann::json;
using namespace lcq;

constexpr double kSpeedOfLight = 299792458.0;  // m/s, applied only at the CLI boundary

struct GlobalOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<long long> seed;
  std::string format = "both";  // csv | json | both
  bool quiet = false;
};

void say(const GlobalOpts& g, const std::string& line) {
  if (!g.quiet) std::cout << line << "\n";
}

json load_config(const GlobalOpts& g) {
  if (g.config_path.empty()) throw SchemaError("missing --config PATH");
  std::ifstream in(g.config_path);
  if (!in) throw SchemaError("cannot open config '" + g.config_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const std::exception& e) {
    throw SchemaError("config: invalid JSON: " + std::string(e.what()));
  }
}

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw SchemaError(path + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw SchemaError("unknown key '" + path + "." + it.key() + "'");
  }
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path + ": expected a number");
  return j.get<double>();
}

Vec3 parse_vec(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(path + ": expected [x,y,z]");
  return {require_number(j[0], path), require_number(j[1], path),
          require_number(j[2], path)};
}

// Unit system: "si" interprets config lengths in meters and times in
// seconds; the core always runs in natural units (c = 1, lengths in
// meters), so only times need rescaling at the boundary.
struct Units {
  bool si = false;
  double time_in(double t) const { return si ? t * kSpeedOfLight : t; }
  double time_out(double t) const { return si ? t / kSpeedOfLight : t; }
};

Units parse_units(const json& cfg, const std::string& path) {
  Units u;
  if (!cfg.contains("units")) return u;
  const json& j = cfg["units"];
  require_keys(j, path + ".units", {"system"});
  const std::string sys = j.value("system", "natural");
  if (sys == "si") {
    u.si = true;
  } else if (sys != "natural") {
    throw SchemaError(path + ".units.system: expected natural|si");
  }
  return u;
}

// Accepts either a family recipe (kind/mass/family/...) or a full terms
// document, both strict.
MomentumAmplitude parse_state(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  if (j.contains("terms") || j.contains("boost")) {
    return amplitude_from_json(j.dump());
  }
  require_keys(j, path,
               {"kind", "mass", "label", "family", "sigma", "rate", "momentum_center",
                "shift", "spin"});
  const std::string kind_name = j.value("kind", "scalar");
  const double mass = j.value("mass", 0.0);
  FieldKind kind;
  if (kind_name == "scalar") {
    kind = FieldKind::scalar(mass);
  } else if (kind_name == "dirac") {
    kind = FieldKind::dirac(mass);
  } else if (kind_name == "photon") {
    if (mass != 0.0) throw SchemaError(path + ".mass: photon mass must be 0");
    kind = FieldKind::photon();
  } else {
    throw SchemaError(path + ".kind: unknown kind '" + kind_name + "'");
  }
  const std::string family = j.value("family", "gaussian");
  const std::string label = j.value("label", family);
  const Vec3 center =
      j.contains("momentum_center") ? parse_vec(j["momentum_center"], path) : Vec3{};
  const Vec3 shift = j.contains("shift") ? parse_vec(j["shift"], path) : Vec3{};
  MomentumAmplitude amp;
  if (family == "gaussian") {
    amp = gaussian_packet(kind, j.value("sigma", 1.0), center, shift, label);
  } else if (family == "energy_exp") {
    if (center.norm2() != 0.0) {
      throw SchemaError(path + ": energy_exp does not take momentum_center");
    }
    amp = energy_exp_packet(kind, j.value("rate", 1.0), shift, label);
  } else {
    throw SchemaError(path + ".family: expected gaussian|energy_exp");
  }
  if (j.contains("spin")) {
    if (kind.type == FieldType::Scalar) {
      throw SchemaError(path + ".spin: scalar states carry no spin weights");
    }
    const json& js = j["spin"];
    if (!js.is_array() || js.size() != 2) {
      throw SchemaError(path + ".spin: expected [[re,im],[re,im]]");
    }
    for (int k = 0; k < 2; ++k) {
      if (!js[k].is_array() || js[k].size() != 2) {
        throw SchemaError(path + ".spin: expected [[re,im],[re,im]]");
      }
      amp.terms[0].spin[k] = {js[k][0].get<double>(), js[k][1].get<double>()};
    }
  }
  return amp;
}

void write_out(const GlobalOpts& g, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(g.out_dir);
  const std::string path = (std::filesystem::path(g.out_dir) / name).string();
  write_text_file(path, content);
  say(g, "wrote " + path);
}

// ---------------------------------------------------------------------------
// overlap
// ---------------------------------------------------------------------------

int cmd_overlap(const GlobalOpts& g) {
  const json cfg = load_config(g);
  require_keys(cfg, "config",
               {"units", "measure", "orthonormalize", "probabilities", "tol", "states"});
  (void)parse_units(cfg, "config");
  const std::string measure_name = cfg.value("measure", "lorentz");
  if (measure_name != "lorentz" && measure_name != "galilean") {
    throw SchemaError("config.measure: expected lorentz|galilean");
  }
  const Measure measure =
      measure_name == "lorentz" ? Measure::lorentz : Measure::galilean;
  const double tol = cfg.value("tol", 1e-9);
  if (!(tol > 0.0 && tol < 0.1)) throw SchemaError("config.tol: expected (0, 0.1)");
  if (!cfg.contains("states") || !cfg["states"].is_array() || cfg["states"].size() < 2 ||
      cfg["states"].size() > 8) {
    throw SchemaError("config.states: expected an array of 2..8 states");
  }
  std::vector<MomentumAmplitude> states;
  int idx = 0;
  for (const json& js : cfg["states"]) {
    states.push_back(parse_state(js, "config.states[" + std::to_string(idx++) + "]"));
  }
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (states[i].kind != states[0].kind) {
      throw SchemaError("config.states: all states must share kind and mass");
    }
  }

  if (cfg.value("orthonormalize", false)) {
    std::vector<MomentumAmplitude> ortho;
    for (auto& s : states) {
      MomentumAmplitude cur = normalize(s, measure, tol);
      for (const auto& prev : ortho) {
        const complexd c = inner_product(prev, cur, measure, tol);
        cur = cur.plus_scaled(prev, -c);
        cur = normalize(cur, measure, tol);
      }
      cur.label = s.label;
      ortho.push_back(cur);
    }
    states = ortho;
  }

  const GramMatrix gram = gram_matrix(states, measure, tol);
  std::vector<std::vector<double>> probs;
  if (cfg.value("probabilities", true)) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      probs.push_back(outcome_probabilities(states, static_cast<int>(i), measure, tol));
    }
  }

  JsonWriter w;
  w.begin_object();
  w.field("measure", measure_name);
  w.begin_array("labels");
  for (const auto& s : states) w.value(s.label);
  w.end_array();
  w.begin_array("gram_re");
  for (int i = 0; i < gram.n; ++i) {
    w.begin_array();
    for (int j = 0; j < gram.n; ++j) w.value(gram.at(i, j).real());
    w.end_array();
  }
  w.end_array();
  w.begin_array("gram_im");
  for (int i = 0; i < gram.n; ++i) {
    w.begin_array();
    for (int j = 0; j < gram.n; ++j) w.value(gram.at(i, j).imag());
    w.end_array();
  }
  w.end_array();
  if (!probs.empty()) {
    w.begin_array("outcome_probabilities");
    for (const auto& row : probs) {
      w.begin_array();
      for (double p : row) w.value(p);
      w.end_array();
    }
    w.end_array();
  }
  w.end_object();
  if (g.format != "csv") write_out(g, "overlap.json", w.str());

  if (g.format != "json") {
    CsvWriter csv({"i", "j", "re", "im"});
    for (int i = 0; i < gram.n; ++i) {
      for (int j = 0; j < gram.n; ++j) {
        csv.row({std::to_string(i), std::to_string(j),
                 format_csv_double(gram.at(i, j).real()),
                 format_csv_double(gram.at(i, j).imag())});
      }
    }
    write_out(g, "overlap.csv", csv.str());
  }
  say(g, "overlap: " + std::to_string(states.size()) + " states, measure " + measure_name);
  return 0;
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

int cmd_kernel(const GlobalOpts& g) {
  const json cfg = load_config(g);
  require_keys(cfg, "config", {"mass", "lambda2", "x0_sign", "sum"});
  if (!cfg.contains("mass")) throw SchemaError("config.mass: missing");
  const double mass = require_number(cfg["mass"], "config.mass");
  if (!(mass >= 0.0)) throw SchemaError("config.mass: must be >= 0");
  if (!cfg.contains("lambda2") || !cfg["lambda2"].is_array() || cfg["lambda2"].empty()) {
    throw SchemaError("config.lambda2: expected a non-empty array");
  }
  const int x0_sign = cfg.value("x0_sign", 1);
  if (x0_sign < -1 || x0_sign > 1) throw SchemaError("config.x0_sign: expected -1|0|1");
  const bool sum_mode = cfg.value("sum", false);

  CsvWriter csv({"lambda2", "interior_re", "interior_im", "exterior_re", "exterior_im",
                 "cone_delta_coeff", "asymptotic_ratio"});
  int idx = 0;
  for (const json& jl : cfg["lambda2"]) {
    const double l2 = require_number(jl, "config.lambda2[" + std::to_string(idx++) + "]");
    if (l2 == 0.0) throw SchemaError("config.lambda2: on-cone value 0 not allowed");
    const IntervalPoint pt{l2, x0_sign};
    const KernelValue kv =
        sum_mode ? pauli_jordan_value(mass, pt) : dplus_parts(mass, pt, +1);
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (!sum_mode && mass > 0.0 && l2 < 0.0) {
      ratio = tail_asymptotic_ratio(mass, std::sqrt(-l2));
    }
    csv.row_numeric({l2, kv.interior.real(), kv.interior.imag(), kv.exterior.real(),
                     kv.exterior.imag(), kv.cone_delta_coeff, ratio});
  }
  write_out(g, "kernel.csv", csv.str());
  say(g, "kernel: m=" + std::to_string(mass) + (sum_mode ? " (D+ + D-)" : " (D+)"));
  return 0;
}

// ---------------------------------------------------------------------------
// covertime
// ---------------------------------------------------------------------------

int cmd_covertime(const GlobalOpts& g) {
  const json cfg = load_config(g);
  require_keys(cfg, "config", {"units", "support", "observer", "beta_grid", "eps", "t0"});
  const Units units = parse_units(cfg, "config");
  if (!cfg.contains("support")) throw SchemaError("config.support: missing");
  const json& js = cfg["support"];
  const double eps = cfg.value("eps", 1e-3);
  if (!(eps > 0.0 && eps < 1.0)) throw SchemaError("config.eps: expected (0,1)");

  SpatialSupport support = SpatialSupport::ball({}, 0.0);
  const std::string type = js.value("type", "");
  if (type == "ball") {
    require_keys(js, "config.support", {"type", "center", "radius"});
    support = SpatialSupport::ball(
        js.contains("center") ? parse_vec(js["center"], "config.support.center") : Vec3{},
        require_number(js.at("radius"), "config.support.radius"));
  } else if (type == "interval") {
    require_keys(js, "config.support", {"type", "x_left", "x_right"});
    support = SpatialSupport::interval(
        require_number(js.at("x_left"), "config.support.x_left"),
        require_number(js.at("x_right"), "config.support.x_right"));
  } else if (type == "points") {
    require_keys(js, "config.support", {"type", "points"});
    if (!js.contains("points") || !js["points"].is_array() || js["points"].empty()) {
      throw SchemaError("config.support.points: expected a non-empty array");
    }
    PointCloud cloud;
    int idx = 0;
    for (const json& jp : js["points"]) {
      cloud.push_back(
          parse_vec(jp, "config.support.points[" + std::to_string(idx++) + "]"));
    }
    support = SpatialSupport::points(std::move(cloud));
  } else if (type == "state") {
    require_keys(js, "config.support", {"type", "state"});
    const MomentumAmplitude amp =
        normalize(parse_state(js.at("state"), "config.support.state"), Measure::lorentz);
    const double t0 = units.time_in(cfg.value("t0", 0.0));
    const PositionAmplitude phi =
        PositionAmplitude::transform(amp, t0, PositionConvention::half_density);
    const Vec3 center = phi.centroid();
    const double radius = epsilon_support_radius(phi, center, eps);
    support = SpatialSupport::ball(center, radius, eps);
  } else {
    throw SchemaError("config.support.type: expected ball|interval|points|state");
  }
  support.eps = eps;

  std::optional<Vec3> observer;
  if (cfg.contains("observer") && !cfg["observer"].is_string()) {
    observer = parse_vec(cfg["observer"], "config.observer");
  } else if (cfg.contains("observer") && cfg["observer"].get<std::string>() != "auto") {
    throw SchemaError("config.observer: expected \"auto\" or [x,y,z]");
  }

  const CoverageResult result = coverage_time(support, observer);

  std::vector<double> betas{0.0, 0.5, 0.9, 0.99, 0.999};
  if (cfg.contains("beta_grid")) {
    betas.clear();
    int idx = 0;
    for (const json& jb : cfg["beta_grid"]) {
      const double b = require_number(jb, "config.beta_grid[" + std::to_string(idx++) + "]");
      if (!(std::abs(b) < 1.0)) throw SchemaError("config.beta_grid: |beta| must be < 1");
      betas.push_back(b);
    }
  }
  // 1D frame cross-check; for 3D supports the segment is the support diameter
  const double length = 2.0 * result.t_min;

  JsonWriter w;
  w.begin_object();
  w.key("coverage");
  w.raw(coverage_result_json(result));
  if (units.si) w.field("t_min_seconds", units.time_out(result.t_min));
  w.begin_array("frame_check");
  for (double b : betas) {
    const FrameElapsed fe =
        length > 0.0 ? frame_elapsed_time_check(length, b) : FrameElapsed{0.0, 0.0};
    w.begin_object();
    w.field("beta", b);
    w.field("t_prime", fe.t_prime);
    w.field("t_original", fe.t_original);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  write_out(g, "covertime.json", w.str());
  say(g, "covertime: t_min = " + format_json_double(result.t_min));
  return 0;
}

// ---------------------------------------------------------------------------
// distinguish / protocol share the pair construction
// ---------------------------------------------------------------------------

PositionPair parse_pair(const json& cfg, const Units& units, double* t0_out) {
  if (!cfg.contains("pair")) throw SchemaError("config.pair: missing");
  const json& jp = cfg["pair"];
  require_keys(jp, "config.pair", {"state_1", "state_2", "orthonormalize"});
  if (!jp.contains("state_1") || !jp.contains("state_2")) {
    throw SchemaError("config.pair: state_1 and state_2 are required");
  }
  MomentumAmplitude s1 = parse_state(jp["state_1"], "config.pair.state_1");
  MomentumAmplitude s2 = parse_state(jp["state_2"], "config.pair.state_2");
  if (jp.value("orthonormalize", true)) {
    auto pair = make_orthogonal_pair(s1, s2, Measure::lorentz);
    s1 = pair.first;
    s2 = pair.second;
  }
  const double t0 = units.time_in(cfg.value("t0", 0.0));
  *t0_out = t0;
  const double eps = cfg.value("eps_support", 1e-3);
  if (!(eps > 0.0 && eps < 1.0)) throw SchemaError("config.eps_support: expected (0,1)");
  return make_position_pair(s1, s2, t0, eps);
}

Vec3 parse_observer(const json& cfg, const PositionPair& pair) {
  if (!cfg.contains("observer") || (cfg["observer"].is_string() &&
                                    cfg["observer"].get<std::string>() == "auto")) {
    return pair.default_observer;
  }
  if (cfg["observer"].is_string()) {
    throw SchemaError("config.observer: expected \"auto\" or [x,y,z]");
  }
  return parse_vec(cfg["observer"], "config.observer");
}

int cmd_distinguish(const GlobalOpts& g) {
  const json cfg = load_config(g);
  require_keys(cfg, "config",
               {"units", "pair", "observer", "t_grid", "eps_support", "t0"});
  const Units units = parse_units(cfg, "config");
  double t0 = 0.0;
  const PositionPair pair = parse_pair(cfg, units, &t0);
  const Vec3 observer = parse_observer(cfg, pair);

  std::vector<double> t_grid;
  if (!cfg.contains("t_grid")) throw SchemaError("config.t_grid: missing");
  const json& jt = cfg["t_grid"];
  if (jt.is_array()) {
    int idx = 0;
    for (const json& v : jt) {
      t_grid.push_back(
          units.time_in(require_number(v, "config.t_grid[" + std::to_string(idx++) + "]")));
    }
  } else {
    require_keys(jt, "config.t_grid", {"min", "max", "count"});
    const double lo = units.time_in(require_number(jt.at("min"), "config.t_grid.min"));
    const double hi = units.time_in(require_number(jt.at("max"), "config.t_grid.max"));
    const int count = jt.value("count", 10);
    if (!(hi > lo) || count < 2 || count > 2000) {
      throw SchemaError("config.t_grid: need max > min and 2 <= count <= 2000");
    }
    for (int i = 0; i < count; ++i) {
      t_grid.push_back(lo + (hi - lo) * i / (count - 1));
    }
  }

  const DistinguishReport report = error_curve(pair, observer, t_grid);
  if (g.format != "json") write_out(g, "distinguish.csv", distinguish_report_csv(report));
  if (g.format != "csv") write_out(g, "distinguish.json", distinguish_report_json(report));
  std::string fit_note = "no fit (too few above-floor samples)";
  if (report.fit) {
    fit_note = "fit slope " + format_json_double(report.fit->slope) + ", R^2 " +
               format_json_double(report.fit->r_squared);
  }
  say(g, "distinguish: " + std::to_string(t_grid.size()) + " durations, " + fit_note);
  return 0;
}

int cmd_protocol(const GlobalOpts& g) {
  const json cfg = load_config(g);
  require_keys(cfg, "config",
               {"units", "pair", "observer", "T", "rounds", "seed", "policy",
                "eps_support", "t0"});
  const Units units = parse_units(cfg, "config");
  double t0 = 0.0;
  const PositionPair pair = parse_pair(cfg, units, &t0);
  const Vec3 observer = parse_observer(cfg, pair);
  if (!cfg.contains("T")) throw SchemaError("config.T: missing");
  const double T = units.time_in(require_number(cfg["T"], "config.T"));
  if (!(T >= 0.0)) throw SchemaError("config.T: must be >= 0");
  const long long rounds = cfg.value("rounds", 0LL);
  if (rounds < 1 || rounds > 100000000LL) {
    throw SchemaError("config.rounds: expected 1..1e8");
  }
  long long seed = cfg.value("seed", -1LL);
  if (g.seed) seed = *g.seed;
  if (seed < 0) throw SchemaError("config.seed: a nonnegative seed is required");
  const std::string policy_name = cfg.value("policy", "discard");
  if (policy_name != "discard" && policy_name != "error") {
    throw SchemaError("config.policy: expected discard|error");
  }
  const InconclusivePolicy policy = policy_name == "error" ? InconclusivePolicy::error
                                                           : InconclusivePolicy::discard;

  const GramMatrix gram = truncated_gram(pair, {observer, T});
  const Confusion conf = confusion_matrix(gram, 2e-4 + 10.0 * pair.floor);
  const ProtocolStats stats = protocol_noise_sim(
      conf.c, rounds, static_cast<std::uint64_t>(seed), policy);

  JsonWriter w;
  w.begin_object();
  w.field("T", T);
  w.begin_array("observer");
  w.value(observer.x).value(observer.y).value(observer.z);
  w.end_array();
  w.field("C11", conf.c[0]);
  w.field("C12", conf.c[1]);
  w.field("C21", conf.c[2]);
  w.field("C22", conf.c[3]);
  w.field("eps", conf.eps);
  w.key("stats");
  w.raw(protocol_stats_json(stats));
  w.end_object();
  write_out(g, "protocol.json", w.str());
  say(g, "protocol: qber = " + format_json_double(stats.qber) + " (" +
             std::to_string(stats.wrong) + " wrong / " +
             std::to_string(stats.correct + stats.wrong) + " conclusive)");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relativistic field-state distinguishability toolkit"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--config", g.config_path, "scenario config JSON")->expected(1);
  app.add_option("--out", g.out_dir, "output directory");
  long long seed_opt = -1;
  app.add_option("--seed", seed_opt, "override the config seed");
  app.add_option("--format", g.format, "csv|json|both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_flag("--quiet", g.quiet, "suppress the stdout summary");

  auto* overlap = app.add_subcommand("overlap", "Gram matrix and outcome probabilities");
  auto* kernel = app.add_subcommand("kernel", "commutator kernel decomposition table");
  auto* covertime = app.add_subcommand("covertime", "light-cone coverage time");
  auto* distinguish = app.add_subcommand("distinguish", "finite-time error curve eps(T)");
  auto* protocol = app.add_subcommand("protocol", "Monte Carlo protocol noise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (seed_opt >= 0) g.seed = seed_opt;

  try {
    if (overlap->parsed()) return cmd_overlap(g);
    if (kernel->parsed()) return cmd_kernel(g);
    if (covertime->parsed()) return cmd_covertime(g);
    if (distinguish->parsed()) return cmd_distinguish(g);
    if (protocol->parsed()) return cmd_protocol(g);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
