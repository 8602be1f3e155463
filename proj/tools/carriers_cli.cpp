// Command-line front end: junta enumeration, polytope reports, membership
// certificates, violation optimization, reproducible scans, and the exact
// second-order optimum. Exit codes: 0 success / member, 1 negative verdict,
// 2 usage or data error, 3 resource budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "carriers/carriers.hpp"

namespace {

using namespace carriers;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

void emit_error(const std::string& message, int code) {
  Json err;
  err["error"] = message;
  err["code"] = code;
  std::cerr << err.dump() << "\n";
}

uint64_t env_budget(const char* name, uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return std::strtoull(v, nullptr, 10);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

// --- scan --------------------------------------------------------------------

struct ScanConfig {
  int n_lo = 4, n_hi = 6;
  std::vector<int> d_list;
  std::vector<std::string> modes = {"d1-sym", "d1-asym", "d2-sym", "d2-free", "theorem1", "theorem2"};
  int restarts = 64;
  uint64_t seed = 0;
  std::string output_path = "-";
};

ScanConfig parse_scan_config(const Json& j) {
  ScanConfig cfg;
  if (j.contains("n_range")) {
    const auto& r = j.at("n_range");
    cfg.n_lo = r.at(0).get<int>();
    cfg.n_hi = r.at(1).get<int>();
  }
  if (j.contains("d_list")) cfg.d_list = j.at("d_list").get<std::vector<int>>();
  if (j.contains("modes")) cfg.modes = j.at("modes").get<std::vector<std::string>>();
  if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
  if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
  if (cfg.n_lo < 2 || cfg.n_hi > 20 || cfg.n_lo > cfg.n_hi)
    throw std::invalid_argument("scan n_range must lie within [2, 20]");
  if (cfg.restarts < 1) throw std::invalid_argument("scan needs restarts >= 1");
  return cfg;
}

struct ScanRow {
  int n = 0;
  std::string mode;
  double delta = 0.0;
  std::string delta_exact;  // "p/q" when closed-form
  std::string source;       // numeric | closed-form
};

std::optional<ScanRow> compute_scan_row(int n, const std::string& mode, const ScanConfig& cfg) {
  ScanRow row;
  row.n = n;
  row.mode = mode;
  if (mode == "theorem1") {
    row.delta = optimal_symmetric_violation(n);
    row.delta_exact = rational_to_string(optimal_symmetric_violation_exact(n));
    row.source = "closed-form";
    return row;
  }
  if (mode == "theorem2") {
    if (n < 4) return std::nullopt;  // formula valid for N > 3
    Rational d = second_order_violation_bound(n);
    row.delta = static_cast<double>(d);
    row.delta_exact = rational_to_string(d);
    row.source = "closed-form";
    return row;
  }
  ViolationOptions opts;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  int d = 0;
  if (mode == "d1-sym") {
    d = 1;
    opts.symmetric_weights = true;
  } else if (mode == "d1-asym") {
    d = 1;
  } else if (mode == "d2-sym") {
    d = 2;
    opts.symmetric_weights = true;
    opts.symmetric_unitaries = true;
  } else if (mode == "d2-free") {
    d = 2;
  } else if (mode.size() > 6 && mode.front() == 'd' && mode.substr(mode.size() - 5) == "-free") {
    d = std::stoi(mode.substr(1, mode.size() - 6));
  } else {
    throw std::invalid_argument("unknown scan mode: " + mode);
  }
  if (d < 1) throw std::invalid_argument("scan mode needs d >= 1");
  row.delta = optimize_violation(n, d, opts).delta;
  row.source = "numeric";
  return row;
}

std::string run_scan(const ScanConfig& cfg) {
  std::vector<std::string> modes = cfg.modes;
  for (int d : cfg.d_list) {
    std::string m = "d" + std::to_string(d) + "-free";
    bool present = false;
    for (const auto& existing : modes) present = present || existing == m;
    if (!present && d != 1 && d != 2) modes.push_back(m);
  }

  struct Spec {
    int n;
    std::string mode;
  };
  std::vector<Spec> specs;
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
    for (const auto& m : modes) specs.push_back({n, m});

  auto rows = detail::parallel_map(static_cast<int>(specs.size()), [&](int i) {
    return compute_scan_row(specs[i].n, specs[i].mode, cfg);
  });

  std::string csv = "N,mode,delta,delta_exact,source,seed,restarts\n";
  for (const auto& r : rows) {
    if (!r) continue;
    csv += std::to_string(r->n) + "," + r->mode + "," + format_double(r->delta) + "," + r->delta_exact +
           "," + r->source + "," + std::to_string(cfg.seed) + "," + std::to_string(cfg.restarts) + "\n";
  }
  return csv;
}

// --- subcommand bodies ---------------------------------------------------------

int run_junta(const std::string& action, int n, int k, uint64_t budget, const std::string& out,
              bool as_behaviors) {
  if (action == "count") {
    write_output(out, count_k_juntas(n, k).str() + "\n");
    return kExitOk;
  }
  auto juntas = enumerate_k_juntas(n, k, budget);
  Json j;
  if (as_behaviors) {
    j = Json::array();
    for (const auto& f : juntas) j.push_back(to_json(to_behavior<Rational>(f)));
  } else {
    j["n_inputs"] = n;
    j["k"] = k;
    j["count"] = juntas.size();
    Json fns = Json::array();
    for (const auto& f : juntas) {
      Json e;
      e["hex"] = to_hex(f);
      e["effective_variables"] = effective_variables(f);
      fns.push_back(e);
    }
    j["functions"] = fns;
  }
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

int run_polytope(const std::string& action, int n, int k, uint64_t junta_budget, uint64_t vertex_budget,
                 const std::string& out) {
  RationalPolytope poly = vertices_of_C(n, k, junta_budget);
  Json j;
  if (action == "dim") {
    j["N"] = n;
    j["K"] = k;
    j["ambient_dim"] = poly.ambient_dim();
    j["affine_dim"] = poly.affine_dim();
    j["n_vertices"] = poly.vertices().size();
  } else {
    enumerate_facets(poly, vertex_budget);
    j = polytope_report(poly, /*with_f_vector=*/action == "fvector");
    j["N"] = n;
    j["K"] = k;
  }
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

int run_membership(const std::string& file, int n, int k, uint64_t budget, bool float_mode) {
  RationalBehavior beh = rational_behavior_from_json(load_json_file(file));
  MembershipOptions opts;
  opts.junta_budget = budget;
  opts.float_mode = float_mode;
  MembershipCertificate cert = membership_C(beh, n, k, opts);
  Json j = to_json(cert);
  j["N"] = n;
  j["K"] = k;
  std::cout << j.dump(2) << "\n";
  return cert.member ? kExitOk : kExitNegative;
}

int run_optimize(int n, int d, bool sym_u, bool sym_p, int restarts, uint64_t seed,
                 const std::string& backend, const std::string& log_path, const std::string& out) {
  ViolationOptions opts;
  opts.symmetric_unitaries = sym_u;
  opts.symmetric_weights = sym_p;
  opts.restarts = restarts;
  opts.seed = seed;
  if (backend == "grad")
    opts.backend = OptBackend::Gradient;
  else if (backend != "nm")
    throw std::invalid_argument("backend must be nm or grad");
  ViolationResult res = optimize_violation(n, d, opts);

  if (!log_path.empty()) {
    std::ofstream log(log_path);
    if (!log) throw std::invalid_argument("cannot open log file: " + log_path);
    for (const auto& r : res.restarts) {
      Json e;
      e["restart"] = r.index;
      e["seed"] = r.seed;
      e["iterations"] = r.iterations;
      e["delta"] = r.delta;
      log << e.dump() << "\n";
    }
  }

  Json j;
  j["N"] = n;
  j["d"] = d;
  j["delta"] = res.delta;
  j["sym_u"] = sym_u;
  j["sym_p"] = sym_p;
  j["seed"] = seed;
  j["restarts"] = restarts;
  j["backend"] = backend;
  j["strategy"] = to_json(res.strategy);
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

int run_theorem2(int n, const std::string& behavior_out, const std::string& out) {
  if (n < 4)
    throw std::invalid_argument("the closed-form optimum holds for N > 3; N=" + std::to_string(n) +
                                " is outside its validity range");
  SecondOrderLpSolution sol = solve_second_order_lp(n);
  Json j = lp_report(sol);
  Json profile = Json::array();
  for (const auto& q : reconstruct_profile(sol.z)) profile.push_back(rational_to_string(q));
  j["behavior_profile_by_weight"] = profile;
  if (!behavior_out.empty()) {
    std::ofstream bout(behavior_out);
    if (!bout) throw std::invalid_argument("cannot open output file: " + behavior_out);
    bout << to_json(reconstruct_behavior(sol.z)).dump(2) << "\n";
  }
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis toolkit for classical, quantum and second-order interference behaviors"};
  app.require_subcommand(1);

  uint64_t junta_budget = env_budget("CARRIERS_JUNTA_BUDGET", kDefaultJuntaBudget);
  uint64_t vertex_budget = env_budget("CARRIERS_VERTEX_BUDGET", kDefaultFacetVertexBudget);
  std::string out_path;

  // junta
  auto* junta = app.add_subcommand("junta", "count or enumerate K-juntas");
  std::string junta_action;
  int jn = 0, jk = 0;
  bool as_behaviors = false;
  junta->add_option("action", junta_action, "count|enumerate")->required()
      ->check(CLI::IsMember({"count", "enumerate"}));
  junta->add_option("N", jn, "number of input sites")->required();
  junta->add_option("K", jk, "junta arity")->required();
  junta->add_flag("--as-behaviors", as_behaviors, "emit deterministic behaviors instead of truth tables");
  junta->add_option("--budget-juntas", junta_budget, "enumeration budget (candidate functions)");
  junta->add_option("-o,--out", out_path, "output file ('-' for stdout)");

  // polytope
  auto* polytope = app.add_subcommand("polytope", "geometry reports for the classical polytopes");
  std::string poly_action;
  int pn = 0, pk = 0;
  polytope->add_option("action", poly_action, "facets|fvector|dim")->required()
      ->check(CLI::IsMember({"facets", "fvector", "dim"}));
  polytope->add_option("N", pn, "number of input sites")->required();
  polytope->add_option("K", pk, "junta arity")->required();
  polytope->add_option("--budget-juntas", junta_budget, "enumeration budget (candidate functions)");
  polytope->add_option("--budget-vertices", vertex_budget, "facet enumeration vertex budget");
  polytope->add_option("-o,--out", out_path, "output file ('-' for stdout)");

  // membership
  auto* membership = app.add_subcommand("membership", "test a behavior file against C_{N,K}");
  std::string beh_file;
  int mn = 0, mk = 0;
  bool float_mode = false;
  membership->add_option("behavior", beh_file, "behavior JSON file")->required();
  membership->add_option("N", mn, "number of input sites")->required();
  membership->add_option("K", mk, "junta arity")->required();
  membership->add_flag("--float", float_mode, "double-precision LP fallback (1e-9 pivots)");
  membership->add_option("--budget-juntas", junta_budget, "enumeration budget (candidate functions)");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "maximize the fingerprinting violation numerically");
  int on = 0, od = 0, restarts = 64;
  uint64_t seed = 0;
  bool sym_u = false, sym_p = false;
  std::string backend = "nm", log_path;
  optimize->add_option("N", on, "number of input sites")->required();
  optimize->add_option("d", od, "internal dimension")->required();
  optimize->add_flag("--sym-u", sym_u, "identical encodings on every site");
  optimize->add_flag("--sym-p", sym_p, "uniform superposition weights");
  optimize->add_option("--restarts", restarts, "number of local-search restarts");
  optimize->add_option("--seed", seed, "master seed");
  optimize->add_option("--backend", backend, "nm|grad")->check(CLI::IsMember({"nm", "grad"}));
  optimize->add_option("--log", log_path, "JSON-lines restart log");
  optimize->add_option("-o,--out", out_path, "output file ('-' for stdout)");

  // scan
  auto* scan = app.add_subcommand("scan", "batch violation scan to CSV");
  std::string config_file;
  int scan_restarts = -1;
  int64_t scan_seed = -1;
  std::string scan_out;
  scan->add_option("config", config_file, "scan configuration JSON file")->required();
  scan->add_option("--restarts", scan_restarts, "override restarts from the config");
  scan->add_option("--seed", scan_seed, "override seed from the config");
  scan->add_option("-o,--out", scan_out, "override output path from the config");

  // theorem2
  auto* theorem2 = app.add_subcommand("theorem2", "exact optimum over second-order interference behaviors");
  int tn = 0;
  std::string behavior_out;
  theorem2->add_option("N", tn, "number of input sites")->required();
  theorem2->add_option("--behavior-out", behavior_out, "also write the optimal behavior JSON here");
  theorem2->add_option("-o,--out", out_path, "output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (junta->parsed()) return run_junta(junta_action, jn, jk, junta_budget, out_path, as_behaviors);
    if (polytope->parsed()) return run_polytope(poly_action, pn, pk, junta_budget, vertex_budget, out_path);
    if (membership->parsed()) return run_membership(beh_file, mn, mk, junta_budget, float_mode);
    if (optimize->parsed())
      return run_optimize(on, od, sym_u, sym_p, restarts, seed, backend, log_path, out_path);
    if (scan->parsed()) {
      ScanConfig cfg = parse_scan_config(load_json_file(config_file));
      if (scan_restarts > 0) cfg.restarts = scan_restarts;
      if (scan_seed >= 0) cfg.seed = static_cast<uint64_t>(scan_seed);
      if (!scan_out.empty()) cfg.output_path = scan_out;
      write_output(cfg.output_path, run_scan(cfg));
      return kExitOk;
    }
    if (theorem2->parsed()) return run_theorem2(tn, behavior_out, out_path);
  } catch (const BudgetError& e) {
    emit_error(e.what(), kExitBudget);
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    emit_error(e.what(), kExitUsage);
    return kExitUsage;
  } catch (const std::exception& e) {
    emit_error(e.what(), kExitUsage);
    return kExitUsage;
  }
  return kExitUsage;
}
