// heun_cli: command-line front end for the heun library.
//
//   heun_cli <classify|potential|spectrum|wavefunction|verify|polys>
//            --config FILE [--out DIR] [--nterms N] [--grid N] [--tol X]
//
// Exit codes: 0 success, 1 usage or malformed config, 2 constraint or domain
// error, 3 numeric failure (including a failed verification).
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heun/heun.hpp"

using json = nlohmann::ordered_json;
using namespace heun;

namespace {

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised after the report is complete when verification misses its tolerance.
struct VerificationFailed {};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Output {
  std::string name;
  std::string content;
};

// ---------------------------------------------------------------------------
// Config

struct FamilyConfig {
  std::string name;
  json params;
  int degree = 10;
  std::vector<double> arguments{0.0, 0.5, 1.0, 2.0};
  int order = 100;
};

struct RunConfig {
  std::optional<SolutionClass> cls;
  std::optional<CoordinateCase> ccase;
  double lambda = 1.0;
  SystemInputs inputs;
  std::optional<HeunParams> heun;
  BranchChoice branch;
  int level = 0;
  std::optional<int> levels;
  bool quantize = true;
  int nterms = kDefaultTerms;
  int grid = kDefaultGrid;
  double tol = 1e-6;
  std::optional<std::pair<double, double>> x_range;
  int samples = 201;
  std::optional<FamilyConfig> family;
};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw UsageError("unknown key '" + k + "' in " + where);
}

double get_number(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw UsageError("'" + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw UsageError("'" + key + "' must be an integer");
  return v.get<int>();
}

std::optional<double> opt_number(const json& j, const std::string& key) {
  if (!j.contains(key)) return std::nullopt;
  return get_number(j, key);
}

std::vector<double> get_numbers(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_array()) throw UsageError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw UsageError("'" + key + "' must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

RunConfig parse_config(const json& j) {
  check_keys(j,
             {"schema_version", "class", "case", "lambda", "d", "c", "A", "B", "D", "u", "heun", "branch", "level",
              "levels", "quantize", "nterms", "grid", "tol", "x_range", "samples", "family"},
             "config");
  RunConfig c;
  if (j.contains("schema_version") && get_int(j, "schema_version") != kSchemaVersion)
    throw UsageError("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  try {
    if (j.contains("class")) {
      if (!j["class"].is_string()) throw UsageError("'class' must be a string");
      c.cls = parse_solution_class(j["class"].get<std::string>());
    }
    if (j.contains("case")) {
      if (!j["case"].is_string()) throw UsageError("'case' must be a string");
      c.ccase = parse_case(j["case"].get<std::string>());
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (j.contains("lambda")) c.lambda = get_number(j, "lambda");
  c.inputs.d = opt_number(j, "d");
  c.inputs.c = opt_number(j, "c");
  c.inputs.A = opt_number(j, "A");
  c.inputs.B = opt_number(j, "B");
  c.inputs.D = opt_number(j, "D");
  if (j.contains("u")) c.inputs.u = get_numbers(j, "u");
  if (j.contains("heun")) {
    const json& h = j["heun"];
    check_keys(h, {"a", "b", "c", "d", "A", "B", "C", "D", "E"}, "'heun'");
    HeunParams p;
    p.a = get_number(h, "a");
    p.b = get_number(h, "b");
    p.c = get_number(h, "c");
    p.d = get_number(h, "d");
    p.A = get_number(h, "A");
    p.B = get_number(h, "B");
    p.C = get_number(h, "C");
    p.D = get_number(h, "D");
    p.E = get_number(h, "E");
    c.heun = p;
  }
  if (j.contains("branch")) {
    const json& b = j["branch"];
    check_keys(b, {"nu_sign", "mu_sign"}, "'branch'");
    for (const char* k : {"nu_sign", "mu_sign"}) {
      if (!b.contains(k)) continue;
      const int s = get_int(b, k);
      if (s != 1 && s != -1) throw UsageError(std::string("'") + k + "' must be +1 or -1");
      (std::string(k) == "nu_sign" ? c.branch.nu_sign : c.branch.mu_sign) = s;
    }
  }
  if (j.contains("level")) c.level = get_int(j, "level");
  if (c.level < 0) throw UsageError("'level' must be nonnegative");
  if (j.contains("levels")) {
    c.levels = get_int(j, "levels");
    if (*c.levels < 1) throw UsageError("'levels' must be positive");
  }
  if (j.contains("quantize")) {
    if (!j["quantize"].is_boolean()) throw UsageError("'quantize' must be true or false");
    c.quantize = j["quantize"].get<bool>();
  }
  if (j.contains("nterms")) c.nterms = get_int(j, "nterms");
  if (j.contains("grid")) c.grid = get_int(j, "grid");
  if (j.contains("tol")) c.tol = get_number(j, "tol");
  if (j.contains("x_range")) {
    const auto r = get_numbers(j, "x_range");
    if (r.size() != 2 || !(r[1] > r[0])) throw UsageError("'x_range' must be [lo, hi] with lo < hi");
    c.x_range = {r[0], r[1]};
  }
  if (j.contains("samples")) c.samples = get_int(j, "samples");
  if (c.samples < 2) throw UsageError("'samples' must be at least 2");
  if (j.contains("family")) {
    const json& f = j["family"];
    check_keys(f, {"name", "a", "b", "c", "d", "sigma", "tau_sq", "eta", "kappa", "mu", "nu", "theta", "degree",
                   "arguments", "order"},
               "'family'");
    FamilyConfig fc;
    if (!f.contains("name") || !f["name"].is_string()) throw UsageError("'family.name' must be a string");
    fc.name = f["name"].get<std::string>();
    fc.params = f;
    if (f.contains("degree")) fc.degree = get_int(f, "degree");
    if (f.contains("arguments")) fc.arguments = get_numbers(f, "arguments");
    if (f.contains("order")) fc.order = get_int(f, "order");
    if (fc.degree < 0 || fc.order < 2) throw UsageError("'family.degree' must be >= 0 and 'family.order' >= 2");
    c.family = fc;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Systems

SolutionClass need_class(const RunConfig& c) {
  if (!c.cls) throw UsageError("config needs 'class'");
  return *c.cls;
}

PhysicalSystem make_system(const RunConfig& c) {
  const SolutionClass cls = need_class(c);
  if (c.heun) {
    if (c.ccase) throw UsageError("give either 'heun' or 'case' with table inputs, not both");
    return system_from_heun(cls, *c.heun, c.lambda, c.branch);
  }
  if (!c.ccase) throw UsageError("config needs 'case' (or a 'heun' object)");
  return build_system(cls, c.ccase->id, c.inputs, c.lambda, c.branch);
}

bool restricted_box(const PhysicalSystem& s) {
  return s.cls == SolutionClass::RestrictedFirst && s.ccase.id == CaseId::HalfHalf;
}

PhysicalSystem level_system(const PhysicalSystem& s, int k, int nterms) {
  if (s.cls == SolutionClass::RestrictedFirst)
    return restricted_box(s) ? terminating_restricted_system(s, k) : bound_state_system(s, k);
  return quantize(s, k, nterms);
}

std::pair<double, double> sample_range(const RunConfig& c, const PhysicalSystem& s) {
  if (c.x_range) return *c.x_range;
  const auto& cc = s.ccase;
  switch (cc.kind) {
  case DomainKind::Box: return {cc.xi_min, cc.xi_max};
  case DomainKind::HalfLine: return {cc.xi_min, cc.xi_min + 20.0};
  case DomainKind::FullLine: return {-20.0, 20.0};
  }
  return {0.0, 1.0};
}

// Cell-centred sample points in lambda x.
std::vector<double> sample_points(const RunConfig& c, const PhysicalSystem& s) {
  const auto [lo, hi] = sample_range(c, s);
  std::vector<double> xi;
  for (int i = 0; i < c.samples; ++i) xi.push_back(lo + (hi - lo) * (i + 0.5) / c.samples);
  return xi;
}

json heun_json(const HeunParams& p) {
  return json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"A", p.A},
              {"B", p.B}, {"C", p.C}, {"D", p.D}, {"E", p.E}};
}

json basis_json(const BasisParams& b) {
  return json{{"alpha", b.alpha}, {"beta", b.beta}, {"gamma", b.gamma}, {"mu", b.mu}, {"nu", b.nu}};
}

json system_json(const PhysicalSystem& s) {
  return json{{"class", to_string(s.cls)},
              {"case", s.ccase.name},
              {"lambda", s.lambda},
              {"u", s.u},
              {"energy", s.energy},
              {"heun", heun_json(s.heun)},
              {"basis", basis_json(s.basis)}};
}

json header(const char* command) { return json{{"schema_version", kSchemaVersion}, {"command", command}}; }

// ---------------------------------------------------------------------------
// Commands

std::vector<Output> cmd_classify(const RunConfig& c) {
  HeunParams raw;
  if (c.heun) {
    raw = *c.heun;
  } else {
    if (!c.ccase) throw UsageError("classify needs a 'heun' object or 'class' and 'case' with table inputs");
    raw = heun_from_row(need_class(c), c.ccase->id, c.inputs);
  }
  const HeunParams p = normalize_d(raw);
  const Classification cl = classify(p);
  json r = header("classify");
  r["normalized_from_small_d"] = raw.d < 1.0;
  r["heun"] = heun_json(p);
  json classes = json::array();
  for (auto k : cl.classes) classes.push_back(to_string(k));
  r["classes"] = classes;
  r["original_heun"] = cl.original_heun;
  r["notes"] = cl.notes;
  json branches = json::array();
  for (auto k : cl.classes) {
    try {
      for (const auto& b : basis_branches(p, k)) {
        json e{{"class", to_string(k)}, {"nu_sign", b.branch.nu_sign}, {"mu_sign", b.branch.mu_sign}};
        e["basis"] = basis_json(b.basis);
        branches.push_back(e);
      }
    } catch (const Error& e) {
      branches.push_back(json{{"class", to_string(k)}, {"error", e.what()}});
    }
  }
  r["branches"] = branches;
  return {{"classify.json", r.dump(2) + "\n"}};
}

std::vector<Output> cmd_potential(const RunConfig& c) {
  const PhysicalSystem s = make_system(c);
  std::string csv = "lambda_x,two_V_over_lambda2\n";
  for (double xi : sample_points(c, s)) csv += num(xi) + "," + num(potential_value(s, xi / s.lambda)) + "\n";
  return {{"potential.csv", csv}};
}

std::vector<Output> cmd_wavefunction(const RunConfig& c) {
  PhysicalSystem s = make_system(c);
  if (c.quantize) s = level_system(s, c.level, c.nterms);
  const WavefunctionSeries ws = make_series(s, c.nterms);
  for (const auto& w : ws.warnings) std::cerr << "warning: " << w << "\n";
  const double scale = ws.terminated ? restricted_normalization(ws) : 1.0;
  std::string csv = "lambda_x,psi\n";
  for (double xi : sample_points(c, s)) csv += num(xi) + "," + num(scale * psi_series(ws, xi / s.lambda)) + "\n";
  return {{"wavefunction.csv", csv}};
}

std::vector<Output> cmd_spectrum(const RunConfig& c) {
  const PhysicalSystem s = make_system(c);
  struct Row {
    int k;
    double formula;
    bool threshold;
    double numeric = 0.0, estimate = 0.0;
    std::optional<double> rel;
    std::vector<double> u;
  };
  std::vector<Row> rows;
  std::string provenance = "formula";
  const Grid grid = default_grid(s, c.grid);
  if (s.cls == SolutionClass::RestrictedFirst && !restricted_box(s)) {
    const SpectrumResult sp = restricted_spectrum(s);
    provenance = sp.provenance;
    if (!sp.levels.empty()) {
      const auto num_levels = numeric_eigenvalues(s, grid, static_cast<int>(sp.levels.size()));
      for (std::size_t k = 0; k < sp.levels.size(); ++k)
        rows.push_back({static_cast<int>(k), sp.levels[k].energy, sp.levels[k].threshold, num_levels[k].richardson,
                        num_levels[k].estimate, std::nullopt, s.u});
    }
  } else if (restricted_box(s)) {
    // The potential does not depend on c; the terminating systems give its levels.
    const int n = c.levels.value_or(4);
    const auto num_levels = numeric_eigenvalues(s, grid, n);
    for (int k = 0; k < n; ++k)
      rows.push_back({k, terminating_restricted_system(s, k).energy, false, num_levels[k].richardson,
                      num_levels[k].estimate, std::nullopt, s.u});
    provenance = "terminating series";
  } else {
    // General/special: each quantized level is a potential (strengths u)
    // with the configured energy as one of its eigenvalues.
    const int n = c.levels.value_or(3);
    provenance = "quantized recursion";
    for (int k = 0; k < n; ++k) {
      const PhysicalSystem q = quantize(s, k, c.nterms);
      const auto lv = numeric_eigenvalues(q, grid, k + 6);
      std::size_t best = 0;
      for (std::size_t i = 1; i < lv.size(); ++i)
        if (std::abs(lv[i].richardson - q.energy) < std::abs(lv[best].richardson - q.energy)) best = i;
      rows.push_back({k, q.energy, false, lv[best].richardson, lv[best].estimate, std::nullopt, q.u});
    }
  }
  double worst = 0.0;
  for (auto& r : rows)
    if (!r.threshold && r.formula != 0.0) {
      r.rel = std::abs(r.numeric - r.formula) / std::abs(r.formula);
      worst = std::max(worst, *r.rel);
    }
  std::string csv = "k,energy_formula,energy_numeric,numeric_estimate,relative_deviation,threshold\n";
  json levels = json::array();
  for (const auto& r : rows) {
    csv += std::to_string(r.k) + "," + num(r.formula) + "," + num(r.numeric) + "," + num(r.estimate) + "," +
           (r.rel ? num(*r.rel) : std::string()) + "," + (r.threshold ? "1" : "0") + "\n";
    json l{{"k", r.k}, {"energy_formula", r.formula}, {"energy_numeric", r.numeric},
           {"numeric_estimate", r.estimate}, {"threshold", r.threshold}, {"u", r.u}};
    l["relative_deviation"] = r.rel ? json(*r.rel) : json(nullptr);
    levels.push_back(l);
  }
  json rep = header("spectrum");
  rep["system"] = system_json(s);
  rep["provenance"] = provenance;
  rep["grid_points"] = c.grid;
  rep["levels"] = levels;
  rep["max_relative_deviation"] = worst;
  return {{"spectrum.csv", csv}, {"spectrum.json", rep.dump(2) + "\n"}};
}

std::vector<Output> cmd_verify(const RunConfig& c, bool& passed) {
  PhysicalSystem s = make_system(c);
  if (c.quantize) s = level_system(s, c.level, c.nterms);
  const WavefunctionSeries ws = make_series(s, c.nterms);
  const Grid g = default_grid(s, c.grid);
  const ResidualReport r = schrodinger_residual(s, [&](double x) { return psi_series(ws, x); }, s.energy, g);
  passed = r.rms_richardson < c.tol;
  json rep = header("verify");
  rep["system"] = system_json(s);
  rep["level"] = c.quantize ? json(c.level) : json(nullptr);
  rep["nterms"] = c.nterms;
  rep["grid"] = json{{"x_min", g.x_min}, {"x_max", g.x_max}, {"npoints", g.npoints}, {"skip_lo", g.skip_lo},
                     {"skip_hi", g.skip_hi}};
  rep["residual"] = json{{"rms_h", r.rms_h},
                         {"rms_h2", r.rms_h2},
                         {"rms_richardson", r.rms_richardson},
                         {"discretization", r.discretization},
                         {"tail_ratio", r.tail_ratio},
                         {"points_used", r.points_used}};
  rep["series"] = json{{"terminated", ws.terminated},
                       {"tail_estimate", ws.tail_estimate},
                       {"recursion_defect", ws.recursion_defect},
                       {"growth_alarm", ws.growth_alarm},
                       {"warnings", ws.warnings}};
  rep["tol"] = c.tol;
  rep["pass"] = passed;
  return {{"verify.json", rep.dump(2) + "\n"}};
}

PolynomialFamily make_family(const FamilyConfig& f) {
  const json& p = f.params;
  auto wilson = [&]() {
    if (p.contains("sigma")) return WilsonParams::paired(get_number(p, "sigma"), get_number(p, "tau_sq"), get_number(p, "eta"));
    return WilsonParams::from_real(get_number(p, "a"), get_number(p, "b"), get_number(p, "c"), get_number(p, "d"));
  };
  try {
    if (f.name == "wilson") return WilsonFamily{wilson()};
    if (f.name == "racah_heun") return RacahHeunFamily{get_number(p, "kappa"), wilson()};
    if (f.name == "new_v")
      return NewVFamily{NewVParams{get_number(p, "mu"), get_number(p, "nu"), get_number(p, "tau_sq"),
                                   get_number(p, "theta")}};
  } catch (const json::out_of_range& e) {
    throw UsageError("family '" + f.name + "' is missing a parameter");
  }
  throw UsageError("unknown family '" + f.name + "' (expected wilson, racah_heun or new_v)");
}

std::vector<Output> cmd_polys(const RunConfig& c) {
  if (!c.family) throw UsageError("polys needs a 'family' object");
  const FamilyConfig& fc = *c.family;
  const PolynomialFamily f = make_family(fc);
  const char* arg_name = std::holds_alternative<NewVFamily>(f) ? "z" : "z_squared";
  std::string csv = std::string("n,") + arg_name + ",value\n";
  for (double a : fc.arguments) {
    const PolyValues v = family_eval(f, fc.degree, a);
    if (v.growth_alarm) std::cerr << "warning: growth monitor tripped at n = " << v.alarm_at << "\n";
    for (int n = 0; n <= fc.degree; ++n) csv += std::to_string(n) + "," + num(a) + "," + num(v.values[n]) + "\n";
  }
  const DiscreteSpectrum ds = numeric_discrete_spectrum(f, fc.order);
  std::string spec = std::string(arg_name) + ",drift,tolerance\n";
  for (const auto& e : ds.stable) spec += num(e.value) + "," + num(e.drift) + "," + num(e.tolerance) + "\n";
  return {{"polys.csv", csv}, {"polys_spectrum.csv", spec}};
}

// ---------------------------------------------------------------------------

void emit(const std::vector<Output>& outs, const std::string& out_dir) {
  if (out_dir.empty()) {
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << outs[i].content;
    }
    std::cout.flush();
    return;
  }
  std::filesystem::create_directories(out_dir);
  for (const auto& o : outs) {
    const auto path = std::filesystem::path(out_dir) / o.name;
    std::ofstream f(path, std::ios::binary);
    f << o.content;
    if (!f) throw std::runtime_error("cannot write " + path.string());
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvable potentials from Heun-type equations"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<int> nterms, grid;
  std::optional<double> tol;
  const char* names[] = {"classify", "potential", "spectrum", "wavefunction", "verify", "polys"};
  const char* help[] = {"classes, basis branches and original-Heun flag of a parameter set",
                        "sample 2V/lambda^2 over lambda x",
                        "formula levels next to finite-difference levels",
                        "sample the series wavefunction",
                        "Schrodinger residual of the series wavefunction",
                        "tabulate a polynomial family and its numeric discrete spectrum"};
  std::vector<CLI::App*> subs;
  for (int i = 0; i < 6; ++i) {
    auto* s = app.add_subcommand(names[i], help[i]);
    s->add_option("--config", config_path, "JSON run config")->required()->check(CLI::ExistingFile);
    s->add_option("--out", out_dir, "directory for output files (default: stdout)");
    s->add_option("--nterms", nterms, "series terms")->check(CLI::Range(1, kMaxTerms));
    s->add_option("--grid", grid, "finite-difference grid points")->check(CLI::Range(64, 1 << 22));
    s->add_option("--tol", tol, "verification tolerance")->check(CLI::PositiveNumber);
    subs.push_back(s);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    std::ifstream in(config_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg = parse_config(j);
    if (nterms) cfg.nterms = *nterms;
    if (grid) cfg.grid = *grid;
    if (tol) cfg.tol = *tol;
    if (cfg.nterms < 1 || cfg.nterms > kMaxTerms) throw UsageError("'nterms' out of range");
    if (cfg.grid < 64) throw UsageError("'grid' must be at least 64");

    std::vector<Output> outs;
    bool passed = true;
    if (subs[0]->parsed()) outs = cmd_classify(cfg);
    else if (subs[1]->parsed()) outs = cmd_potential(cfg);
    else if (subs[2]->parsed()) outs = cmd_spectrum(cfg);
    else if (subs[3]->parsed()) outs = cmd_wavefunction(cfg);
    else if (subs[4]->parsed()) outs = cmd_verify(cfg, passed);
    else outs = cmd_polys(cfg);
    emit(outs, out_dir);
    if (!passed) {
      std::cerr << "verification failed: residual above tolerance\n";
      return 3;
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const BreakdownError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
