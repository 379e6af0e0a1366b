// heisring: command-line front end.
//
//   heisring validate     --surface koranyi --R 1
//   heisring modulus      --surface bubble --a 1 --b 2 --curves 500 --seed 7 --json
//   heisring geometry     --surface cc --flow 0.5,0 --out flow.csv
//   heisring export-mesh  --surface koranyi --scale 2 --out sphere.obj
//
// Exit codes: 0 success, 1 mathematical failure, 2 usage or I/O error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "heisring/heisring.hpp"

namespace {

using heisring::ProfileCurve;
using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string surface;
  double R = 1.0;
  std::string profile_path;
  std::optional<double> a, b;
  int curves = 200;
  std::uint64_t seed = 0;
  bool oracle = false;
  std::optional<int> grid;
  double tol = 1e-8;
  bool json = false;
  std::string csv;
  std::string out;
  std::string flow;
  double scale = 1.0;
  int resolution = heisring::kDefaultResolution;
};

ProfileCurve resolve_surface(const RunConfig& cfg) {
  if (!cfg.surface.empty() && !cfg.profile_path.empty())
    throw UsageError("give either --surface or --profile, not both");
  if (!cfg.profile_path.empty()) return heisring::load_profile(cfg.profile_path);
  if (cfg.surface.empty()) throw UsageError("a surface is required (--surface or --profile)");
  if (!(cfg.R > 0.0)) throw UsageError("--R must be positive");
  try {
    return heisring::catalog(cfg.surface, cfg.R);
  } catch (const heisring::DomainError& e) {
    throw UsageError(e.what());
  }
}

std::string surface_label(const RunConfig& cfg) {
  return cfg.profile_path.empty() ? cfg.surface : cfg.profile_path;
}

void print_header(std::ostream& os, const char* command, const RunConfig& cfg) {
  os << "heisring " << command << "  surface=" << surface_label(cfg);
  if (cfg.profile_path.empty()) os << " R=" << cfg.R;
  os << "  tol=" << cfg.tol << " curves=" << cfg.curves << " resolution=" << cfg.resolution
     << " seed=" << cfg.seed << "\n";
}

json config_json(const RunConfig& cfg) {
  json j;
  j["tol"] = cfg.tol;
  j["curves"] = cfg.curves;
  j["resolution"] = cfg.resolution;
  j["seed"] = cfg.seed;
  if (cfg.profile_path.empty()) j["R"] = cfg.R;
  if (cfg.grid) j["grid"] = *cfg.grid;
  return j;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot write '" + path + "'");
  return f;
}

// --- validate -----------------------------------------------------------------

json check_json(const heisring::ConditionCheck& c) {
  json j;
  j["status"] = std::string(heisring::to_string(c.status));
  if (c.witness) {
    j["witness"] = {{"where", std::string(heisring::to_string(c.witness->where))},
                    {"s", c.witness->s},
                    {"value", c.witness->value}};
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

void print_check(std::ostream& os, const char* name, const heisring::ConditionCheck& c) {
  os << "  " << std::left << std::setw(16) << name << std::setw(6) << heisring::to_string(c.status);
  if (c.witness) {
    os << "  " << heisring::to_string(c.witness->where) << " s=" << std::setprecision(10) << c.witness->s
       << " value=" << c.witness->value;
  }
  if (!c.note.empty()) os << "  (" << c.note << ")";
  os << "\n";
}

int cmd_validate(const RunConfig& cfg) {
  const ProfileCurve c = resolve_surface(cfg);
  const int grid = cfg.grid.value_or(4096);
  if (grid < 16) throw UsageError("--grid must be at least 16");
  const heisring::ValidationReport r = heisring::validate(c, grid);
  if (cfg.json) {
    json j;
    j["surface"] = surface_label(cfg);
    j["config"] = config_json(cfg);
    j["grid_n"] = r.grid_n;
    j["a1"] = check_json(r.a1);
    j["a2"] = check_json(r.a2);
    j["beta_monotone"] = check_json(r.beta_monotone);
    j["regular"] = r.regular;
    j["min_f"] = r.min_f;
    j["min_neg_dg"] = r.min_neg_dg;
    j["min_beta_dot"] = r.min_beta_dot;
    j["limits"] = {{"f_lo", r.f_limit_lo}, {"f_hi", r.f_limit_hi}, {"g_lo", r.g_limit_lo}, {"g_hi", r.g_limit_hi}};
    j["pass"] = r.all_pass();
    std::cout << j.dump(2) << "\n";
  } else {
    print_header(std::cout, "validate", cfg);
    std::cout << "  grid_n " << r.grid_n << "\n";
    print_check(std::cout, "A1 f>0", r.a1);
    print_check(std::cout, "A2 g'<0", r.a2);
    print_check(std::cout, "arg increasing", r.beta_monotone);
    std::cout << "  " << std::left << std::setw(16) << "regular" << (r.regular ? "pass" : "fail") << "\n";
    std::cout << std::setprecision(6) << "  min f " << r.min_f << "   min -g' " << r.min_neg_dg << "   min beta' "
              << r.min_beta_dot << "\n";
    std::cout << "  limits f(lo+) " << r.f_limit_lo << " f(hi-) " << r.f_limit_hi << " g(lo+) " << r.g_limit_lo
              << " g(hi-) " << r.g_limit_hi << "\n";
    std::cout << (r.all_pass() ? "PASS" : "FAIL") << "\n";
  }
  return r.all_pass() ? kOk : kMathFailure;
}

// --- modulus --------------------------------------------------------------------

int cmd_modulus(const RunConfig& cfg) {
  if (!cfg.a || !cfg.b) throw UsageError("modulus needs --a and --b");
  if (!(*cfg.a > 0.0) || !(*cfg.a < *cfg.b)) throw UsageError("modulus needs 0 < a < b");
  if (cfg.curves < 0) throw UsageError("--curves must be nonnegative");
  const ProfileCurve c = resolve_surface(cfg);
  std::optional<heisring::RevolutionRing> ring;
  try {
    ring.emplace(c, *cfg.a, *cfg.b, cfg.grid.value_or(4096));
  } catch (const heisring::DomainError& e) {
    std::cerr << "ring rejected: " << e.what() << "\n";
    return kMathFailure;
  }
  const heisring::ModulusResult m = heisring::numeric_modulus(*ring, cfg.tol);
  const bool ok = m.rel_err <= cfg.tol;

  json j;
  j["surface"] = surface_label(cfg);
  j["config"] = config_json(cfg);
  j["a"] = *cfg.a;
  j["b"] = *cfg.b;
  j["analytic"] = m.analytic;
  j["numeric"] = m.numeric;
  j["rel_err"] = m.rel_err;
  j["pass"] = ok;
  std::optional<heisring::AdmissibilityReport> adm;
  if (cfg.curves > 0) {
    const auto family = heisring::random_family(*ring, cfg.curves, cfg.seed, cfg.resolution);
    adm = heisring::admissibility_report(family, [&](const heisring::HPoint& p) { return heisring::rho0(*ring, p); });
    j["admissibility"] = {{"n", adm->n}, {"min", adm->min}, {"mean", adm->mean}, {"slack", adm->slack},
                          {"pass", adm->pass()}};
  }
  std::optional<heisring::OracleResult> orc;
  if (cfg.oracle) {
    orc = heisring::restricted_oracle(*ring, 64, cfg.seed);
    j["oracle"] = {{"value", orc->value}, {"max_dev_from_uniform", orc->max_dev_from_uniform}, {"bins", 64}};
  }

  if (cfg.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    print_header(std::cout, "modulus", cfg);
    std::cout << std::setprecision(12) << std::left;
    std::cout << "  " << std::setw(22) << "a" << *cfg.a << "\n";
    std::cout << "  " << std::setw(22) << "b" << *cfg.b << "\n";
    std::cout << "  " << std::setw(22) << "analytic" << m.analytic << "\n";
    std::cout << "  " << std::setw(22) << "numeric" << m.numeric << "\n";
    std::cout << "  " << std::setw(22) << "rel_err" << m.rel_err << "\n";
    if (adm) {
      std::cout << "  " << std::setw(22) << "admissibility n" << adm->n << "\n";
      std::cout << "  " << std::setw(22) << "admissibility min" << adm->min << (adm->pass() ? "  pass" : "  FAIL")
                << "\n";
      std::cout << "  " << std::setw(22) << "admissibility mean" << adm->mean << "\n";
    }
    if (orc) {
      std::cout << "  " << std::setw(22) << "oracle value" << orc->value << "\n";
      std::cout << "  " << std::setw(22) << "oracle max dev" << orc->max_dev_from_uniform << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kOk : kMathFailure;
}

// --- geometry -------------------------------------------------------------------

std::pair<double, double> parse_flow(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--flow expects s0,phi0");
  try {
    std::size_t n1 = 0, n2 = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double s0 = std::stod(a, &n1), phi0 = std::stod(b, &n2);
    if (n1 != a.size() || n2 != b.size()) throw UsageError("--flow expects s0,phi0");
    return {s0, phi0};
  } catch (const std::logic_error&) {
    throw UsageError("--flow expects s0,phi0");
  }
}

int cmd_geometry(const RunConfig& cfg) {
  const ProfileCurve c = resolve_surface(cfg);
  if (!(cfg.scale > 0.0)) throw UsageError("--scale must be positive");
  const heisring::SurfacePatch S(c, cfg.scale);
  const heisring::QuadResult area = heisring::horizontal_area(S, 8, std::min(cfg.tol, 1e-10));
  const heisring::Interval d = S.domain();
  const int rows = cfg.grid.value_or(256);
  if (rows < 2) throw UsageError("--grid must be at least 2");

  int indeterminate = 0;
  if (!cfg.csv.empty()) {
    std::ofstream f = open_out(cfg.csv);
    f << "s,f,g,hnormal,Hh,Hh_ok\n" << std::setprecision(17);
    for (int i = 0; i < rows; ++i) {
      const double s = d.lo + (i + 1) * d.width() / (rows + 1);
      const heisring::ProfileJet j = S.jet(s);
      double H = std::numeric_limits<double>::quiet_NaN();
      bool ok = true;
      try {
        H = heisring::mean_curvature(S, s);
      } catch (const heisring::DomainError&) {
        ok = false;
        ++indeterminate;
      }
      f << s << ',' << j.f << ',' << j.g << ',' << heisring::horizontal_normal(S, s, 0.0).norm() << ',' << H << ','
        << (ok ? 1 : 0) << '\n';
    }
  }

  std::optional<heisring::HorizontalCurve> flow;
  std::string flow_path;
  if (!cfg.flow.empty()) {
    const auto [s0, phi0] = parse_flow(cfg.flow);
    if (!d.contains_open(s0)) throw UsageError("--flow s0 must lie inside the profile domain");
    const double margin = 1e-3 * d.width();
    flow = heisring::flow_curve(S, s0, phi0, {d.lo + margin, d.hi - margin}, cfg.resolution);
    flow_path = cfg.out.empty() ? "flow.csv" : cfg.out;
    std::ofstream f = open_out(flow_path);
    heisring::write_curve_csv(f, *flow);
  }

  if (cfg.json) {
    json j;
    j["surface"] = surface_label(cfg);
    j["config"] = config_json(cfg);
    j["scale"] = cfg.scale;
    j["area"] = area.value;
    j["area_error"] = area.error;
    if (!cfg.csv.empty()) j["table"] = {{"path", cfg.csv}, {"rows", rows}, {"indeterminate", indeterminate}};
    if (flow) j["flow"] = {{"path", flow_path}, {"samples", flow->size()}, {"max_residual", flow->residual_bound()}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_header(std::cout, "geometry", cfg);
    std::cout << std::setprecision(12) << std::left;
    std::cout << "  " << std::setw(22) << "scale" << cfg.scale << "\n";
    std::cout << "  " << std::setw(22) << "horizontal area" << area.value << "  (+- " << area.error << ")\n";
    if (!cfg.csv.empty())
      std::cout << "  " << std::setw(22) << "table" << cfg.csv << "  rows " << rows << ", H^h indeterminate "
                << indeterminate << "\n";
    if (flow)
      std::cout << "  " << std::setw(22) << "flow curve" << flow_path << "  samples " << flow->size()
                << ", max residual " << flow->residual_bound() << "\n";
  }
  return kOk;
}

// --- export-mesh ------------------------------------------------------------------

int cmd_export_mesh(const RunConfig& cfg) {
  const ProfileCurve c = resolve_surface(cfg);
  if (!(cfg.scale > 0.0)) throw UsageError("--scale must be positive");
  const heisring::SurfacePatch S(c, cfg.scale);
  heisring::MeshOptions opt;
  if (cfg.grid) {
    opt.n_s = *cfg.grid;
    opt.n_phi = std::max(3, *cfg.grid / 2);
  }
  if (opt.n_s < 2) throw UsageError("--grid must be at least 2");
  const std::string obj_path = cfg.out.empty() ? "mesh.obj" : cfg.out;
  const std::string csv_path = cfg.csv.empty() ? obj_path + ".csv" : cfg.csv;
  {
    std::ofstream f = open_out(obj_path);
    heisring::write_obj(f, S, opt);
  }
  {
    std::ofstream f = open_out(csv_path);
    heisring::write_mesh_csv(f, S, opt);
  }
  const int nv = opt.n_s * opt.n_phi;
  const int nf = 2 * (opt.n_s - 1) * opt.n_phi;
  if (cfg.json) {
    json j;
    j["surface"] = surface_label(cfg);
    j["config"] = config_json(cfg);
    j["scale"] = cfg.scale;
    j["obj"] = obj_path;
    j["csv"] = csv_path;
    j["vertices"] = nv;
    j["faces"] = nf;
    j["grid"] = {opt.n_s, opt.n_phi};
    std::cout << j.dump(2) << "\n";
  } else {
    print_header(std::cout, "export-mesh", cfg);
    std::cout << "  " << obj_path << ": " << nv << " vertices, " << nf << " faces (" << opt.n_s << " x " << opt.n_phi
              << ")\n  " << csv_path << ": per-vertex hnormal, Hh\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horizontal geometry and moduli of revolution rings in the Heisenberg group"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_surface = [&](CLI::App* sub) {
    sub->add_option("--surface", cfg.surface, "catalog surface: koranyi | bubble | cc");
    sub->add_option("--R", cfg.R, "catalog radius")->capture_default_str();
    sub->add_option("--profile", cfg.profile_path, "profile definition file");
    sub->add_option("--grid", cfg.grid, "grid size override");
    sub->add_option("--tol", cfg.tol, "tolerance")->capture_default_str();
    sub->add_flag("--json", cfg.json, "machine-readable JSON output");
  };

  CLI::App* validate = app.add_subcommand("validate", "check the profile conditions");
  add_surface(validate);

  CLI::App* modulus = app.add_subcommand("modulus", "reproduce the ring modulus");
  add_surface(modulus);
  modulus->add_option("--a", cfg.a, "inner ring radius");
  modulus->add_option("--b", cfg.b, "outer ring radius");
  modulus->add_option("--curves", cfg.curves, "random curves for the admissibility check (0 skips it)")->capture_default_str();
  modulus->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  modulus->add_flag("--oracle", cfg.oracle, "run the restricted-density optimizer");

  CLI::App* geometry = app.add_subcommand("geometry", "horizontal area, normal, mean curvature, flow curves");
  add_surface(geometry);
  geometry->add_option("--csv", cfg.csv, "write the s,f,g,hnormal,Hh table here");
  geometry->add_option("--flow", cfg.flow, "flow curve through s0,phi0");
  geometry->add_option("--out", cfg.out, "flow curve CSV path (default flow.csv)");
  geometry->add_option("--scale", cfg.scale, "dilation factor")->capture_default_str();

  CLI::App* mesh = app.add_subcommand("export-mesh", "triangulated surface as Wavefront OBJ");
  add_surface(mesh);
  mesh->add_option("--out", cfg.out, "OBJ path (default mesh.obj)");
  mesh->add_option("--csv", cfg.csv, "per-vertex CSV path (default <out>.csv)");
  mesh->add_option("--scale", cfg.scale, "dilation factor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(cfg);
    if (modulus->parsed()) return cmd_modulus(cfg);
    if (geometry->parsed()) return cmd_geometry(cfg);
    if (mesh->parsed()) return cmd_export_mesh(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const heisring::ParseError& e) {
    std::cerr << "profile syntax error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}
