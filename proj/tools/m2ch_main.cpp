// Command-line front end.  Talks to the solver exclusively through the C API
// in m2ch.h; all file formats live here.
//
// Verbs:
//   run <config.json>      simulate and write per-snapshot CSV/JSON files
//   compare <A> <B> [C]    difference report between run directories
//   metric <config.json>   distance-ratio experiment between two data sets
//   check <snapshot.csv>   invariant-set membership check of a snapshot
//
// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 IO error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "m2ch.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

// ---- JSON config helpers (unknown keys are errors) -------------------------

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(kExitConfig, where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      fail(kExitConfig, "unknown key \"" + it.key() + "\" in " + where);
  }
}

double num_at(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail(kExitConfig, where + " requires \"" + key + "\"");
  if (!obj[key].is_number()) fail(kExitConfig, where + "." + key + " must be a number");
  return obj[key].get<double>();
}

double num_or(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return obj[key].get<double>();
}

// ---- CSV ------------------------------------------------------------------

// 17 significant digits: lossless binary64 round trip, byte-stable output.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::optional<std::size_t> column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return k;
    return std::nullopt;
  }
  std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
};

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(kExitIo, "cannot open " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) fail(kExitIo, "empty file " + path.string());
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  t.columns.resize(t.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::size_t k = 0;
    while (std::getline(ls, cell, ',')) {
      if (k >= t.columns.size()) fail(kExitIo, "ragged row in " + path.string());
      t.columns[k++].push_back(std::strtod(cell.c_str(), nullptr));
    }
    if (k != t.columns.size()) fail(kExitIo, "ragged row in " + path.string());
  }
  return t;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& cols) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kExitIo, "cannot write " + path.string());
  for (std::size_t k = 0; k < header.size(); ++k)
    out << header[k] << (k + 1 == header.size() ? "\n" : ",");
  const std::size_t rows = cols.empty() ? 0 : cols[0]->size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k)
      out << fmt((*cols[k])[i]) << (k + 1 == cols.size() ? "\n" : ",");
  }
  if (!out) fail(kExitIo, "write failed for " + path.string());
}

// ---- scenario / parameter parsing ------------------------------------------

struct FileScenario {
  std::vector<double> u, gamma, gamma_x, density;
  double x_min = 0.0, x_max = 0.0;
  std::size_t m = 0;
  bool has_gamma_x = false;
  bool has_density = false;
};

FileScenario load_file_scenario(const fs::path& path) {
  CsvTable t = read_csv(path);
  auto cx = t.column("x");
  auto cu = t.column("u");
  auto cg = t.column("gamma");
  if (!cx || !cu || !cg)
    fail(kExitConfig, "from_file scenario needs columns x,u,gamma in " + path.string());
  FileScenario s;
  s.m = t.rows();
  if (s.m < 3) fail(kExitConfig, "from_file scenario needs at least 3 rows");
  s.x_min = t.columns[*cx].front();
  s.x_max = t.columns[*cx].back();
  s.u = t.columns[*cu];
  s.gamma = t.columns[*cg];
  if (auto c = t.column("gamma_x")) {
    s.gamma_x = t.columns[*c];
    s.has_gamma_x = true;
  }
  if (auto c = t.column("mu_density")) {
    s.density = t.columns[*c];
    s.has_density = true;
  }
  return s;
}

struct ParsedScenario {
  m2ch_params params{};            // scenario fields only
  std::optional<FileScenario> file;
  m2ch_custom_data custom{};
};

void parse_scenario(const json& sc, const std::string& where, ParsedScenario& out) {
  if (!sc.contains("type")) fail(kExitConfig, where + " requires \"type\"");
  const std::string type = sc["type"].get<std::string>();
  m2ch_params& p = out.params;
  if (type == "zero") {
    require_keys(sc, where, {"type"});
    p.scenario = M2CH_SCENARIO_ZERO;
  } else if (type == "peakon") {
    require_keys(sc, where, {"type", "c", "center"});
    p.scenario = M2CH_SCENARIO_PEAKON;
    p.c = num_at(sc, "c", where);
    p.center = num_or(sc, "center", 0.0);
  } else if (type == "peakon_antipeakon") {
    require_keys(sc, where, {"type", "c", "a"});
    p.scenario = M2CH_SCENARIO_PEAKON_ANTIPEAKON;
    p.c = num_at(sc, "c", where);
    p.a = num_at(sc, "a", where);
  } else if (type == "gaussian") {
    require_keys(sc, where, {"type", "amp_u", "amp_gamma", "width", "center"});
    p.scenario = M2CH_SCENARIO_GAUSSIAN;
    p.amp_u = num_at(sc, "amp_u", where);
    p.amp_gamma = num_at(sc, "amp_gamma", where);
    p.width = num_at(sc, "width", where);
    p.center = num_or(sc, "center", 0.0);
  } else if (type == "atom") {
    require_keys(sc, where, {"type", "mass", "location"});
    p.scenario = M2CH_SCENARIO_ATOM;
    p.mass = num_at(sc, "mass", where);
    p.location = num_at(sc, "location", where);
  } else if (type == "from_file") {
    require_keys(sc, where, {"type", "path"});
    if (!sc.contains("path")) fail(kExitConfig, where + " requires \"path\"");
    out.file = load_file_scenario(sc["path"].get<std::string>());
    p.scenario = M2CH_SCENARIO_CUSTOM;
    FileScenario& f = *out.file;
    out.custom.x_min = f.x_min;
    out.custom.x_max = f.x_max;
    out.custom.m = f.m;
    out.custom.u = f.u.data();
    out.custom.gamma = f.gamma.data();
    out.custom.gamma_x = f.has_gamma_x ? f.gamma_x.data() : nullptr;
    out.custom.u_x = nullptr;
    out.custom.density = f.has_density ? f.density.data() : nullptr;
    out.custom.atom_locations = nullptr;
    out.custom.atom_masses = nullptr;
    out.custom.atom_count = 0;
    p.custom = &out.custom;
  } else {
    fail(kExitConfig, where + ": unknown scenario type \"" + type + "\"");
  }
}

struct RunSettings {
  std::string directory;
  std::string format = "csv";
  double constraint_tol = 1e-6;
  double energy_tol = 1e-6;
};

void parse_common(const json& cfg, m2ch_params& p, RunSettings& rs, bool need_output) {
  if (cfg.contains("grid")) {
    const json& g = cfg["grid"];
    require_keys(g, "grid", {"xi_min", "xi_max", "n"});
    p.xi_min = num_at(g, "xi_min", "grid");
    p.xi_max = num_at(g, "xi_max", "grid");
    p.n = static_cast<size_t>(num_at(g, "n", "grid"));
    if (p.n < 3) fail(kExitConfig, "grid.n must be at least 3");
  } else {
    p.n = 0;  // auto
  }
  if (!cfg.contains("time")) fail(kExitConfig, "config requires \"time\"");
  const json& t = cfg["time"];
  require_keys(t, "time", {"dt", "t_end", "output_every", "reparametrize"});
  p.t_end = num_at(t, "t_end", "time");
  p.dt = num_or(t, "dt", 1e-3);
  p.output_every = static_cast<size_t>(num_or(t, "output_every", 100));
  if (t.contains("reparametrize")) {
    if (!t["reparametrize"].is_boolean())
      fail(kExitConfig, "time.reparametrize must be a boolean");
    p.reparametrize = t["reparametrize"].get<bool>() ? 1 : 0;
  }
  if (!(p.dt > 0.0)) fail(kExitConfig, "time.dt must be positive");
  if (p.t_end < 0.0) fail(kExitConfig, "time.t_end must be nonnegative");

  if (cfg.contains("eulerian_out")) {
    const json& e = cfg["eulerian_out"];
    require_keys(e, "eulerian_out", {"x_min", "x_max", "m"});
    p.x_min = num_at(e, "x_min", "eulerian_out");
    p.x_max = num_at(e, "x_max", "eulerian_out");
    p.m = static_cast<size_t>(num_at(e, "m", "eulerian_out"));
    if (p.m < 3) fail(kExitConfig, "eulerian_out.m must be at least 3");
  }
  if (cfg.contains("tolerances")) {
    const json& tl = cfg["tolerances"];
    require_keys(tl, "tolerances", {"constraint_tol", "energy_tol"});
    rs.constraint_tol = num_or(tl, "constraint_tol", 1e-6);
    rs.energy_tol = num_or(tl, "energy_tol", 1e-6);
  }
  if (need_output) {
    if (!cfg.contains("output")) fail(kExitConfig, "config requires \"output\"");
    const json& o = cfg["output"];
    require_keys(o, "output", {"directory", "format"});
    if (!o.contains("directory")) fail(kExitConfig, "output requires \"directory\"");
    rs.directory = o["directory"].get<std::string>();
    rs.format = o.contains("format") ? o["format"].get<std::string>() : "csv";
    if (rs.format != "csv" && rs.format != "json")
      fail(kExitConfig, "output.format must be \"csv\" or \"json\"");
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitIo, "cannot open " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    fail(kExitConfig, std::string("config parse error: ") + e.what());
  }
  return cfg;
}

// ---- run --------------------------------------------------------------------

struct SimHandle {
  m2ch_sim* sim = nullptr;
  ~SimHandle() { m2ch_sim_destroy(sim); }
};

int map_status(m2ch_status s) {
  switch (s) {
    case M2CH_OK:
      return kExitOk;
    case M2CH_ERR_INVALID_ARGUMENT:
    case M2CH_ERR_DOMAIN:
      return kExitConfig;
    case M2CH_ERR_IO:
      return kExitIo;
    default:
      return kExitNumerical;
  }
}

std::vector<double> fetch_label(const m2ch_sim* sim, m2ch_label_field f) {
  std::vector<double> v(m2ch_sim_label_count(sim));
  m2ch_sim_label_data(sim, f, v.data(), v.size());
  return v;
}

std::vector<double> fetch_output(const m2ch_sim* sim, m2ch_output_field f) {
  std::vector<double> v(m2ch_sim_output_count(sim));
  m2ch_sim_output_data(sim, f, v.data(), v.size());
  return v;
}

int cmd_run(const std::string& config_path) {
  json cfg = load_json(config_path);
  require_keys(cfg, "config",
               {"scenario", "grid", "time", "eulerian_out", "output", "tolerances"});
  if (!cfg.contains("scenario")) fail(kExitConfig, "config requires \"scenario\"");

  ParsedScenario sc;
  m2ch_params_init(&sc.params);
  parse_scenario(cfg["scenario"], "scenario", sc);
  RunSettings rs;
  parse_common(cfg, sc.params, rs, true);

  std::error_code ec;
  fs::create_directories(rs.directory, ec);
  if (ec) fail(kExitIo, "cannot create output directory " + rs.directory);

  char errbuf[256] = {0};
  SimHandle h;
  h.sim = m2ch_sim_create(&sc.params, errbuf, sizeof(errbuf));
  if (!h.sim) fail(kExitConfig, std::string("cannot set up run: ") + errbuf);

  std::vector<double> diag_t, diag_e, diag_nu, diag_r218, diag_r219, diag_break;
  std::vector<double> atom_t, atom_loc, atom_mass;
  const bool json_mode = rs.format == "json";

  std::size_t snap_index = 0;
  bool warned_constraints = false;
  double energy0 = 0.0;
  for (;;) {
    m2ch_diagnostics d;
    m2ch_sim_diagnostics(h.sim, &d);
    if (snap_index == 0) energy0 = d.total_energy;

    std::vector<double> xi = fetch_label(h.sim, M2CH_LABEL_XI);
    std::vector<double> y = fetch_label(h.sim, M2CH_LABEL_Y);
    std::vector<double> U = fetch_label(h.sim, M2CH_LABEL_U);
    std::vector<double> G = fetch_label(h.sim, M2CH_LABEL_GAMMA);
    std::vector<double> R = fetch_label(h.sim, M2CH_LABEL_R);
    std::vector<double> H = fetch_label(h.sim, M2CH_LABEL_H);
    std::vector<double> nu = fetch_label(h.sim, M2CH_LABEL_NU);
    std::vector<double> beta = fetch_label(h.sim, M2CH_LABEL_BETA);
    std::vector<double> kappa = fetch_label(h.sim, M2CH_LABEL_KAPPA);
    std::vector<double> delta = fetch_label(h.sim, M2CH_LABEL_DELTA);
    std::vector<double> x = fetch_output(h.sim, M2CH_OUTPUT_X);
    std::vector<double> u = fetch_output(h.sim, M2CH_OUTPUT_U);
    std::vector<double> gamma = fetch_output(h.sim, M2CH_OUTPUT_GAMMA);
    std::vector<double> mu = fetch_output(h.sim, M2CH_OUTPUT_MU_DENSITY);

    size_t atom_count = 0;
    m2ch_sim_atom_count(h.sim, &atom_count);
    std::vector<double> locs(atom_count), masses(atom_count);
    if (atom_count > 0) m2ch_sim_atoms(h.sim, locs.data(), masses.data(), atom_count);

    char name[64];
    if (json_mode) {
      std::snprintf(name, sizeof(name), "snapshot_%04zu.json", snap_index);
      json snap;
      snap["t"] = d.t;
      snap["lagrangian"] = {{"xi", xi},     {"y", y},         {"U", U},
                            {"Gamma", G},   {"R", R},         {"H", H},
                            {"nu", nu},     {"beta", beta},   {"kappa", kappa},
                            {"delta", delta}};
      snap["eulerian"] = {{"x", x}, {"u", u}, {"gamma", gamma}, {"mu_density", mu}};
      json atoms = json::array();
      for (size_t k = 0; k < atom_count; ++k)
        atoms.push_back({{"location", locs[k]}, {"mass", masses[k]}});
      snap["atoms"] = atoms;
      snap["diagnostics"] = {{"t", d.t},
                             {"total_energy", d.total_energy},
                             {"min_nu", d.min_nu},
                             {"res_218", d.res_slope},
                             {"res_219", d.res_energy},
                             {"breaking_flag", d.breaking != 0}};
      std::ofstream out(fs::path(rs.directory) / name, std::ios::binary);
      if (!out) fail(kExitIo, "cannot write snapshot json");
      out << snap.dump(2) << "\n";
    } else {
      std::snprintf(name, sizeof(name), "lagrangian_%04zu.csv", snap_index);
      write_csv(fs::path(rs.directory) / name,
                {"xi", "y", "U", "Gamma", "R", "H", "nu", "beta", "kappa", "delta"},
                {&xi, &y, &U, &G, &R, &H, &nu, &beta, &kappa, &delta});
      std::snprintf(name, sizeof(name), "eulerian_%04zu.csv", snap_index);
      write_csv(fs::path(rs.directory) / name, {"x", "u", "gamma", "mu_density"},
                {&x, &u, &gamma, &mu});
    }

    diag_t.push_back(d.t);
    diag_e.push_back(d.total_energy);
    diag_nu.push_back(d.min_nu);
    diag_r218.push_back(d.res_slope);
    diag_r219.push_back(d.res_energy);
    diag_break.push_back(d.breaking ? 1.0 : 0.0);
    for (size_t k = 0; k < atom_count; ++k) {
      atom_t.push_back(d.t);
      atom_loc.push_back(locs[k]);
      atom_mass.push_back(masses[k]);
    }

    if (std::max(d.res_slope, d.res_energy) > rs.constraint_tol && !warned_constraints) {
      std::cerr << "warning: constraint residuals exceed " << rs.constraint_tol
                << " at t=" << d.t << "\n";
      warned_constraints = true;
    }

    ++snap_index;
    if (m2ch_sim_done(h.sim)) break;
    m2ch_status st = m2ch_sim_advance(h.sim);
    if (st != M2CH_OK)
      fail(map_status(st) == kExitOk ? kExitNumerical : map_status(st),
           std::string("run failed: ") + m2ch_sim_last_error(h.sim));
  }

  write_csv(fs::path(rs.directory) / "diagnostics.csv",
            {"t", "total_energy", "min_nu", "res_218", "res_219", "breaking_flag"},
            {&diag_t, &diag_e, &diag_nu, &diag_r218, &diag_r219, &diag_break});
  write_csv(fs::path(rs.directory) / "atoms.csv", {"t", "location", "mass"},
            {&atom_t, &atom_loc, &atom_mass});

  const double drift =
      std::abs(diag_e.back() - energy0) / std::max(std::abs(energy0), 1e-300);
  if (energy0 != 0.0 && drift > rs.energy_tol)
    std::cerr << "warning: total-energy drift " << drift << " exceeds " << rs.energy_tol
              << "\n";
  std::cout << "wrote " << snap_index << " snapshots to " << rs.directory << "\n";
  return kExitOk;
}

// ---- compare ----------------------------------------------------------------

struct FieldDiff {
  double linf = 0.0;
  double l2 = 0.0;
};

// Difference between two sampled columns; when sizes obey nB == 2 nA - 1 the
// finer one is subsampled onto the shared nodes.
std::optional<FieldDiff> column_diff(const std::vector<double>& a,
                                     const std::vector<double>& b, double h) {
  const std::vector<double>* pa = &a;
  std::vector<double> tmp;
  if (a.size() == b.size()) {
    // direct
  } else if (b.size() == 2 * a.size() - 1) {
    tmp.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = b[2 * i];
    return column_diff(a, tmp, h);
  } else if (a.size() == 2 * b.size() - 1) {
    tmp.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) tmp[i] = a[2 * i];
    pa = &tmp;
    return column_diff(*pa, b, 2.0 * h);
  } else {
    return std::nullopt;
  }
  FieldDiff d;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = a[i] - b[i];
    d.linf = std::max(d.linf, std::abs(e));
    const double w = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
    s += w * e * e;
  }
  d.l2 = std::sqrt(s * h);
  return d;
}

std::vector<std::size_t> snapshot_indices(const fs::path& dir, const char* pattern) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0;; ++k) {
    char name[64];
    std::snprintf(name, sizeof(name), pattern, k);
    if (!fs::exists(dir / name)) break;
    idx.push_back(k);
  }
  return idx;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b,
                const std::string& dir_c, bool require_zero) {
  struct Pair {
    const char* pattern;
    std::vector<std::string> fields;
  };
  const std::vector<Pair> kinds = {
      {"eulerian_%04zu.csv", {"u", "gamma", "mu_density"}},
      {"lagrangian_%04zu.csv",
       {"y", "U", "Gamma", "R", "H", "nu", "beta", "kappa", "delta"}},
  };

  auto diag_times = [&](const fs::path& dir) {
    CsvTable t = read_csv(dir / "diagnostics.csv");
    auto c = t.column("t");
    if (!c) fail(kExitIo, "diagnostics.csv missing t column in " + dir.string());
    return t.columns[*c];
  };
  std::vector<double> ta = diag_times(dir_a), tb = diag_times(dir_b);
  if (ta.size() != tb.size())
    fail(kExitConfig, "snapshot sets differ between " + dir_a + " and " + dir_b);
  for (std::size_t i = 0; i < ta.size(); ++i)
    if (std::abs(ta[i] - tb[i]) > 1e-12)
      fail(kExitConfig, "snapshot times differ between " + dir_a + " and " + dir_b);

  double worst = 0.0;
  std::map<std::string, double> summary_ab, summary_bc;

  auto compare_dirs = [&](const fs::path& A, const fs::path& B,
                          std::map<std::string, double>& summary) {
    for (const Pair& kind : kinds) {
      std::vector<std::size_t> ia = snapshot_indices(A, kind.pattern);
      std::vector<std::size_t> ib = snapshot_indices(B, kind.pattern);
      if (ia.size() != ib.size())
        fail(kExitConfig, "snapshot sets differ between " + A.string() + " and " +
                              B.string());
      for (std::size_t k : ia) {
        char name[64];
        std::snprintf(name, sizeof(name), kind.pattern, k);
        CsvTable a = read_csv(A / name);
        CsvTable b = read_csv(B / name);
        const double h = a.columns[0].size() > 1
                             ? a.columns[0][1] - a.columns[0][0]
                             : 1.0;
        for (const std::string& f : kind.fields) {
          auto ca = a.column(f);
          auto cb = b.column(f);
          if (!ca || !cb) continue;
          auto d = column_diff(a.columns[*ca], b.columns[*cb], h);
          if (!d) {
            std::cout << name << " " << f << ": incompatible sizes, skipped\n";
            continue;
          }
          std::printf("%s %-10s Linf %.6e  L2 %.6e\n", name, f.c_str(), d->linf, d->l2);
          summary[f] = std::max(summary[f], d->linf);
          worst = std::max(worst, d->linf);
        }
      }
    }
  };

  compare_dirs(dir_a, dir_b, summary_ab);
  std::cout << "-- max Linf over snapshots (A vs B) --\n";
  for (auto& [f, v] : summary_ab) std::printf("%-10s %.6e\n", f.c_str(), v);

  if (!dir_c.empty()) {
    std::vector<double> tc = diag_times(dir_c);
    if (tc.size() != tb.size()) fail(kExitConfig, "snapshot sets differ for " + dir_c);
    compare_dirs(dir_b, dir_c, summary_bc);
    std::cout << "-- convergence order log2(|A-B| / |B-C|) --\n";
    for (auto& [f, vab] : summary_ab) {
      auto it = summary_bc.find(f);
      if (it == summary_bc.end() || it->second == 0.0 || vab == 0.0) continue;
      std::printf("%-10s order %.3f\n", f.c_str(), std::log2(vab / it->second));
    }
  }

  if (require_zero && worst > 0.0) {
    std::cerr << "directories differ (max Linf " << worst << ")\n";
    return kExitNumerical;
  }
  return kExitOk;
}

// ---- metric -------------------------------------------------------------------

int cmd_metric(const std::string& config_path) {
  json cfg = load_json(config_path);
  require_keys(cfg, "config", {"scenario_a", "scenario_b", "grid", "time",
                               "eulerian_out", "metric", "tolerances"});
  if (!cfg.contains("scenario_a") || !cfg.contains("scenario_b"))
    fail(kExitConfig, "metric config requires scenario_a and scenario_b");

  ParsedScenario a, b;
  m2ch_params_init(&a.params);
  m2ch_params_init(&b.params);
  parse_scenario(cfg["scenario_a"], "scenario_a", a);
  parse_scenario(cfg["scenario_b"], "scenario_b", b);
  RunSettings rs;
  parse_common(cfg, a.params, rs, false);

  double energy_bound = 100.0;
  if (cfg.contains("metric")) {
    require_keys(cfg["metric"], "metric", {"energy_bound"});
    energy_bound = num_or(cfg["metric"], "energy_bound", 100.0);
  }

  const size_t capacity = static_cast<size_t>(a.params.t_end / a.params.dt /
                                              std::max<size_t>(a.params.output_every, 1)) +
                          3;
  std::vector<m2ch_metric_row> rows(capacity);
  size_t written = 0;
  char errbuf[256] = {0};
  m2ch_status st = m2ch_metric_experiment(&a.params, &b.params, energy_bound, rows.data(),
                                          rows.size(), &written, errbuf, sizeof(errbuf));
  if (st != M2CH_OK) fail(map_status(st), std::string("metric failed: ") + errbuf);

  std::printf("%-12s %-22s %-22s\n", "t", "distance_upper", "ratio");
  for (size_t k = 0; k < written; ++k) {
    if (rows[k].zero_start)
      std::printf("%-12g %-22.16e %-22s\n", rows[k].t, rows[k].distance, "exact-zero");
    else
      std::printf("%-12g %-22.16e %-22.16e\n", rows[k].t, rows[k].distance, rows[k].ratio);
  }
  return kExitOk;
}

// ---- check --------------------------------------------------------------------

int cmd_check(const std::string& path, double tol) {
  CsvTable t = read_csv(path);
  const std::vector<std::string> need = {"xi", "y",  "U",    "Gamma", "R",
                                         "H",  "nu", "beta", "kappa", "delta"};
  std::vector<const std::vector<double>*> cols;
  for (const std::string& f : need) {
    auto c = t.column(f);
    if (!c) fail(kExitConfig, "snapshot is missing column " + f);
    cols.push_back(&t.columns[*c]);
  }
  m2ch_constraint_report rep;
  m2ch_status st = m2ch_check_state(
      cols[0]->data(), cols[1]->data(), cols[2]->data(), cols[3]->data(), cols[4]->data(),
      cols[5]->data(), cols[6]->data(), cols[7]->data(), cols[8]->data(), cols[9]->data(),
      t.rows(), tol, &rep);
  if (st != M2CH_OK) fail(map_status(st), "check failed");
  std::printf("min_nu           % .6e\n", rep.min_nu);
  std::printf("min_delta        % .6e\n", rep.min_delta);
  std::printf("res_218          % .6e\n", rep.res_slope);
  std::printf("res_219          % .6e\n", rep.res_energy);
  std::printf("H_at_left        % .6e\n", rep.h_at_left);
  std::printf("H_nondecreasing  %s\n", rep.h_nondecreasing ? "yes" : "no");
  std::printf("verdict          %s (tol %g)\n", rep.pass ? "PASS" : "FAIL", tol);
  return rep.pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conservative shallow-water wave system simulator"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "simulate a configuration");
  run->add_option("config", run_config, "JSON configuration file")->required();

  std::string cmp_a, cmp_b, cmp_c;
  bool require_zero = false;
  CLI::App* cmp = app.add_subcommand("compare", "diff two run directories");
  cmp->add_option("dirA", cmp_a)->required();
  cmp->add_option("dirB", cmp_b)->required();
  cmp->add_option("dirC", cmp_c, "optional third directory for order estimates");
  cmp->add_flag("--require-zero", require_zero, "exit nonzero on any difference");

  std::string metric_config;
  CLI::App* metric = app.add_subcommand("metric", "distance ratio experiment");
  metric->add_option("config", metric_config)->required();

  std::string check_path;
  double check_tol = 1e-6;
  CLI::App* check = app.add_subcommand("check", "validate a snapshot");
  check->add_option("snapshot", check_path)->required();
  check->add_option("--tol", check_tol, "constraint tolerance");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_config);
    if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_c, require_zero);
    if (metric->parsed()) return cmd_metric(metric_config);
    if (check->parsed()) return cmd_check(check_path, check_tol);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
