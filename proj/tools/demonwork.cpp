// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: work-extraction games, witness evaluations, the
// photon-counting twin, and regeneration of the reference tables and figure
// datasets as machine-readable files.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "demonwork/counts.hpp"
#include "demonwork/entropy.hpp"
#include "demonwork/serialize.hpp"
#include "demonwork/states.hpp"
#include "demonwork/tomography.hpp"
#include "demonwork/witness.hpp"
#include "demonwork/work2.hpp"
#include "demonwork/work3.hpp"

#ifndef DEMONWORK_DATA_DIR
#define DEMONWORK_DATA_DIR "data"
#endif

namespace dw = demonwork;
using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Output helpers: all numbers printed with six significant digits.
// ---------------------------------------------------------------------------

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double round6(double v) { return std::strtod(fmt6(v).c_str(), nullptr); }

json jnum(double v) { return json(round6(v)); }

// Emitted verdicts are recomputed from the emitted six-digit values so that
// files stay self-consistent under reparsing.
bool verdict(double value, double threshold) { return round6(value) > round6(threshold); }

json jdir(const dw::BlochDir& d) { return json::array({jnum(d.x), jnum(d.y), jnum(d.z)}); }

struct Table {
  std::string schema;                     // e.g. "work2-scan v1"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }

  std::string to_csv() const {
    std::ostringstream os;
    os << "# demonwork " << schema << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
    return os.str();
  }

  json to_json() const {
    json out = json::array();
    for (const auto& row : rows) {
      json obj;
      for (std::size_t i = 0; i < columns.size(); ++i) {
        char* end = nullptr;
        const std::string& cell = row[i];
        const double v = std::strtod(cell.c_str(), &end);
        if (end && *end == '\0' && !cell.empty()) {
          obj[columns[i]] = v;
        } else {
          obj[columns[i]] = cell;
        }
      }
      out.push_back(obj);
    }
    return json{{"schema", schema}, {"rows", out}};
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) dw::fail("cannot open output file: " + out_path);
  f << text;
}

void emit_table(const Table& t, const std::string& format, const std::string& out_path) {
  if (format == "json") {
    emit(t.to_json().dump(2) + "\n", out_path);
  } else {
    emit(t.to_csv(), out_path);
  }
}

void emit_report(const json& j, const std::string& format, const std::string& out_path) {
  if (format == "csv") {
    Table t;
    t.schema = "report v1";
    t.columns = {"key", "value"};
    for (auto it = j.begin(); it != j.end(); ++it) {
      t.add_row({it.key(), it->is_string() ? it->get<std::string>() : it->dump()});
    }
    emit(t.to_csv(), out_path);
  } else {
    emit(j.dump(2) + "\n", out_path);
  }
}

// ---------------------------------------------------------------------------
// Reference-measurement table (bundled dataset, see data/tables1-3.csv)
// ---------------------------------------------------------------------------

struct RefRow {
  int table = 0;
  std::string state;
  std::string variant;
  double mu = 0.0, phi = 0.0;
  std::string quantity;
  double value = 0.0, sigma = 0.0;
  bool bold = false;
};

std::vector<RefRow> load_reference(const std::string& data_dir) {
  const std::string path = data_dir + "/tables1-3.csv";
  std::ifstream f(path);
  if (!f) dw::fail("cannot open reference dataset: " + path);
  std::vector<RefRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header line
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) dw::fail("malformed reference row: " + line);
    RefRow r;
    r.table = std::stoi(cells[0]);
    r.state = cells[1];
    r.variant = cells[2];
    r.mu = cells[3].empty() ? 0.0 : std::stod(cells[3]);
    r.phi = cells[4].empty() ? 0.0 : std::stod(cells[4]);
    r.quantity = cells[5];
    r.value = std::stod(cells[6]);
    r.sigma = std::stod(cells[7]);
    r.bold = cells[8] == "1";
    rows.push_back(r);
  }
  if (rows.empty()) dw::fail("reference dataset is empty: " + path);
  return rows;
}

// ---------------------------------------------------------------------------
// Shared options
// ---------------------------------------------------------------------------

struct Options {
  double mu = 1.0;
  double phi = 0.0;
  std::string base = "ghzc";
  std::string mode = "adaptive-v";
  std::string game = "pair";
  std::string v_spec = "z";
  std::string settings;
  std::string from_tomography;
  double alpha = 0.0;
  bool alpha_given = false;
  bool exact = false;
  int n_angles = 19;
  int restarts = 64;
  std::string config;

  // global
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::string format;  // per-command default when empty
  int points = 0;      // per-command default when 0
  double rate = 0.0;
  double duration = 0.0;
  int resamples = 0;
  bool degrees = false;
  std::string data_dir = DEMONWORK_DATA_DIR;
};

double to_rad(const Options& o, double angle) {
  return o.degrees ? angle * std::numbers::pi / 180.0 : angle;
}

dw::ThreeQubitBase parse_base(const std::string& b) {
  if (b == "ghz") return dw::ThreeQubitBase::ghz;
  if (b == "ghzc") return dw::ThreeQubitBase::ghz_cluster;
  if (b == "w") return dw::ThreeQubitBase::w;
  dw::fail("unknown base state: " + b + " (expected ghz, ghzc or w)");
}

dw::Extraction parse_game(const std::string& g) {
  if (g == "pair") return dw::Extraction::axis_pair;
  if (g == "charis") return dw::Extraction::charis;
  dw::fail("unknown game form: " + g + " (expected pair or charis)");
}

dw::BlochDir parse_dir(const Options& o, const std::string& spec) {
  if (spec == "x") return dw::BlochDir::unit(dw::Axis::x);
  if (spec == "y") return dw::BlochDir::unit(dw::Axis::y);
  if (spec == "z") return dw::BlochDir::unit(dw::Axis::z);
  const auto comma = spec.find(',');
  if (comma == std::string::npos) dw::fail("direction must be x, y, z or 'theta,phi'");
  const double theta = to_rad(o, std::stod(spec.substr(0, comma)));
  const double phi_az = to_rad(o, std::stod(spec.substr(comma + 1)));
  return dw::BlochDir::polar(theta, phi_az);
}

std::vector<double> parse_settings(const Options& o, const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(to_rad(o, std::stod(cell)));
  return out;
}

void require_seed(const Options& o) {
  if (!o.seed_given) dw::fail("this command draws random counts: --seed is mandatory");
}

std::string fmt_format(const Options& o, const std::string& fallback) {
  if (o.format.empty()) return fallback;
  if (o.format != "csv" && o.format != "json") dw::fail("unknown format: " + o.format);
  return o.format;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

void cmd_work2(const Options& o) {
  const double phi = to_rad(o, o.phi);
  const dw::DensityOp rho = dw::werner_like(o.mu, phi);
  dw::CircleSearch search;
  if (o.points > 0) search.n_points = o.points;
  const dw::MaxWork2 mw = dw::max_work2(rho, search);
  json rep{{"command", "work2"},
           {"mu", jnum(o.mu)},
           {"phi_rad", jnum(phi)},
           {"W", jnum(mw.best.average)},
           {"circle_normal", jdir(mw.normal)},
           {"threshold", jnum(dw::Thresholds::two_qubit)},
           {"entangled_witnessed", verdict(mw.best.average, dw::Thresholds::two_qubit)}};
  if (o.rate > 0.0 && o.duration > 0.0) {
    require_seed(o);
    const dw::ProtocolResult pr =
        dw::work2_protocol(rho, dw::GreatCircle::xz(), o.n_angles, o.rate, o.duration, o.seed);
    json sim{{"n_angles", o.n_angles},
             {"rate_hz", jnum(o.rate)},
             {"duration_s", jnum(o.duration)},
             {"W", jnum(pr.average)},
             {"sigma_propagation", jnum(pr.sigma_propagation)}};
    if (o.resamples > 0) {
      sim["sigma_monte_carlo"] = jnum(dw::monte_carlo_sigma(
          pr.quads, dw::work_from_quads, o.resamples, dw::derive_seed(o.seed, 0xabcd)));
    }
    rep["simulated"] = sim;
  }
  emit_report(rep, fmt_format(o, "json"), o.out);
}

void cmd_work3(const Options& o) {
  const dw::DensityOp rho = dw::rho3(o.mu, parse_base(o.base));
  const dw::Extraction game = parse_game(o.game);
  dw::VSearch search;
  if (o.points > 0) search.grid = o.points;
  dw::VMode mode;
  if (o.mode == "single-v") {
    mode = dw::VMode::single_v;
  } else if (o.mode == "adaptive-v") {
    mode = dw::VMode::adaptive_v;
  } else {
    dw::fail("unknown mode: " + o.mode + " (expected single-v or adaptive-v)");
  }
  dw::WorkResult3 res;
  if (mode == dw::VMode::single_v && !o.v_spec.empty() && o.v_spec != "opt") {
    res = dw::avg_work3(rho, parse_dir(o, o.v_spec), game);
  } else {
    res = dw::max_work3(rho, mode, game, search).best;
  }
  json axes = json::array();
  const char* names[3] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    axes.push_back(json{{"axis", names[i]},
                        {"W", jnum(res.per_axis[i].w)},
                        {"v", jdir(res.per_axis[i].v_used)}});
  }
  emit_report(json{{"command", "work3"},
                   {"base", o.base},
                   {"mu", jnum(o.mu)},
                   {"mode", o.mode},
                   {"game", o.game},
                   {"W", jnum(res.average)},
                   {"per_axis", axes},
                   {"threshold_separable", jnum(dw::Thresholds::three_sep)},
                   {"threshold_w_class", jnum(dw::Thresholds::three_wclass)},
                   {"entanglement_witnessed", verdict(res.average, dw::Thresholds::three_sep)},
                   {"ghz_class_witnessed", verdict(res.average, dw::Thresholds::three_wclass)}},
              fmt_format(o, "json"), o.out);
}

void cmd_bell(const Options& o) {
  const double phi = to_rad(o, o.phi);
  const dw::DensityOp rho = dw::werner_like(o.mu, phi);
  const dw::BellMax bm = dw::max_bell(rho);
  json rep{{"command", "bell"},
           {"mu", jnum(o.mu)},
           {"phi_rad", jnum(phi)},
           {"S_max", jnum(bm.report.value)},
           {"alpha_star_rad", jnum(bm.alpha)},
           {"S_max_closed_form", jnum(dw::bell_family_max(o.mu, phi))},
           {"threshold", jnum(2.0)},
           {"violated", verdict(bm.report.value, 2.0)}};
  if (o.alpha_given) {
    rep["alpha_rad"] = jnum(to_rad(o, o.alpha));
    rep["S_at_alpha"] = jnum(dw::bell_s(rho, to_rad(o, o.alpha)));
  }
  emit_report(rep, fmt_format(o, "json"), o.out);
}

void cmd_tangle(const Options& o) {
  const double phi = to_rad(o, o.phi);
  emit_report(json{{"command", "tangle"},
                   {"mu", jnum(o.mu)},
                   {"phi_rad", jnum(phi)},
                   {"T", jnum(dw::tangle2(dw::werner_like(o.mu, phi)))},
                   {"T_closed_form", jnum(dw::tangle_family(o.mu, phi))}},
              fmt_format(o, "json"), o.out);
}

void cmd_svetlichny(const Options& o) {
  json rep{{"command", "svetlichny"}};
  dw::SvetlichnySearch cfg;
  cfg.restarts = o.restarts;
  std::optional<dw::DensityOp> rho;
  std::optional<dw::TomographyRecord> record;
  if (!o.from_tomography.empty()) {
    std::ifstream f(o.from_tomography);
    if (!f) dw::fail("cannot open tomography record: " + o.from_tomography);
    json j = json::parse(f, nullptr, true);
    record = dw::tomography_record_from_json(j);
    rho = dw::linear_inversion(*record);
    rep["source"] = o.from_tomography;
  } else {
    rho = dw::rho3(o.mu, parse_base(o.base));
    rep["base"] = o.base;
    rep["mu"] = jnum(o.mu);
  }
  const dw::SvetlichnyMax sm = dw::max_svetlichny(*rho, cfg);
  rep["S3"] = jnum(sm.report.value);
  rep["threshold"] = jnum(4.0);
  rep["violated"] = verdict(sm.report.value, 4.0);
  rep["angles"] = json{{"a", json::array({jnum(sm.angles.a[0]), jnum(sm.angles.a[1]), jnum(sm.angles.a[2])})},
                       {"a_prime", json::array({jnum(sm.angles.ap[0]), jnum(sm.angles.ap[1]), jnum(sm.angles.ap[2])})}};
  if (record && o.resamples > 0) {
    require_seed(o);
    std::vector<double> means;
    for (const auto& row : record->counts) {
      for (double c : row) means.push_back(c);
    }
    dw::SvetlichnySearch mc_cfg;
    mc_cfg.restarts = 16;
    const auto stat = [&](const std::vector<double>& draw) {
      dw::TomographyRecord r = *record;
      std::size_t idx = 0;
      for (auto& row : r.counts) {
        for (double& c : row) c = draw[idx++];
      }
      return dw::max_svetlichny(dw::linear_inversion(r), mc_cfg).report.value;
    };
    rep["sigma"] = jnum(dw::monte_carlo_sigma_counts(means, stat, o.resamples, o.seed));
  }
  emit_report(rep, fmt_format(o, "json"), o.out);
}

void cmd_table1(const Options& o) {
  const std::vector<RefRow> ref = load_reference(o.data_dir);
  Table t;
  t.schema = "table1 v1";
  t.columns = {"mu", "phi", "W_model", "S_model", "T_model",
               "W_ref", "W_ref_sigma", "S_ref", "S_ref_sigma", "T_ref", "T_ref_sigma",
               "W_bold_model", "W_bold_ref", "W_bold_agree",
               "S_bold_model", "S_bold_ref", "S_bold_agree"};
  // group the long-format reference by (mu, phi)
  std::vector<std::pair<double, double>> keys;
  for (const RefRow& r : ref) {
    if (r.table != 1) continue;
    const std::pair<double, double> key{r.mu, r.phi};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [mu, phi] : keys) {
    const auto find = [&](const std::string& q) -> const RefRow& {
      for (const RefRow& r : ref) {
        if (r.table == 1 && r.mu == mu && r.phi == phi && r.quantity == q) return r;
      }
      dw::fail("reference dataset is missing a quantity for a table-1 row");
    };
    const RefRow& rw = find("W");
    const RefRow& rs = find("S");
    const RefRow& rt = find("T");
    const dw::DensityOp rho = dw::werner_like(mu, phi);
    const double w_model = dw::max_work2(rho).best.average;
    const double s_model = dw::max_bell(rho).report.value;
    const double t_model = dw::tangle2(rho);
    const bool w_bold_model = verdict(w_model, dw::Thresholds::two_qubit);
    const bool s_bold_model = verdict(s_model, 2.0);
    t.add_row({fmt6(mu), fmt6(phi), fmt6(w_model), fmt6(s_model), fmt6(t_model),
               fmt6(rw.value), fmt6(rw.sigma), fmt6(rs.value), fmt6(rs.sigma),
               fmt6(rt.value), fmt6(rt.sigma),
               w_bold_model ? "1" : "0", rw.bold ? "1" : "0",
               w_bold_model == rw.bold ? "1" : "0",
               s_bold_model ? "1" : "0", rs.bold ? "1" : "0",
               s_bold_model == rs.bold ? "1" : "0"});
  }
  emit_table(t, fmt_format(o, "csv"), o.out);
}

void cmd_tables23(const Options& o) {
  const std::vector<RefRow> ref = load_reference(o.data_dir);
  Table t;
  t.schema = "tables23 v1";
  t.columns = {"resource", "variant", "role", "charis_qubit", "W_ideal", "W_noisy",
               "W_ref", "W_ref_sigma", "above_separable", "above_w_class"};
  const double mu = o.mu;
  for (const std::string& resource : {std::string("ghzc"), std::string("w")}) {
    const dw::ThreeQubitBase base = parse_base(resource);
    for (const std::string& variant : {std::string("ideal"), std::string("dephased")}) {
      const dw::DensityOp pure = dw::rho3(1.0, base);
      const dw::DensityOp noisy = dw::rho3(mu, base);
      const int charis_order[3] = {2, 0, 1};  // published column order: path, pol1, pol2
      for (int role = 0; role < 3; ++role) {
        const int charis = charis_order[role];
        const auto value_for = [&](const dw::DensityOp& rho0) {
          dw::DensityOp rho = variant == "dephased" ? dw::dephase_qubit(rho0, 2) : rho0;
          rho = dw::permute_roles(rho, charis);
          return dw::avg_work3_adaptive(rho).average;
        };
        const double w_ideal = value_for(pure);
        const double w_noisy = value_for(noisy);
        std::string w_ref = "", w_ref_sigma = "";
        for (const RefRow& r : ref) {
          if ((r.table == 2 || r.table == 3) && r.state == resource && r.variant == variant &&
              r.quantity == "W" + std::to_string(role + 1)) {
            w_ref = fmt6(r.value);
            w_ref_sigma = fmt6(r.sigma);
          }
        }
        t.add_row({resource, variant, "W" + std::to_string(role + 1), std::to_string(charis),
                   fmt6(w_ideal), fmt6(w_noisy), w_ref, w_ref_sigma,
                   verdict(w_ideal, dw::Thresholds::three_sep) ? "1" : "0",
                   verdict(w_ideal, dw::Thresholds::three_wclass) ? "1" : "0"});
      }
    }
  }
  emit_table(t, fmt_format(o, "csv"), o.out);
}

double bisect_crossing(const std::function<double(double)>& f, double target, double lo, double hi) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo * fhi > 0.0) return std::nan("");
  for (int i = 0; i < 60 && hi - lo > 1e-6; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid) - target;
    if (flo * fm <= 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

void cmd_fig2(const Options& o) {
  const double phi = to_rad(o, o.phi);
  const int n = o.points > 0 ? o.points : 41;
  const bool stochastic = o.rate > 0.0 && o.duration > 0.0;
  if (stochastic) require_seed(o);
  Table t;
  t.schema = "fig2 v1";
  t.columns = {"kind", "mu", "W", "S", "W_above", "S_above", "W_sim", "W_sigma"};
  const auto w_of = [&](double mu) { return dw::max_work2(dw::werner_like(mu, phi)).best.average; };
  const auto s_of = [&](double mu) { return dw::bell_family_max(mu, phi); };
  std::vector<double> mu_grid, w_sim;
  std::vector<std::vector<dw::QuadCounts>> quads;
  for (int i = 0; i < n; ++i) {
    const double mu = static_cast<double>(i) / (n - 1);
    const double w = w_of(mu), s = s_of(mu);
    std::string sim = "", sigma = "";
    if (stochastic) {
      const dw::ProtocolResult pr =
          dw::work2_protocol(dw::werner_like(mu, phi), dw::GreatCircle::xz(), o.n_angles, o.rate,
                             o.duration, dw::derive_seed(o.seed, static_cast<std::uint64_t>(i)));
      sim = fmt6(pr.average);
      sigma = fmt6(pr.sigma_propagation);
      mu_grid.push_back(mu);
      w_sim.push_back(pr.average);
      quads.push_back(pr.quads);
    }
    t.add_row({"curve", fmt6(mu), fmt6(w), fmt6(s),
               verdict(w, dw::Thresholds::two_qubit) ? "1" : "0", verdict(s, 2.0) ? "1" : "0",
               sim, sigma});
  }
  // crossing roots come from the noiseless model; the stochastic curve adds
  // a Monte Carlo confidence interval around the work crossing
  const double mu_w = bisect_crossing(w_of, dw::Thresholds::two_qubit, 0.0, 1.0);
  const double mu_s = bisect_crossing(s_of, 2.0, 0.0, 1.0);
  if (!std::isnan(mu_w)) {
    std::string ci_lo = "", ci_hi = "";
    if (stochastic && o.resamples > 0) {
      const auto crossing_of = [&](const std::vector<double>& curve) {
        for (std::size_t i = 1; i < curve.size(); ++i) {
          const double a = curve[i - 1] - dw::Thresholds::two_qubit;
          const double b = curve[i] - dw::Thresholds::two_qubit;
          if (a <= 0.0 && b > 0.0) {
            return mu_grid[i - 1] + (mu_grid[i] - mu_grid[i - 1]) * (-a) / (b - a);
          }
        }
        return std::nan("");
      };
      std::vector<double> roots;
      for (int r = 0; r < o.resamples; ++r) {
        std::vector<double> curve(w_sim.size());
        for (std::size_t i = 0; i < quads.size(); ++i) {
          dw::Rng rng(dw::derive_seed(o.seed, 0xf162, r, i));
          std::vector<dw::QuadCounts> draw(quads[i].size());
          for (std::size_t k = 0; k < quads[i].size(); ++k) {
            draw[k].n_pp = rng.poisson(static_cast<double>(quads[i][k].n_pp));
            draw[k].n_pm = rng.poisson(static_cast<double>(quads[i][k].n_pm));
            draw[k].n_mp = rng.poisson(static_cast<double>(quads[i][k].n_mp));
            draw[k].n_mm = rng.poisson(static_cast<double>(quads[i][k].n_mm));
          }
          curve[i] = dw::work_from_quads(draw);
        }
        const double root = crossing_of(curve);
        if (!std::isnan(root)) roots.push_back(root);
      }
      if (roots.size() >= 10) {
        std::sort(roots.begin(), roots.end());
        ci_lo = fmt6(roots[static_cast<std::size_t>(0.16 * (roots.size() - 1))]);
        ci_hi = fmt6(roots[static_cast<std::size_t>(0.84 * (roots.size() - 1))]);
      }
    }
    t.add_row({"crossing_W", fmt6(mu_w), fmt6(dw::Thresholds::two_qubit), "", "", "", ci_lo, ci_hi});
  }
  if (!std::isnan(mu_s)) t.add_row({"crossing_S", fmt6(mu_s), "", fmt6(2.0), "", "", "", ""});
  emit_table(t, fmt_format(o, "csv"), o.out);
}

void cmd_fig3(const Options& o) {
  const int n = o.points > 0 ? o.points : 25;
  Table t;
  t.schema = "fig3 v1";
  t.columns = {"mu", "phi", "quantity", "value"};
  for (int i = 0; i < n; ++i) {
    const double mu = static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double phi = (std::numbers::pi / 2.0) * j / (n - 1);
      const double s = dw::bell_family_max(mu, phi);
      if (s > 2.0) t.add_row({fmt6(mu), fmt6(phi), "S", fmt6(s)});
      const double w = dw::max_work2(dw::werner_like(mu, phi)).best.average;
      if (w > dw::Thresholds::two_qubit) t.add_row({fmt6(mu), fmt6(phi), "W", fmt6(w)});
    }
  }
  emit_table(t, fmt_format(o, "csv"), o.out);
}

void cmd_fig5(const Options& o) {
  const dw::DensityOp rho = dw::rho3(o.mu, parse_base(o.base));
  const int n = o.points > 0 ? o.points : 37;
  Table t;
  t.schema = "fig5 v1";
  t.columns = {"theta", "phi_az", "W"};
  for (const dw::ScanPoint3& p : dw::direction_scan3(rho, n, 2 * n)) {
    t.add_row({fmt6(p.theta), fmt6(p.phi_az), fmt6(p.w)});
  }
  emit_table(t, fmt_format(o, "csv"), o.out);
}

void cmd_fig6(const Options& o) {
  const dw::ThreeQubitBase base = parse_base(o.base);
  const int n = o.points > 0 ? o.points : 21;
  Table t;
  t.schema = "fig6 v1";
  t.columns = {"mu", "axis", "W", "above_separable"};
  // The three single-v helper axes. In the published (theta, phi) labels
  // x is (90, 0) and z is (0, 0); the third label (0, 90) coincides with z
  // under the standard polar convention and is read as the y axis here,
  // the only choice that yields three distinct curves.
  for (int i = 0; i < n; ++i) {
    const double mu = static_cast<double>(i) / (n - 1);
    const dw::DensityOp rho = dw::rho3(mu, base);
    for (dw::Axis a : {dw::Axis::x, dw::Axis::y, dw::Axis::z}) {
      const char* names[3] = {"x", "y", "z"};
      const double w = dw::avg_work3(rho, dw::BlochDir::unit(a)).average;
      t.add_row({fmt6(mu), names[static_cast<int>(a)], fmt6(w),
                 verdict(w, dw::Thresholds::three_sep) ? "1" : "0"});
    }
  }
  emit_table(t, fmt_format(o, "csv"), o.out);
}

void cmd_simulate_counts(const Options& o) {
  require_seed(o);
  if (o.rate <= 0.0 || o.duration <= 0.0) dw::fail("simulate-counts requires --rate and --duration");
  if (o.settings.empty()) dw::fail("simulate-counts requires --settings (comma-separated angles)");
  const std::vector<double> settings = parse_settings(o, o.settings);
  std::optional<dw::DensityOp> rho;
  if (settings.size() == 2) {
    rho = dw::werner_like(o.mu, to_rad(o, o.phi));
  } else if (settings.size() == 3) {
    rho = dw::rho3(o.mu, parse_base(o.base));
  } else {
    dw::fail("simulate-counts supports two or three analyzer settings");
  }
  const dw::CountRecord rec =
      dw::simulate_counts(*rho, dw::GreatCircle::xz(), settings, o.rate, o.duration, o.seed);
  emit_report(dw::to_json(rec), fmt_format(o, "json"), o.out);
}

void cmd_tomography(const Options& o) {
  std::optional<dw::DensityOp> rho;
  std::optional<dw::PureState> ideal;
  if (o.base == "werner" || (o.phi != 0.0 && o.base == "ghzc")) {
    rho = dw::werner_like(o.mu, to_rad(o, o.phi));
    if (o.mu == 1.0) ideal = dw::phi_state(to_rad(o, o.phi));
  } else {
    const dw::ThreeQubitBase base = parse_base(o.base);
    rho = dw::rho3(o.mu, base);
    if (o.mu == 1.0) ideal = dw::base_state(base);
  }
  dw::TomographyRecord rec;
  if (o.exact) {
    rec = dw::expected_tomography(*rho, o.rate > 0 ? o.rate : 1.0, o.duration > 0 ? o.duration : 1.0);
  } else {
    require_seed(o);
    if (o.rate <= 0.0 || o.duration <= 0.0) {
      dw::fail("tomography requires --rate and --duration (or --exact)");
    }
    rec = dw::simulate_tomography(*rho, o.rate, o.duration, o.seed);
  }
  const dw::DensityOp rebuilt = dw::linear_inversion(rec);
  double max_err = 0.0;
  for (int r = 0; r < rebuilt.mat.rows(); ++r) {
    for (int c = 0; c < rebuilt.mat.cols(); ++c) {
      max_err = std::max(max_err, std::abs(rebuilt.mat(r, c) - rho->mat(r, c)));
    }
  }
  json recon{{"purity", jnum((rebuilt.mat * rebuilt.mat).trace().real())},
             {"max_abs_error", jnum(max_err)}};
  if (ideal) recon["fidelity_ideal"] = jnum(dw::fidelity_pure(rebuilt, *ideal));
  emit_report(json{{"command", "tomography"},
                   {"record", dw::to_json(rec)},
                   {"reconstruction", recon}},
              fmt_format(o, "json"), o.out);
}

// ---------------------------------------------------------------------------
// Argument plumbing
// ---------------------------------------------------------------------------

void add_global_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--seed", o.seed, "master RNG seed (mandatory for stochastic commands)")
      ->each([&](const std::string&) { o.seed_given = true; });
  cmd.add_option("--out", o.out, "output file (stdout when omitted)");
  cmd.add_option("--format", o.format, "output format: csv or json");
  cmd.add_option("--points", o.points, "grid size override");
  cmd.add_option("--rate", o.rate, "expected pairs per second");
  cmd.add_option("--duration", o.duration, "acquisition time per setting, seconds");
  cmd.add_option("--resamples", o.resamples, "Monte Carlo resamples for uncertainties");
  cmd.add_option("--mode", o.mode, "helper-direction mode: single-v or adaptive-v");
  cmd.add_flag("--degrees", o.degrees, "interpret input angles as degrees");
  cmd.add_option("--data-dir", o.data_dir, "directory holding the reference dataset");
  cmd.add_option("--config", o.config, "JSON file supplying option defaults");
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  Options o;

  CLI::App app{"demonwork: entanglement-enhanced work extraction toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file supplying option defaults")
      ->configurable(false);

  struct Cmd {
    CLI::App* sub;
    std::function<void(const Options&)> run;
  };
  std::vector<Cmd> cmds;
  const auto add = [&](const std::string& name, const std::string& desc,
                       std::function<void(const Options&)> fn) -> CLI::App* {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_global_options(*sub, o);
    cmds.push_back({sub, std::move(fn)});
    return sub;
  };

  CLI::App* work2 = add("work2", "two-qubit work-extraction game", cmd_work2);
  work2->add_option("--mu", o.mu, "channel parameter in [0, 1]");
  work2->add_option("--phi", o.phi, "state unbalance angle");
  work2->add_option("--angles", o.n_angles, "protocol angle count (simulated runs)");

  CLI::App* work3 = add("work3", "three-qubit work-extraction game", cmd_work3);
  work3->add_option("--mu", o.mu, "channel parameter in [0, 1]");
  work3->add_option("--base", o.base, "resource: ghz, ghzc or w");
  work3->add_option("--game", o.game, "conditioning form: pair or charis");
  work3->add_option("--v", o.v_spec, "helper direction for single-v: x, y, z or 'theta,phi'");

  CLI::App* bell = add("bell", "Bell function on the two-qubit family", cmd_bell);
  bell->add_option("--mu", o.mu, "channel parameter in [0, 1]");
  bell->add_option("--phi", o.phi, "state unbalance angle");
  bell->add_option("--alpha", o.alpha, "also report S at this fixed rotation angle")
      ->each([&](const std::string&) { o.alpha_given = true; });

  CLI::App* tangle = add("tangle", "tangle of the two-qubit family", cmd_tangle);
  tangle->add_option("--mu", o.mu, "channel parameter in [0, 1]");
  tangle->add_option("--phi", o.phi, "state unbalance angle");

  CLI::App* svet = add("svetlichny", "optimized Svetlichny function", cmd_svetlichny);
  svet->add_option("--mu", o.mu, "channel parameter in [0, 1]");
  svet->add_option("--base", o.base, "resource: ghz, ghzc or w");
  svet->add_option("--restarts", o.restarts, "optimizer restarts");
  svet->add_option("--from-tomography", o.from_tomography, "reconstruct the state from a record");

  add("table1", "model-side reproduction of the two-qubit reference table", cmd_table1);
  CLI::App* t23 = add("tables23", "role-permutation works for the three-qubit resources", cmd_tables23);
  t23->add_option("--mu", o.mu, "channel parameter for the noisy-model column");

  CLI::App* fig2 = add("fig2", "W and S against the channel strength, with crossings", cmd_fig2);
  fig2->add_option("--phi", o.phi, "state unbalance angle");
  add("fig3", "above-threshold W and S surfaces over (mu, phi)", cmd_fig3);
  CLI::App* fig5 = add("fig5", "single-v work over helper directions", cmd_fig5);
  fig5->add_option("--base", o.base, "resource: ghz, ghzc or w");
  fig5->add_option("--mu", o.mu, "channel parameter in [0, 1]");
  CLI::App* fig6 = add("fig6", "single-v work against mu for the three axes", cmd_fig6);
  fig6->add_option("--base", o.base, "resource: ghz, ghzc or w");

  CLI::App* simc = add("simulate-counts", "draw one coincidence record", cmd_simulate_counts);
  simc->add_option("--mu", o.mu, "channel parameter in [0, 1]");
  simc->add_option("--phi", o.phi, "state unbalance angle (two-qubit state)");
  simc->add_option("--base", o.base, "three-qubit resource when three settings are given");
  simc->add_option("--settings", o.settings, "comma-separated analyzer angles, one per qubit");

  CLI::App* tomo = add("tomography", "simulate and invert a tomography record", cmd_tomography);
  tomo->add_option("--mu", o.mu, "channel parameter in [0, 1]");
  tomo->add_option("--phi", o.phi, "state unbalance angle (selects the two-qubit family)");
  tomo->add_option("--base", o.base, "resource: ghz, ghzc, w or werner");
  tomo->add_flag("--exact", o.exact, "use exact expected counts instead of sampling");

  // Config file: values are injected as defaults, explicit flags win.
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--config") config_path = args[i + 1];
    }
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) {
        std::cerr << "error: cannot open config file: " << config_path << "\n";
        return 2;
      }
      json cfg = json::parse(f, nullptr, true);
      std::string sub_name;
      for (const std::string& a : args) {
        if (!a.empty() && a[0] != '-') {
          sub_name = a;
          break;
        }
      }
      CLI::App* sub = nullptr;
      for (const Cmd& c : cmds) {
        if (c.sub->get_name() == sub_name) sub = c.sub;
      }
      std::vector<std::string> injected;
      for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const std::string flag = "--" + it.key();
        if (!sub || !sub->get_option_no_throw(flag)) continue;
        if (it->is_boolean()) {
          if (it->get<bool>()) injected.push_back(flag);
        } else {
          injected.push_back(flag);
          injected.push_back(it->is_string() ? it->get<std::string>() : it->dump());
        }
      }
      // insert right after the subcommand token so explicit options override
      auto pos = std::find(args.begin(), args.end(), sub_name);
      if (pos != args.end()) args.insert(pos + 1, injected.begin(), injected.end());
    }

    std::vector<const char*> cargs{argv[0]};
    for (const std::string& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const json::exception& e) {
    std::cerr << "error: bad config file: " << e.what() << "\n";
    return 2;
  }

  try {
    for (const Cmd& c : cmds) {
      if (c.sub->parsed()) {
        c.run(o);
        return 0;
      }
    }
    std::cerr << "error: no command selected\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
