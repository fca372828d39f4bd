// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0

#include "rislink/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rislink/aggregate.hpp"
#include "rislink/channel.hpp"
#include "rislink/errors.hpp"
#include "rislink/montecarlo.hpp"
#include "rislink/optimize.hpp"
#include "rislink/pathloss.hpp"
#include "rislink/performance.hpp"

namespace rislink::cli {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

// Full round-trip precision so equal results are equal bytes.
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_field(const json& v) {
  std::string s;
  if (v.is_number_float())
    s = fmt_double(v.get<double>());
  else if (v.is_number_integer())
    s = std::to_string(v.get<std::int64_t>());
  else if (v.is_number_unsigned())
    s = std::to_string(v.get<std::uint64_t>());
  else
    s = v.get<std::string>();
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

struct CommonOpts {
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 20260814;
  int workers = 1;
  bool print_config = false;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "write to this file instead of stdout");
  sub->add_option("--seed", c.seed, "base seed for any sampling");
  sub->add_option("--workers", c.workers, "sampling worker threads")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--print-config", c.print_config,
                "print the resolved configuration as JSON and exit");
}

void write_all(const CommonOpts& c, const std::string& payload) {
  if (c.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw DomainError("cannot open output file: " + c.out);
  f << payload;
}

json provenance(const CommonOpts& c) {
  json p;
  p["seed"] = c.seed;
  p["versions"] = {{"rislink", kVersion}, {"schema", 1}};
  return p;
}

// Emits {config, provenance} for --print-config, otherwise the table in the
// requested format. Returns true when the command should stop after the
// config dump.
bool emit_config_only(const CommonOpts& c, const json& config) {
  if (!c.print_config) return false;
  json doc;
  doc["config"] = config;
  doc["provenance"] = provenance(c);
  write_all(c, doc.dump(2) + "\n");
  return true;
}

void emit_table(const CommonOpts& c, const json& config,
                const std::vector<std::string>& columns,
                const std::vector<json>& rows) {
  if (c.format == "json") {
    json doc;
    doc["config"] = config;
    doc["rows"] = rows;
    doc["provenance"] = provenance(c);
    write_all(c, doc.dump(2) + "\n");
    return;
  }
  std::string payload;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) payload += ',';
    payload += columns[i];
  }
  payload += "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) payload += ',';
      payload += csv_field(row.at(columns[i]));
    }
    payload += "\r\n";
  }
  write_all(c, payload);
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> v(static_cast<std::size_t>(points));
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i)
    v[static_cast<std::size_t>(i)] =
        i + 1 == points ? hi : lo + static_cast<double>(i) * step;
  return v;
}

const char* case_name(optimize::CoverageCase c) {
  switch (c) {
    case optimize::CoverageCase::Interior:
      return "interior";
    case optimize::CoverageCase::AltitudeMin:
      return "altitude-min";
    case optimize::CoverageCase::AltitudeMax:
      return "altitude-max";
    default:
      return "infeasible";
  }
}

// ------------------------------------------------------------ shared knobs

struct FadingOpts {
  double m = 2.0;
  double m_s = 2.5;
};

void add_fading(CLI::App* sub, FadingOpts& f) {
  sub->add_option("--m", f.m, "fading shape (multipath)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--ms", f.m_s, "fading shape (shadowing), > 1")
      ->check(CLI::PositiveNumber);
}

struct LinkOpts {
  double p_s_dbm = 53.0;
  double n_0_dbm = -100.0;
  double gamma_th_db = 10.0;
};

void add_link(CLI::App* sub, LinkOpts& l) {
  sub->add_option("--ps-dbm", l.p_s_dbm, "transmit power, dBm");
  sub->add_option("--n0-dbm", l.n_0_dbm, "noise power, dBm");
  sub->add_option("--gamma-th-db", l.gamma_th_db, "SNR threshold, dB");
}

struct GeometryOpts {
  double z_c = 1000.0;
  double h = 100.0;
  double theta = 45.0;
};

void add_geometry(CLI::App* sub, GeometryOpts& g) {
  sub->add_option("--zc", g.z_c, "command-link ground distance, m")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--altitude", g.h, "UAV altitude, m")
      ->check(CLI::PositiveNumber);
  sub->add_option("--theta", g.theta, "elevation at the user, degrees")
      ->check(CLI::Range(1e-6, 90.0));
}

double geometry_loss(const GeometryOpts& g) {
  return pathloss::total_path_loss({g.h, g.z_c, 0.0, g.theta},
                                   pathloss::PathLossParams{});
}

aggregate::LinkBudget make_budget(const LinkOpts& l, int n, double pl) {
  return {dbm_to_watts(l.p_s_dbm), dbm_to_watts(l.n_0_dbm), n,
          pathloss::db_to_linear(l.gamma_th_db), pl};
}

json link_config(const LinkOpts& l, const aggregate::LinkBudget& lb) {
  json j;
  j["ps_dbm"] = l.p_s_dbm;
  j["n0_dbm"] = l.n_0_dbm;
  j["gamma_th_db"] = l.gamma_th_db;
  j["ps_w"] = lb.p_s;
  j["n0_w"] = lb.n_0;
  j["gamma_th"] = lb.gamma_th;
  j["pl"] = lb.pl;
  return j;
}

struct PowerOpts {
  double upsilon = 1.1;
  double p_c = 50.0;
  double p_h = 1500.0;
  double p_r_b = 0.078;
  double p_f = 1e-3;
};

void add_power(CLI::App* sub, PowerOpts& p) {
  sub->add_option("--upsilon", p.upsilon, "amplifier efficiency divisor")
      ->check(CLI::PositiveNumber);
  sub->add_option("--pc", p.p_c, "static circuit power, W");
  sub->add_option("--ph", p.p_h, "hover power, W");
  sub->add_option("--pr-b", p.p_r_b, "per-element phase-shifter power, W");
  sub->add_option("--pf", p.p_f, "per-element control power, W");
}

performance::PowerModel make_power(const PowerOpts& p) {
  return {p.upsilon, p.p_c, p.p_h, p.p_r_b, p.p_f};
}

// ----------------------------------------------------------------- pdf

struct PdfArgs {
  CommonOpts common;
  FadingOpts fading;
  bool conventional = false;
  double omega = 1.0;
  double h_lo = 0.01;
  double h_hi = 3.0;
  int points = 121;
};

void run_pdf_surface(const PdfArgs& a) {
  const auto p = a.conventional
                     ? channel::conventional_params(a.fading.m, a.fading.m_s,
                                                    a.omega)
                     : channel::normalized_params(a.fading.m, a.fading.m_s);
  json config;
  config["command"] = "pdf-surface";
  config["m"] = a.fading.m;
  config["ms"] = a.fading.m_s;
  config["variant"] = a.conventional ? "conventional" : "modified";
  config["omega"] = a.omega;
  config["h_lo"] = a.h_lo;
  config["h_hi"] = a.h_hi;
  config["points"] = a.points;
  config["mean_power"] = channel::mean_power(p);
  if (emit_config_only(a.common, config)) return;

  std::vector<json> rows;
  for (const double h : linspace(a.h_lo, a.h_hi, a.points)) {
    json r;
    r["h"] = h;
    r["pdf"] = channel::envelope_pdf(h, p);
    r["cdf"] = channel::envelope_cdf(h, p);
    rows.push_back(std::move(r));
  }
  emit_table(a.common, config, {"h", "pdf", "cdf"}, rows);
}

// ----------------------------------------------------------------- clt

struct CltArgs {
  CommonOpts common;
  FadingOpts fading;
  int n = 10;
  int points = 41;
  double span = 5.0;
};

void run_clt_check(const CltArgs& a) {
  const auto p = channel::normalized_params(a.fading.m, a.fading.m_s);
  const auto mom = aggregate::clt_moments(p, a.n);
  const double sigma = std::sqrt(mom.sigma2_a);
  const double lo = std::max(1e-9, mom.mu_a - a.span * sigma);
  const double hi = mom.mu_a + a.span * sigma;

  json config;
  config["command"] = "clt-check";
  config["m"] = a.fading.m;
  config["ms"] = a.fading.m_s;
  config["n"] = a.n;
  config["points"] = a.points;
  config["span_sigmas"] = a.span;
  config["mu_a"] = mom.mu_a;
  config["sigma_a"] = sigma;
  if (emit_config_only(a.common, config)) return;

  const auto grid = linspace(lo, hi, a.points);
  const auto exact = aggregate::exact_cdf_A(grid, p, a.n);
  std::vector<json> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double clt = aggregate::clt_cdf_A(grid[i], p, a.n);
    json r;
    r["a"] = grid[i];
    r["cdf_exact"] = exact[i];
    r["cdf_clt"] = clt;
    r["abs_error"] = std::abs(exact[i] - clt);
    rows.push_back(std::move(r));
  }
  emit_table(a.common, config, {"a", "cdf_exact", "cdf_clt", "abs_error"},
             rows);
}

// ----------------------------------------------------------------- snr

struct SnrArgs {
  CommonOpts common;
  FadingOpts fading;
  LinkOpts link;
  GeometryOpts geom;
  int n_lo = 1;
  int n_hi = 100;
  int n_step = 1;
};

void run_snr_bounds(const SnrArgs& a) {
  if (a.n_hi < a.n_lo)
    throw DomainError("element sweep must satisfy n_lo <= n_hi");
  const auto p = channel::normalized_params(a.fading.m, a.fading.m_s);
  const double pl = geometry_loss(a.geom);

  json config;
  config["command"] = "snr-bounds";
  config["m"] = a.fading.m;
  config["ms"] = a.fading.m_s;
  config["link"] = link_config(a.link, make_budget(a.link, a.n_lo, pl));
  config["zc"] = a.geom.z_c;
  config["h"] = a.geom.h;
  config["theta"] = a.geom.theta;
  config["n_lo"] = a.n_lo;
  config["n_hi"] = a.n_hi;
  config["n_step"] = a.n_step;
  if (emit_config_only(a.common, config)) return;

  std::vector<json> rows;
  for (int n = a.n_lo; n <= a.n_hi; n += a.n_step) {
    const auto lb = make_budget(a.link, n, pl);
    const auto b = aggregate::snr_expectation_bounds(p, lb);
    json r;
    r["n"] = n;
    r["snr_lower"] = b.lower;
    r["snr_exact"] = b.exact;
    r["snr_upper"] = b.upper;
    r["snr_clt"] = aggregate::snr_expectation_clt(p, lb);
    rows.push_back(std::move(r));
  }
  emit_table(a.common, config,
             {"n", "snr_lower", "snr_exact", "snr_upper", "snr_clt"}, rows);
}

// ------------------------------------------------------------- capacity

struct CapacityArgs {
  CommonOpts common;
  FadingOpts fading;
  LinkOpts link;
  GeometryOpts geom;
  int n = 100;
  double ps_lo = 40.0;
  double ps_hi = 60.0;
  int points = 11;
  double bandwidth_mhz = 20.0;
  std::uint64_t trials = 100000;
};

void run_capacity_sweep(const CapacityArgs& a) {
  const auto p = channel::normalized_params(a.fading.m, a.fading.m_s);
  const double pl = geometry_loss(a.geom);
  const double bw = a.bandwidth_mhz * 1e6;

  json config;
  config["command"] = "capacity-sweep";
  config["m"] = a.fading.m;
  config["ms"] = a.fading.m_s;
  config["n"] = a.n;
  config["zc"] = a.geom.z_c;
  config["h"] = a.geom.h;
  config["theta"] = a.geom.theta;
  config["n0_dbm"] = a.link.n_0_dbm;
  config["gamma_th_db"] = a.link.gamma_th_db;
  config["pl"] = pl;
  config["ps_lo_dbm"] = a.ps_lo;
  config["ps_hi_dbm"] = a.ps_hi;
  config["points"] = a.points;
  config["bandwidth_hz"] = bw;
  config["trials"] = a.trials;
  config["workers"] = a.common.workers;
  if (emit_config_only(a.common, config)) return;

  std::vector<json> rows;
  for (const double ps : linspace(a.ps_lo, a.ps_hi, a.points)) {
    LinkOpts l = a.link;
    l.p_s_dbm = ps;
    const auto lb = make_budget(l, a.n, pl);
    using performance::CapacityMethod;
    const auto lower = performance::average_capacity_jensen(
        p, lb, bw, CapacityMethod::SmallN_LowerBoundE);
    const auto clt = performance::average_capacity_jensen(
        p, lb, bw, CapacityMethod::LargeN_Clt);
    const auto exact = performance::average_capacity_jensen(
        p, lb, bw, CapacityMethod::Exact);
    const auto mc = performance::average_capacity_mc(
        p, lb, bw, a.trials, a.common.seed, a.common.workers);
    json r;
    r["p_s_dbm"] = ps;
    r["cap_lower"] = lower.value;
    r["cap_clt"] = clt.value;
    r["cap_exact"] = exact.value;
    r["cap_mc"] = mc.value;
    r["cap_mc_half_width"] = mc.half_width;
    rows.push_back(std::move(r));
  }
  emit_table(a.common, config,
             {"p_s_dbm", "cap_lower", "cap_clt", "cap_exact", "cap_mc",
              "cap_mc_half_width"},
             rows);
}

// --------------------------------------------------------------- outage

struct OutageArgs {
  CommonOpts common;
  FadingOpts fading;
  LinkOpts link;
  GeometryOpts geom;
  int n = 32;
  double ps_lo = 20.0;
  double ps_hi = 26.0;
  int points = 13;
  std::uint64_t trials = 1000000;
};

void run_outage_sweep(const OutageArgs& a) {
  const auto p = channel::normalized_params(a.fading.m, a.fading.m_s);
  const double pl = geometry_loss(a.geom);

  json config;
  config["command"] = "outage-sweep";
  config["m"] = a.fading.m;
  config["ms"] = a.fading.m_s;
  config["n"] = a.n;
  config["zc"] = a.geom.z_c;
  config["h"] = a.geom.h;
  config["theta"] = a.geom.theta;
  config["n0_dbm"] = a.link.n_0_dbm;
  config["gamma_th_db"] = a.link.gamma_th_db;
  config["pl"] = pl;
  config["ps_lo_dbm"] = a.ps_lo;
  config["ps_hi_dbm"] = a.ps_hi;
  config["points"] = a.points;
  config["trials"] = a.trials;
  config["workers"] = a.common.workers;
  if (emit_config_only(a.common, config)) return;

  std::vector<json> rows;
  for (const double ps : linspace(a.ps_lo, a.ps_hi, a.points)) {
    LinkOpts l = a.link;
    l.p_s_dbm = ps;
    const auto lb = make_budget(l, a.n, pl);
    const auto mc =
        montecarlo::mc_outage(p, lb, a.trials, a.common.seed, a.common.workers);
    json r;
    r["p_s_dbm"] = ps;
    r["outage_clt"] = aggregate::outage_clt(p, lb);
    r["outage_bound"] = aggregate::outage_upper_bound(p, lb);
    r["outage_mc"] = mc.estimate;
    r["outage_mc_half_width"] = mc.half_width_95;
    r["mc_low_confidence"] = mc.low_confidence ? 1 : 0;
    rows.push_back(std::move(r));
  }
  emit_table(a.common, config,
             {"p_s_dbm", "outage_clt", "outage_bound", "outage_mc",
              "outage_mc_half_width", "mc_low_confidence"},
             rows);
}

// ------------------------------------------------------------ optimizers

struct OptimizeNArgs {
  CommonOpts common;
  FadingOpts fading;
  LinkOpts link;
  GeometryOpts geom;
  PowerOpts power;
  optimize::DinkelbachConfig cfg;
  double bandwidth_mhz = 20.0;
};

void run_optimize_n(const OptimizeNArgs& a) {
  const auto p = channel::normalized_params(a.fading.m, a.fading.m_s);
  const double pl = geometry_loss(a.geom);
  const double bw = a.bandwidth_mhz * 1e6;
  const auto lb = make_budget(a.link, 1, pl);
  const auto pm = make_power(a.power);

  json config;
  config["command"] = "optimize-n";
  config["m"] = a.fading.m;
  config["ms"] = a.fading.m_s;
  config["link"] = link_config(a.link, lb);
  config["zc"] = a.geom.z_c;
  config["h"] = a.geom.h;
  config["theta"] = a.geom.theta;
  config["bandwidth_hz"] = bw;
  config["upsilon"] = pm.upsilon;
  config["pc"] = pm.p_c;
  config["ph"] = pm.p_h;
  config["pr_b"] = pm.p_r_b;
  config["pf"] = pm.p_f;
  config["n_min"] = a.cfg.n_min;
  config["n_max"] = a.cfg.n_max;
  config["n_th"] = a.cfg.n_th;
  config["epsilon"] = a.cfg.epsilon;
  config["t_max"] = a.cfg.t_max;
  if (emit_config_only(a.common, config)) return;

  const auto res = optimize::dinkelbach_optimal_n(p, lb, pm, bw, a.cfg);
  std::vector<json> rows;
  for (std::size_t i = 0; i < res.ratio_trace.size(); ++i) {
    json r;
    r["iteration"] = static_cast<std::int64_t>(i);
    r["ratio"] = res.ratio_trace[i];
    r["n_star"] = res.n_star;
    r["ee_star"] = res.ee_star;
    rows.push_back(std::move(r));
  }
  emit_table(a.common, config, {"iteration", "ratio", "n_star", "ee_star"},
             rows);
}

struct OptimizeCoverageArgs {
  CommonOpts common;
  FadingOpts fading;
  LinkOpts link;
  int n = 100;
  optimize::CoverageConfig cfg;
  std::string method = "kkt";
  std::string reading = "calibrated";
  int resolution = 1000;
};

void run_optimize_coverage(const OptimizeCoverageArgs& a) {
  optimize::CoverageProblem prob;
  prob.fading = channel::normalized_params(a.fading.m, a.fading.m_s);
  prob.budget = make_budget(a.link, a.n, 1.0);  // loss follows the geometry
  prob.config = a.cfg;
  prob.config.reading = a.reading == "squared-margin"
                            ? optimize::ThresholdReading::SquaredMargin
                            : optimize::ThresholdReading::OutageCalibrated;

  json config;
  config["command"] = "optimize-coverage";
  config["m"] = a.fading.m;
  config["ms"] = a.fading.m_s;
  config["n"] = a.n;
  config["ps_dbm"] = a.link.p_s_dbm;
  config["n0_dbm"] = a.link.n_0_dbm;
  config["gamma_th_db"] = a.link.gamma_th_db;
  config["h_min"] = prob.config.h_min;
  config["h_max"] = prob.config.h_max;
  config["op_threshold"] = prob.config.op_threshold;
  config["theta_lo"] = prob.config.theta_min;
  config["theta_hi"] = prob.config.theta_max;
  config["zc"] = prob.config.z_c;
  config["reading"] = a.reading;
  config["method"] = a.method;
  config["resolution"] = a.resolution;
  if (emit_config_only(a.common, config)) return;

  const auto sol = a.method == "grid"
                       ? optimize::coverage_grid_oracle(prob, a.resolution)
                       : optimize::coverage_maximize(prob);
  json r;
  r["r_u"] = sol.r_u;
  r["theta_deg"] = sol.theta;
  r["h"] = sol.h;
  r["active_case"] = case_name(sol.active_case);
  r["mult_margin"] = sol.multipliers[0];
  r["mult_floor"] = sol.multipliers[1];
  r["mult_ceiling"] = sol.multipliers[2];
  r["grid_fallback"] = sol.from_grid_fallback ? 1 : 0;
  emit_table(a.common, config,
             {"r_u", "theta_deg", "h", "active_case", "mult_margin",
              "mult_floor", "mult_ceiling", "grid_fallback"},
             {r});
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "analysis of element-combined fading links: envelope statistics, "
      "SNR/capacity/outage curves, and the two design optimizers"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  PdfArgs pdf;
  auto* sub_pdf = app.add_subcommand(
      "pdf-surface", "envelope density and distribution on a grid");
  add_common(sub_pdf, pdf.common);
  add_fading(sub_pdf, pdf.fading);
  sub_pdf->add_flag("--conventional", pdf.conventional,
                    "unnormalized variant with explicit mean power");
  sub_pdf->add_option("--omega", pdf.omega, "mean power knob (conventional)")
      ->check(CLI::PositiveNumber);
  sub_pdf->add_option("--h-lo", pdf.h_lo)->check(CLI::PositiveNumber);
  sub_pdf->add_option("--h-hi", pdf.h_hi)->check(CLI::PositiveNumber);
  sub_pdf->add_option("--points", pdf.points)->check(CLI::Range(2, 1000000));
  sub_pdf->callback([&] { run_pdf_surface(pdf); });

  CltArgs clt;
  auto* sub_clt = app.add_subcommand(
      "clt-check", "exact combined-envelope distribution vs its normal fit");
  add_common(sub_clt, clt.common);
  add_fading(sub_clt, clt.fading);
  sub_clt->add_option("--n", clt.n, "combined elements")
      ->check(CLI::PositiveNumber);
  sub_clt->add_option("--points", clt.points)->check(CLI::Range(2, 100000));
  sub_clt->add_option("--span", clt.span, "grid half-width in sigmas")
      ->check(CLI::PositiveNumber);
  sub_clt->callback([&] { run_clt_check(clt); });

  SnrArgs snr;
  auto* sub_snr = app.add_subcommand(
      "snr-bounds", "mean SNR with its closed-form brackets over n");
  add_common(sub_snr, snr.common);
  add_fading(sub_snr, snr.fading);
  add_link(sub_snr, snr.link);
  add_geometry(sub_snr, snr.geom);
  sub_snr->add_option("--n-lo", snr.n_lo)->check(CLI::PositiveNumber);
  sub_snr->add_option("--n-hi", snr.n_hi)->check(CLI::PositiveNumber);
  sub_snr->add_option("--n-step", snr.n_step)->check(CLI::PositiveNumber);
  sub_snr->callback([&] { run_snr_bounds(snr); });

  CapacityArgs cap;
  auto* sub_cap = app.add_subcommand(
      "capacity-sweep", "mean capacity estimates over transmit power");
  add_common(sub_cap, cap.common);
  add_fading(sub_cap, cap.fading);
  add_link(sub_cap, cap.link);
  add_geometry(sub_cap, cap.geom);
  sub_cap->add_option("--n", cap.n, "combined elements")
      ->check(CLI::PositiveNumber);
  sub_cap->add_option("--ps-lo", cap.ps_lo, "sweep start, dBm");
  sub_cap->add_option("--ps-hi", cap.ps_hi, "sweep end, dBm");
  sub_cap->add_option("--points", cap.points)->check(CLI::Range(2, 100000));
  sub_cap->add_option("--bandwidth-mhz", cap.bandwidth_mhz)
      ->check(CLI::PositiveNumber);
  sub_cap->add_option("--trials", cap.trials, "sampling trials per point")
      ->check(CLI::PositiveNumber);
  sub_cap->callback([&] { run_capacity_sweep(cap); });

  OutageArgs out;
  auto* sub_out = app.add_subcommand(
      "outage-sweep", "outage probability with bound and sampling check");
  add_common(sub_out, out.common);
  add_fading(sub_out, out.fading);
  add_link(sub_out, out.link);
  add_geometry(sub_out, out.geom);
  sub_out->add_option("--n", out.n, "combined elements")
      ->check(CLI::PositiveNumber);
  sub_out->add_option("--ps-lo", out.ps_lo, "sweep start, dBm");
  sub_out->add_option("--ps-hi", out.ps_hi, "sweep end, dBm");
  sub_out->add_option("--points", out.points)->check(CLI::Range(2, 100000));
  sub_out->add_option("--trials", out.trials, "sampling trials per point")
      ->check(CLI::PositiveNumber);
  sub_out->callback([&] { run_outage_sweep(out); });

  OptimizeNArgs opt_n;
  auto* sub_opt_n = app.add_subcommand(
      "optimize-n", "energy-efficiency-optimal element count");
  add_common(sub_opt_n, opt_n.common);
  add_fading(sub_opt_n, opt_n.fading);
  add_link(sub_opt_n, opt_n.link);
  add_geometry(sub_opt_n, opt_n.geom);
  add_power(sub_opt_n, opt_n.power);
  sub_opt_n->add_option("--n-min", opt_n.cfg.n_min)
      ->check(CLI::PositiveNumber);
  sub_opt_n->add_option("--n-max", opt_n.cfg.n_max)
      ->check(CLI::PositiveNumber);
  sub_opt_n->add_option("--n-th", opt_n.cfg.n_th, "SNR-model regime split")
      ->check(CLI::PositiveNumber);
  sub_opt_n->add_option("--epsilon", opt_n.cfg.epsilon)
      ->check(CLI::PositiveNumber);
  sub_opt_n->add_option("--t-max", opt_n.cfg.t_max)
      ->check(CLI::PositiveNumber);
  sub_opt_n->add_option("--bandwidth-mhz", opt_n.bandwidth_mhz)
      ->check(CLI::PositiveNumber);
  sub_opt_n->callback([&] { run_optimize_n(opt_n); });

  OptimizeCoverageArgs cov;
  auto* sub_cov = app.add_subcommand(
      "optimize-coverage", "largest user radius under the outage target");
  add_common(sub_cov, cov.common);
  add_fading(sub_cov, cov.fading);
  add_link(sub_cov, cov.link);
  sub_cov->add_option("--n", cov.n, "combined elements")
      ->check(CLI::PositiveNumber);
  sub_cov->add_option("--h-min", cov.cfg.h_min)->check(CLI::PositiveNumber);
  sub_cov->add_option("--h-max", cov.cfg.h_max)->check(CLI::PositiveNumber);
  sub_cov->add_option("--op-threshold", cov.cfg.op_threshold,
                      "outage target");
  sub_cov->add_option("--theta-lo", cov.cfg.theta_min, "degrees");
  sub_cov->add_option("--theta-hi", cov.cfg.theta_max, "degrees");
  sub_cov->add_option("--zc", cov.cfg.z_c)->check(CLI::NonNegativeNumber);
  sub_cov->add_option("--method", cov.method)
      ->check(CLI::IsMember({"kkt", "grid"}));
  sub_cov->add_option("--reading", cov.reading, "margin term form")
      ->check(CLI::IsMember({"calibrated", "squared-margin"}));
  sub_cov->add_option("--resolution", cov.resolution, "grid angles")
      ->check(CLI::Range(100, 1000000));
  sub_cov->callback([&] { run_optimize_coverage(cov); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AccuracyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rislink::cli
