#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "extremal/config.hpp"
#include "extremal/errors.hpp"
#include "extremal/kl.hpp"
#include "extremal/psi.hpp"
#include "extremal/radial.hpp"
#include "extremal/report.hpp"
#include "extremal/suites.hpp"

using namespace extremal;
using namespace extremal::cli;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUsage = 64;

// Writes CSV (or JSON) to --output or stdout; a CSV file gets a JSON mirror next to it.
struct Emitter {
  const RunConfig& cfg;

  void emit(const std::function<void(std::ostream&)>& csv, const json& mirror) const {
    const bool as_json = cfg.format == Format::Json;
    if (!cfg.output) {
      if (as_json)
        std::cout << mirror.dump(2) << '\n';
      else
        csv(std::cout);
      return;
    }
    std::ofstream out(*cfg.output);
    if (!out) throw InputError("cannot write '" + *cfg.output + "'");
    if (as_json) {
      out << mirror.dump(2) << '\n';
      return;
    }
    csv(out);
    std::ofstream js(*cfg.output + ".json");
    if (!js) throw InputError("cannot write '" + *cfg.output + ".json'");
    js << mirror.dump(2) << '\n';
  }
};

int require_positive(const std::optional<int>& v, const char* name) {
  if (!v || *v < 1) throw InputError(std::string("--") + name + " must be >= 1");
  return *v;
}

engine::cplx parse_complex(const std::string& s) {
  std::stringstream ss(s);
  std::string re, im;
  std::getline(ss, re, ',');
  std::getline(ss, im);
  try {
    std::size_t u1 = 0, u2 = 0;
    const double a = std::stod(re, &u1);
    const double b = im.empty() ? 0.0 : std::stod(im, &u2);
    if (u1 != re.size() || (!im.empty() && u2 != im.size())) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::exception&) {
    throw InputError("expected a complex number as 're,im', got '" + s + "'");
  }
}

int cmd_markov(const RunConfig& cfg) {
  const int nmax = require_positive(cfg.nmax, "nmax");
  const auto res = resolve(cfg, nmax);
  if (!res.norm) throw UnsupportedError("no Markov factors for this set");
  const auto table = engine::markov_table(*res.norm, nmax);
  json mirror = markov_json(table);
  mirror["config"] = to_json(cfg);
  Emitter{cfg}.emit([&](std::ostream& os) { write_markov_csv(os, table); }, mirror);
  return kExitPass;
}

int cmd_phi(const RunConfig& cfg, bool single) {
  const int n = require_positive(cfg.n, "n");
  const auto res = resolve(cfg, n);
  if (!res.set) throw InputError("phi needs --set");
  if (res.set->kind() == sets::SetKind::ProductIntervalDisk)
    throw UnsupportedError("phi_n is not available for the product set (closed-form profile only)");
  const auto grid = sets::discretize(*res.set, res.density);
  Curve c{"r", "phi_n", {}, {}, json::object()};
  if (single) {
    c.x.push_back(*cfg.r);
  } else {
    const int pts = require_positive(cfg.points, "points");
    const double lo = *cfg.rmin, hi = *cfg.rmax;
    if (!(lo > 0.0) || !(hi >= lo)) throw InputError("need 0 < rmin <= rmax");
    for (int i = 0; i < pts; ++i)
      c.x.push_back(pts == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (pts - 1)));
  }
  for (double r : c.x) c.y.push_back(engine::phi_n_radial(*res.set, grid, n, r));
  c.meta = {{"descriptor", res.set->describe()},
            {"degree", n},
            {"density", res.density},
            {"method", res.set->kind() == sets::SetKind::Disk ? "closed-form" : "lp"},
            {"truncation", n}};
  Emitter{cfg}.emit([&](std::ostream& os) { write_curve_csv(os, c); }, curve_json(c));
  return kExitPass;
}

json kl_row(const std::string& name, const kl::KLReport& r, const std::optional<double>& stated) {
  json j{{"sequence", name},        {"nmax", r.nmax},      {"minimal_log_C", r.minimal_log_C},
         {"is_kl_star", r.is_KL_star}, {"worst_n", r.worst_n}, {"worst_k", r.worst_k}};
  j["stated_log_C"] = stated ? json(*stated) : json(nullptr);
  return j;
}

int cmd_kl(const RunConfig& cfg, bool from_table) {
  const int nmax = require_positive(cfg.nmax, "nmax");
  json rows = json::array();
  if (from_table) {
    const auto res = resolve(cfg, nmax);
    if (!res.norm) throw UnsupportedError("no Markov factors for this set");
    const auto table = engine::markov_table(*res.norm, nmax);
    rows.push_back(kl_row("table:" + table.descriptor, kl::markov_table_kl(table, nmax), std::nullopt));
  } else if (cfg.seq == "catalog") {
    for (const auto& e : kl::catalog()) {
      const auto s = kl::builtin(e.name);
      rows.push_back(kl_row(s.name, kl::kl_constant(s, nmax), s.stated_log_C));
    }
  } else {
    const auto s = kl::parse_sequence(*cfg.seq);
    rows.push_back(kl_row(s.name, kl::kl_constant(s, nmax), s.stated_log_C));
  }
  Emitter{cfg}.emit(
      [&](std::ostream& os) {
        write_csv_row(os, {"sequence", "nmax", "minimal_log_C", "is_kl_star", "worst_n", "worst_k", "stated_log_C"});
        for (const auto& r : rows)
          write_csv_row(os, {r["sequence"], std::to_string(r["nmax"].get<int>()),
                             format_number(r["minimal_log_C"].get<double>()), r["is_kl_star"] ? "true" : "false",
                             std::to_string(r["worst_n"].get<int>()), std::to_string(r["worst_k"].get<int>()),
                             r["stated_log_C"].is_null() ? "" : format_number(r["stated_log_C"].get<double>())});
      },
      json{{"rows", rows}});
  return kExitPass;
}

int cmd_constants(const RunConfig& cfg) {
  if (!cfg.set) throw InputError("constants needs --set");
  const auto set = set_from_json(*cfg.set);
  const double m = *cfg.m, r = *cfg.r;
  if (!(m >= 1.0)) throw InputError("--m must be >= 1");
  const int nmax = cfg.nmax.value_or(256);
  const auto p = radial::RadialProfile::for_set(set);
  std::vector<std::pair<std::string, radial::SupResult>> sups{
      {"A_m", radial::A_const(p, m)},
      {"B_gamma(1/m)", radial::B_gamma(p, 1.0 / m)},
      {"C_P", radial::C_P_const(p, m, nmax)},
      {"P_m(r)", radial::plesniak_P(p, m, r, nmax)},
      {"B_m(r)", radial::plesniak_B(p, m, r, nmax, cfg.kmax.value_or(nmax))},
  };
  const auto cb = radial::C_B_const(p, m);
  sups.emplace_back("C_B", cb.sup);
  json rows = json::array();
  for (const auto& [name, s] : sups)
    rows.push_back({{"name", name},
                    {"value", s.value},
                    {"log_value", s.log_value},
                    {"truncation", s.truncation},
                    {"at_boundary", s.at_boundary},
                    {"converged", s.converged}});
  rows.push_back({{"name", "H_(1/m)"}, {"value", cb.H}, {"log_value", std::log(cb.H)}});
  rows.push_back({{"name", "B*_m(r)"}, {"value", radial::B_star(p, m, r).via_A}});
  const json mirror{{"descriptor", set.describe()}, {"profile", p.source}, {"closed", p.closed}, {"m", m}, {"r", r},
                    {"rows", rows}};
  Emitter{cfg}.emit(
      [&](std::ostream& os) {
        write_csv_row(os, {"name", "value", "method"});
        for (const auto& row : rows)
          write_csv_row(os, {row["name"], format_number(row["value"].get<double>()), p.closed ? "closed-form" : "lp"});
      },
      mirror);
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg) {
  const auto report = run_suite(*cfg.suite, cfg);
  write_text(std::cout, report, use_color());
  if (cfg.output) {
    std::ofstream out(*cfg.output);
    if (!out) throw InputError("cannot write '" + *cfg.output + "'");
    out << to_json(report).dump(2) << '\n';
  }
  return report.status() == Status::Fail ? kExitVerifyFail : kExitPass;
}

int cmd_psi(const RunConfig& cfg, const std::string& z1s, const std::string& z2s) {
  const double mreal = *cfg.m;
  if (mreal != std::floor(mreal) || mreal < 1) throw InputError("--m must be a positive integer for psi");
  const int m = static_cast<int>(mreal);
  const int n = cfg.n.value_or(4);
  if (n < 1 || n > 12) throw InputError("--n must be in [1, 12] for psi");
  const auto z1 = parse_complex(z1s), z2 = parse_complex(z2s);
  const double prod = engine::psi_product(m, z1, z2);
  json mirror{{"m", m}, {"n", n}, {"product", prod}};
  std::vector<std::pair<std::string, double>> rows{{"product", prod}};
  if (std::abs(z1) > 0.0) {
    const auto pois = engine::psi_poisson([m](double t) { return engine::lp_norm_profile(m, t); }, z1, z2);
    rows.emplace_back("poisson", pois.value);
    mirror["poisson"] = {{"value", pois.value}, {"error", pois.error}, {"converged", pois.converged}};
  }
  const auto grid = engine::sphere_grid([m](double a, double b) { return engine::lp_norm(m, a, b); });
  const double lp = engine::psi_homogeneous_lp(grid, n, z1, z2);
  rows.emplace_back("lp", lp);
  mirror["lp"] = lp;
  Emitter{cfg}.emit(
      [&](std::ostream& os) {
        write_csv_row(os, {"method", "value"});
        for (const auto& [k, v] : rows) write_csv_row(os, {k, format_number(v)});
      },
      mirror);
  return kExitPass;
}

int cmd_chebyshev(const RunConfig& cfg) {
  const int n = require_positive(cfg.n, "n");
  const auto res = resolve(cfg, n);
  if (!res.norm) throw UnsupportedError("no Chebyshev numbers for this set");
  const auto mr = engine::chebyshev_monic(*res.norm, n);
  const auto mono = poly::to_monomial(mr.minimizer);
  json coeffs = json::array();
  for (const auto& c : mono.coeffs()) coeffs.push_back({c.real(), c.imag()});
  const json mirror{{"descriptor", res.norm->describe()}, {"n", n},           {"t_n", mr.t_n},
                    {"lower_bound", mr.lower_bound},     {"method", mr.method}, {"monomial_coeffs", coeffs}};
  Emitter{cfg}.emit(
      [&](std::ostream& os) {
        write_csv_row(os, {"n", "t_n", "lower_bound", "t_n_root", "method"});
        write_csv_row(os, {std::to_string(n), format_number(mr.t_n), format_number(mr.lower_bound),
                           format_number(std::pow(mr.t_n, 1.0 / n)), mr.method});
      },
      mirror);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal functions, Markov factors and KL sequences for polynomials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "1.0");

  RunConfig flags;
  std::string config_path;
  std::string z1 = "1,0", z2 = "0,1";
  bool from_table = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    sub->add_option_function<std::string>(
        "--set", [&](const std::string& s) { flags.set = set_json_from_descriptor(s); },
        "set: interval?a=-1&b=1 | disk?R=1 | green?R=2 | diskpoint?R=1&z0=2 | product?R=1 (default interval)");
    sub->add_option_function<std::string>(
        "--norm", [&](const std::string& s) { flags.norm = norm_json_from_descriptor(s); },
        "norm: sup | coeff?m=2&tau=1 | integral?p=2&a=-1&b=1 (default sup on the set)");
    sub->add_option_function<int>("--density", [&](const int& v) { flags.density = v; },
                                  "grid density, M = 64*2^(d-1) (default: smallest adequate)");
    sub->add_option_function<std::string>("--output", [&](const std::string& v) { flags.output = v; },
                                          "output file (default stdout)");
    sub->add_option_function<std::string>(
           "--format",
           [&](const std::string& v) { flags.format = v == "json" ? Format::Json : Format::Csv; },
           "csv | json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { flags.seed = v; },
                                            "seed for randomized checks (default 20240601)");
  };
  auto nmax_opt = [&](CLI::App* sub, const char* help) {
    sub->add_option_function<int>("--nmax", [&](const int& v) { flags.nmax = v; }, help);
  };

  auto* markov = app.add_subcommand("markov", "Markov factor table M_n(k) as n,k,value,method");
  common(markov);
  nmax_opt(markov, "largest degree (default 8)");

  auto* phi = app.add_subcommand("phi", "radial extremal function phi_n(E, r)");
  common(phi);
  phi->add_option_function<int>("--n", [&](const int& v) { flags.n = v; }, "degree (default 8)");
  phi->add_option_function<double>("--r", [&](const double& v) { flags.r = v; },
                                                 "single radius; without it a log-spaced curve is written");
  phi->add_option_function<double>("--rmin", [&](const double& v) { flags.rmin = v; }, "curve start (default 0.01)");
  phi->add_option_function<double>("--rmax", [&](const double& v) { flags.rmax = v; }, "curve end (default 100)");
  phi->add_option_function<int>("--points", [&](const int& v) { flags.points = v; }, "curve points (default 41)");

  auto* klc = app.add_subcommand("kl", "KL classification of a sequence or of a Markov table");
  common(klc);
  nmax_opt(klc, "triangle size (default 500 for sequences, 8 for tables)");
  klc->add_option_function<std::string>("--seq", [&](const std::string& v) { flags.seq = v; },
                                        "kl:factorial, kl:binom_pow?m=2, ex63_6, or 'catalog' (default factorial)");
  klc->add_flag("--table", from_table, "classify the Markov table of --set/--norm instead");

  auto* constants = app.add_subcommand("constants", "Plesniak functions and constants");
  common(constants);
  constants->add_option_function<double>("--m", [&](const double& v) { flags.m = v; }, "exponent m (default 1)");
  constants->add_option_function<double>("--r", [&](const double& v) { flags.r = v; }, "radius (default 1)");
  nmax_opt(constants, "degree truncation (default 256)");
  constants->add_option_function<int>("--kmax", [&](const int& v) { flags.kmax = v; }, "k truncation (default Nmax)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify);
  verify->add_option_function<std::string>("--suite", [&](const std::string& v) { flags.suite = v; },
                                           "closed-forms | convexity | markov-chain | plesniak | kl-catalog | "
                                           "laplacian | disk-point | all (default all)");
  nmax_opt(verify, "table size for markov-chain on LP tables (default 8)");

  auto* psi = app.add_subcommand("psi", "homogeneous extremal function of the l^2m unit sphere in R^2");
  common(psi);
  psi->add_option_function<double>("--m", [&](const double& v) { flags.m = v; }, "sphere exponent m (default 1)");
  psi->add_option_function<int>("--n", [&](const int& v) { flags.n = v; }, "LP degree, at most 12 (default 4)");
  psi->add_option("--z1", z1, "first coordinate 're,im' (default 1,0)");
  psi->add_option("--z2", z2, "second coordinate 're,im' (default 0,1)");

  auto* cheb = app.add_subcommand("chebyshev", "Chebyshev number t_n(q) and a monic minimiser");
  common(cheb);
  cheb->add_option_function<int>("--n", [&](const int& v) { flags.n = v; }, "degree (default 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    RunConfig cfg = defaults();
    if (klc->parsed() && !from_table) cfg.nmax = 500;
    if (constants->parsed()) cfg.nmax = 256;
    if (psi->parsed()) cfg.n = 4;
    const RunConfig file = config_path.empty() ? RunConfig{} : load_config(config_path);
    cfg = merge(merge(cfg, file), flags);
    if (markov->parsed()) return cmd_markov(cfg);
    if (phi->parsed()) return cmd_phi(cfg, flags.r.has_value() || file.r.has_value());
    if (klc->parsed()) return cmd_kl(cfg, from_table);
    if (constants->parsed()) return cmd_constants(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (psi->parsed()) return cmd_psi(cfg, z1, z2);
    if (cheb->parsed()) return cmd_chebyshev(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
