#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "extremal/config.hpp"
#include "extremal/errors.hpp"
#include "extremal/report.hpp"

using namespace extremal;
using namespace extremal::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" EXTREMAL_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (l == line) return true;
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("extremal_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("markov command rows") {
  auto r = run("markov --set disk --nmax 6");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,k,value,method\n", 0) == 0);
  CHECK(has_line(r.out, "4,2,12,ClosedForm"));

  r = run("markov --set interval --nmax 4");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "4,2,80,LP"));

  r = run("markov --norm 'coeff?m=2&tau=1' --nmax 3");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "3,1,9,ClosedForm"));
  // rows are ordered by n then k
  CHECK(r.out == "n,k,value,method\n1,1,1,ClosedForm\n2,1,4,ClosedForm\n2,2,4,ClosedForm\n3,1,9,ClosedForm\n"
                 "3,2,36,ClosedForm\n3,3,36,ClosedForm\n");
}

TEST_CASE("markov values beyond double range are printed from logs") {
  const auto r = run("markov --norm 'coeff?m=2&tau=1' --nmax 120");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "120,120,4.4749449229e+397,ClosedForm"));
}

TEST_CASE("phi, kl, constants, psi and chebyshev commands") {
  auto r = run("phi --set disk --n 8 --r 1");
  CHECK(r.code == 0);
  CHECK(r.out == "r,phi_n\n1,256\n");

  r = run("kl --seq factorial --nmax 200 --format json");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const auto& row = j.at("rows").at(0);
  CHECK(row.at("minimal_log_C").get<double>() <= 2.0195);
  CHECK(row.contains("worst_n"));
  CHECK(row.contains("worst_k"));

  r = run("constants --set interval --m 2 --format json");
  REQUIRE(r.code == 0);
  double cb = NAN;
  const auto consts = json::parse(r.out);
  for (const auto& x : consts.at("rows"))
    if (x.at("name") == "C_B") cb = x.at("value").get<double>();
  CHECK(cb == doctest::Approx(2.0 / std::exp(2.0)).epsilon(0.015));

  r = run("psi --m 1 --z1 1,0 --z2 0,1");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("method,value\nproduct,", 0) == 0);

  r = run("chebyshev --set interval --n 5 --format json");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("t_n").get<double>() == doctest::Approx(1.0 / 16.0).epsilon(5e-3));
}

TEST_CASE("phi curve has log-spaced radii and metadata") {
  const auto path = scratch("curve.csv");
  const auto r = run("phi --set disk --n 2 --rmin 0.5 --rmax 2 --points 3 --output '" + path.string() + "'");
  CHECK(r.code == 0);
  CHECK(slurp(path) == "r,phi_n\n0.5,2.25\n1,4\n2,9\n");
  const auto meta = json::parse(slurp(path.string() + ".json"));
  CHECK(meta.at("degree") == 2);
  CHECK(meta.at("method") == "closed-form");
  CHECK(meta.at("points").size() == 3);
}

TEST_CASE("exit codes") {
  CHECK(run("markov --set bogus").code == 64);
  CHECK(run("markov --nmax 0").code == 64);
  CHECK(run("markov --no-such-flag").code == 64);
  CHECK(run("").code == 64);
  CHECK(run("--help").code == 0);
  CHECK(run("verify --suite nonsense").code == 64);
  CHECK(run("phi --set product").code == 64);
  CHECK(run("psi --z1 abc").code == 64);
  // a grid far too coarse for the degree makes the LP cutoff fail
  CHECK(run("phi --set interval --n 60 --r 1 --density 1").code == 3);
  CHECK(run("verify --suite markov-chain --set interval").code == 0);
  // closed-forms carries the interval n = 32 check that is 2.14% short of the 2% target
  CHECK(run("verify --suite closed-forms").code == 2);
}

TEST_CASE("config file precedence and validation") {
  const auto cfg = scratch("cfg.json");
  {
    std::ofstream(cfg) << R"({"set": {"kind": "disk", "R": 1}, "nmax": 3})";
  }
  auto r = run("markov --config '" + cfg.string() + "'");
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "3,1,3,ClosedForm"));
  CHECK_FALSE(has_line(r.out, "4,1,4,ClosedForm"));

  // flags override the file
  r = run("markov --config '" + cfg.string() + "' --nmax 4");
  CHECK(has_line(r.out, "4,2,12,ClosedForm"));
  r = run("markov --config '" + cfg.string() + "' --set interval");
  CHECK(r.out.find("\n3,1,9.00") != std::string::npos);
  CHECK(r.out.find(",LP\n") != std::string::npos);

  {
    std::ofstream(cfg) << R"({"nmax": 3, "colour": true})";
  }
  CHECK(run("markov --config '" + cfg.string() + "'").code == 64);
  {
    std::ofstream(cfg) << R"({"nmax": "three"})";
  }
  CHECK(run("markov --config '" + cfg.string() + "'").code == 64);
  CHECK(run("markov --config /nonexistent/cfg.json").code == 64);
}

TEST_CASE("verify writes a JSON report and repeated runs are identical") {
  const auto path = scratch("report.json");
  const auto a = run("verify --suite markov-chain --set interval --output '" + path.string() + "'", "NO_COLOR=1");
  CHECK(a.code == 0);
  CHECK(a.out.find("\033[") == std::string::npos);
  const auto rep = json::parse(slurp(path));
  CHECK(rep.at("status") == "pass");
  CHECK(rep.at("checks").size() > 5);
  for (const auto& c : rep.at("checks")) {
    CHECK(c.contains("measured"));
    CHECK(c.contains("target"));
    CHECK(c.contains("tolerance"));
    CHECK(c.contains("basis"));
  }
  const auto b = run("verify --suite markov-chain --set interval", "NO_COLOR=1");
  CHECK(a.out == b.out);
  CHECK(run("markov --set interval --nmax 5").out == run("markov --set interval --nmax 5").out);
}

TEST_CASE("csv output with a JSON mirror") {
  const auto path = scratch("m.csv");
  const auto r = run("markov --set disk --nmax 3 --output '" + path.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(has_line(slurp(path), "3,2,6,ClosedForm"));
  const auto mirror = json::parse(slurp(path.string() + ".json"));
  CHECK(mirror.at("method") == "ClosedForm");
  CHECK(mirror.at("rows").size() == 6);
  CHECK(mirror.at("config").at("nmax") == 3);
}

TEST_CASE("config parsing") {
  const auto c = config_from_json(json::parse(R"({"set": {"kind": "green", "R": 3}, "nmax": 5, "format": "json",
                                                    "seed": 11, "tolerance": 1e-4})"));
  CHECK(c.nmax == 5);
  CHECK(c.format == Format::Json);
  CHECK(c.seed == 11u);
  CHECK_FALSE(c.kmax.has_value());
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"bogus": 1})")), InputError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"nmax": 2.5})")), InputError);
  CHECK_THROWS_AS(config_from_json(json::parse("[1, 2]")), InputError);

  const auto m = merge(defaults(), c);
  CHECK(m.nmax == 5);
  CHECK(m.kmax == defaults().kmax);
  CHECK(m.seed == 11u);
  CHECK(defaults().seed == kDefaultSeed);

  CHECK(set_json_from_descriptor("disk?R=2") == json::parse(R"({"kind": "disk", "R": 2.0})"));
  CHECK(set_json_from_descriptor("interval").at("a") == -1.0);
  CHECK_THROWS_AS(set_json_from_descriptor("disk?Q=2"), InputError);
  CHECK_THROWS_AS(set_json_from_descriptor("disk?R=abc"), InputError);
  CHECK_THROWS_AS(set_from_json(json::parse(R"({"kind": "disk", "R": 1, "extra": 0})")), InputError);
  CHECK(parse_set("green?R=2").describe() == set_from_json(set_json_from_descriptor("green?R=2")).describe());
  CHECK(norm_json_from_descriptor("coeff?m=3").at("tau") == 1.0);
  CHECK_THROWS_AS(norm_json_from_descriptor("lp?p=2"), InputError);

  RunConfig rc;
  rc.set = set_json_from_descriptor("product?R=0.5");
  CHECK_FALSE(resolve(rc, 4).norm.has_value());
  rc.set = set_json_from_descriptor("interval");
  const auto res = resolve(rc, 4);
  CHECK(res.norm.has_value());
  CHECK(res.density > 0);
}

TEST_CASE("report formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_exp(std::log(80.0)) == "80");
  CHECK(format_exp(-INFINITY) == "0");
  CHECK(format_exp(1000.0 * std::log(10.0)) == "1e+1000");
  CHECK(format_exp(-1000.0 * std::log(10.0)) == "1e-1000");

  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  std::ostringstream os;
  write_csv_row(os, {"x", "y,z", ""});
  CHECK(os.str() == "x,\"y,z\",\n");
}

TEST_CASE("suite report status and colour") {
  SuiteReport r{"demo", {}};
  r.add(approx_check("a", 1.0, 1.0 + 1e-9, 1e-6, "closed form"));
  r.add(upper_check("b", 2.0, 2.0, 0.0, "bound"));
  r.add(lower_check("c", 0.9995, 1.0, 1e-3, "bound"));
  CHECK(r.status() == Status::Pass);
  Check flagged = bool_check("d", false, "scan", "reported only");
  flagged.status = Status::Flagged;
  r.add(flagged);
  CHECK(r.status() == Status::Pass);
  r.add(approx_check("e", NAN, 1.0, 1.0, "closed form"));
  CHECK(r.status() == Status::Fail);

  const auto j = to_json(r);
  CHECK(j.at("status") == "fail");
  CHECK(j.at("checks").at(3).at("status") == "flagged");
  CHECK(j.at("checks").at(4).at("measured") == "nan");

  std::ostringstream plain, colored;
  write_text(plain, r, false);
  write_text(colored, r, true);
  CHECK(plain.str().find("\033[") == std::string::npos);
  CHECK(colored.str().find("\033[31mfail\033[0m") != std::string::npos);

  SuiteReport all{"all", {}};
  all.append(r);
  CHECK(all.checks.front().id == "demo/a");

  ::setenv("NO_COLOR", "1", 1);
  CHECK_FALSE(use_color());
  ::unsetenv("NO_COLOR");
}
