#include "extremal/report.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace extremal::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // the program never calls setlocale, so printf uses the "C" locale and a '.' separator
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string format_exp(double log_value) {
  if (std::isnan(log_value)) return "nan";
  if (log_value == -INFINITY) return "0";
  if (log_value == INFINITY) return "inf";
  char buf[64];
  if (std::abs(log_value) < 700.0) {
    std::snprintf(buf, sizeof buf, "%.15g", std::exp(log_value));
    return buf;
  }
  const double l10 = log_value / std::numbers::ln10;
  double ex = std::floor(l10);
  // the mantissa carries about |l10| * 1e-16 relative error, so 12 digits are kept
  double mant = std::round(std::pow(10.0, l10 - ex) * 1e11) / 1e11;
  if (mant >= 10.0) {
    mant /= 10.0;
    ex += 1.0;
  }
  std::snprintf(buf, sizeof buf, "%.12ge%+.0f", mant, ex);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << '\n';
}

void write_markov_csv(std::ostream& os, const engine::MarkovTable& t) {
  write_csv_row(os, {"n", "k", "value", "method"});
  const std::string method = engine::to_string(t.method);
  for (int n = 1; n <= t.nmax; ++n)
    for (int k = 1; k <= n; ++k)
      write_csv_row(os, {std::to_string(n), std::to_string(k), format_exp(t.log_value(n, k)), method});
}

json markov_json(const engine::MarkovTable& t) {
  json rows = json::array();
  for (int n = 1; n <= t.nmax; ++n)
    for (int k = 1; k <= n; ++k)
      rows.push_back({{"n", n}, {"k", k}, {"value", format_exp(t.log_value(n, k))}, {"log_value", t.log_value(n, k)}});
  return {{"descriptor", t.descriptor}, {"nmax", t.nmax}, {"method", engine::to_string(t.method)}, {"rows", rows}};
}

void write_curve_csv(std::ostream& os, const Curve& c) {
  write_csv_row(os, {c.x_name, c.y_name});
  for (std::size_t i = 0; i < c.x.size(); ++i) write_csv_row(os, {format_number(c.x[i]), format_number(c.y[i])});
}

json curve_json(const Curve& c) {
  json pts = json::array();
  for (std::size_t i = 0; i < c.x.size(); ++i) pts.push_back({{c.x_name, c.x[i]}, {c.y_name, c.y[i]}});
  json j = c.meta;
  j["points"] = pts;
  return j;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Flagged: return "flagged";
  }
  return "fail";
}

namespace {

Check make(std::string id, bool ok, double measured, double target, double tol, std::string basis, std::string note) {
  Check c;
  c.id = std::move(id);
  c.status = ok ? Status::Pass : Status::Fail;
  c.measured = measured;
  c.target = target;
  c.tolerance = tol;
  c.basis = std::move(basis);
  c.note = std::move(note);
  return c;
}

}  // namespace

Check approx_check(std::string id, double measured, double target, double rel_tol, std::string basis,
                   std::string note) {
  const bool ok = std::isfinite(measured) && std::abs(measured - target) <= rel_tol * std::abs(target);
  return make(std::move(id), ok, measured, target, rel_tol, std::move(basis), std::move(note));
}

Check upper_check(std::string id, double measured, double bound, double rel_tol, std::string basis,
                  std::string note) {
  const bool ok = !std::isnan(measured) && measured <= bound * (1.0 + rel_tol);
  return make(std::move(id), ok, measured, bound, rel_tol, std::move(basis), std::move(note));
}

Check lower_check(std::string id, double measured, double bound, double abs_tol, std::string basis,
                  std::string note) {
  const bool ok = !std::isnan(measured) && measured >= bound - abs_tol;
  return make(std::move(id), ok, measured, bound, abs_tol, std::move(basis), std::move(note));
}

Check bool_check(std::string id, bool ok, std::string basis, std::string note) {
  return make(std::move(id), ok, ok ? 1.0 : 0.0, 1.0, 0.0, std::move(basis), std::move(note));
}

Status SuiteReport::status() const {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return Status::Fail;
  return Status::Pass;
}

void SuiteReport::append(const SuiteReport& other) {
  for (auto c : other.checks) {
    c.id = other.suite + "/" + c.id;
    checks.push_back(std::move(c));
  }
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  // non-finite numbers are written as strings so the document stays valid JSON
  auto num = [](double v) -> json { return std::isfinite(v) ? json(v) : json(format_number(v)); };
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"status", to_string(c.status)},
                      {"measured", num(c.measured)},
                      {"target", num(c.target)},
                      {"tolerance", num(c.tolerance)},
                      {"basis", c.basis},
                      {"note", c.note}});
  return {{"suite", r.suite}, {"status", to_string(r.status())}, {"checks", checks}};
}

void write_text(std::ostream& os, const SuiteReport& r, bool color) {
  auto paint = [&](Status s) {
    const std::string word = to_string(s);
    if (!color) return word;
    const char* code = s == Status::Pass ? "\033[32m" : s == Status::Fail ? "\033[31m" : "\033[33m";
    return std::string(code) + word + "\033[0m";
  };
  for (const auto& c : r.checks) {
    os << paint(c.status) << "  " << c.id << "  measured=" << format_number(c.measured)
       << " target=" << format_number(c.target) << " tol=" << format_number(c.tolerance) << " [" << c.basis << "]";
    if (!c.note.empty()) os << "  " << c.note;
    os << '\n';
  }
  os << "suite " << r.suite << ": " << paint(r.status()) << '\n';
}

bool use_color() {
  const char* nc = std::getenv("NO_COLOR");
  if (nc && *nc) return false;
  return isatty(STDOUT_FILENO) != 0;
}

}  // namespace extremal::cli
