#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "extremal/engine.hpp"
#include "json.hpp"

namespace extremal::cli {

using json = nlohmann::json;

// 15 significant digits with a '.' separator; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);
// exp(log_value) to 15 significant digits; beyond double range, 12 digits computed from the log.
std::string format_exp(double log_value);
// RFC 4180 quoting when the field contains a comma, quote or line break.
std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

// Markov table as CSV (n,k,value,method) and its JSON mirror.
void write_markov_csv(std::ostream& os, const engine::MarkovTable& t);
json markov_json(const engine::MarkovTable& t);

// Two-column plot data with a JSON metadata sidecar.
struct Curve {
  std::string x_name;
  std::string y_name;
  std::vector<double> x;
  std::vector<double> y;
  json meta = json::object();
};
void write_curve_csv(std::ostream& os, const Curve& c);
json curve_json(const Curve& c);

enum class Status { Pass, Fail, Flagged };
std::string to_string(Status s);

struct Check {
  std::string id;
  Status status = Status::Pass;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string basis;  // where the target comes from: closed form, oracle, bound, scan
  std::string note;
};

// Pass iff measured and target agree within the relative tolerance.
Check approx_check(std::string id, double measured, double target, double rel_tol, std::string basis,
                   std::string note = {});
// Pass iff measured <= bound (1 + rel_tol).
Check upper_check(std::string id, double measured, double bound, double rel_tol, std::string basis,
                  std::string note = {});
// Pass iff measured >= bound - abs_tol.
Check lower_check(std::string id, double measured, double bound, double abs_tol, std::string basis,
                  std::string note = {});
Check bool_check(std::string id, bool ok, std::string basis, std::string note = {});

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  // Fail iff any check fails; flagged checks do not fail the suite.
  Status status() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const SuiteReport& other);
};
json to_json(const SuiteReport& r);
// One line per check; ANSI colour only when `color` is set.
void write_text(std::ostream& os, const SuiteReport& r, bool color);
// Colour is used when stdout is a terminal and NO_COLOR is unset or empty.
bool use_color();

}  // namespace extremal::cli
