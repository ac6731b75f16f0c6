#include "extremal/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "extremal/errors.hpp"

namespace extremal::cli {

namespace {

struct KindSchema {
  std::map<std::string, double> defaults;
};

const std::map<std::string, KindSchema>& set_schemas() {
  static const std::map<std::string, KindSchema> s{
      {"interval", {{{"a", -1.0}, {"b", 1.0}}}},
      {"disk", {{{"R", 1.0}}}},
      {"green", {{{"R", 2.0}}}},
      {"diskpoint", {{{"R", 1.0}, {"z0", 2.0}, {"z0im", 0.0}}}},
      {"product", {{{"R", 1.0}}}},
  };
  return s;
}

const std::map<std::string, KindSchema>& norm_schemas() {
  static const std::map<std::string, KindSchema> s{
      {"sup", {{}}},
      {"coeff", {{{"m", 2.0}, {"tau", 1.0}}}},
      {"integral", {{{"p", 2.0}, {"a", -1.0}, {"b", 1.0}, {"max_degree", 30.0}}}},
  };
  return s;
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("parameter '" + key + "' is not a number");
  }
  if (used != text.size()) throw InputError("parameter '" + key + "' is not a number");
  return v;
}

// Validates keys against the schema and fills defaults.
std::map<std::string, double> params_of(const json& j, const std::map<std::string, KindSchema>& schemas,
                                        const std::string& what, std::string& kind) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError(what + " must be an object with a string \"kind\"");
  kind = j["kind"].get<std::string>();
  const auto it = schemas.find(kind);
  if (it == schemas.end()) throw InputError("unknown " + what + " kind '" + kind + "'");
  std::map<std::string, double> p = it->second.defaults;
  for (const auto& [key, val] : j.items()) {
    if (key == "kind") continue;
    if (!p.count(key)) throw InputError(what + " kind '" + kind + "' has no parameter '" + key + "'");
    if (!val.is_number()) throw InputError(what + " parameter '" + key + "' must be a number");
    p[key] = val.get<double>();
  }
  return p;
}

// "kind?x=1&y=2" -> {"kind": kind, "x": 1, "y": 2, ...}, unknown keys rejected and defaults filled
json descriptor_to_json(const std::string& descriptor, const std::map<std::string, KindSchema>& schemas,
                        const std::string& what) {
  const auto q = descriptor.find('?');
  const std::string kind = descriptor.substr(0, q);
  if (!schemas.count(kind)) throw InputError("unknown " + what + " kind '" + kind + "'");
  json j{{"kind", kind}};
  if (q != std::string::npos) {
    std::stringstream ss(descriptor.substr(q + 1));
    std::string item;
    while (std::getline(ss, item, '&')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw InputError("bad " + what + " parameter '" + item + "'");
      const std::string key = item.substr(0, eq);
      if (j.contains(key)) throw InputError("duplicate " + what + " parameter '" + key + "'");
      j[key] = parse_number(key, item.substr(eq + 1));
    }
  }
  std::string k;
  for (const auto& [key, val] : params_of(j, schemas, what, k)) j[key] = val;
  return j;
}

template <class T>
void read_field(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config key '") + key + "' has the wrong type");
  }
}

void read_int(const json& j, const char* key, std::optional<int>& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_integer()) throw InputError(std::string("config key '") + key + "' must be an integer");
  out = j.at(key).get<int>();
}

}  // namespace

json set_json_from_descriptor(const std::string& descriptor) {
  return descriptor_to_json(descriptor, set_schemas(), "set");
}

sets::CompactSet set_from_json(const json& j) {
  std::string kind;
  const auto p = params_of(j, set_schemas(), "set", kind);
  if (kind == "interval") return sets::CompactSet::interval(p.at("a"), p.at("b"));
  if (kind == "disk") return sets::CompactSet::disk(p.at("R"));
  if (kind == "green") return sets::CompactSet::green_level(p.at("R"));
  if (kind == "diskpoint") return sets::CompactSet::disk_with_point(p.at("R"), {p.at("z0"), p.at("z0im")});
  return sets::CompactSet::product_interval_disk(p.at("R"));
}

sets::CompactSet parse_set(const std::string& descriptor) { return set_from_json(set_json_from_descriptor(descriptor)); }

json norm_json_from_descriptor(const std::string& descriptor) {
  return descriptor_to_json(descriptor, norm_schemas(), "norm");
}

sets::NormSpec norm_from_json(const json& j, const std::optional<sets::CompactSet>& set, int density) {
  std::string kind;
  const auto p = params_of(j, norm_schemas(), "norm", kind);
  if (kind == "sup") {
    if (!set) throw InputError("the sup norm needs a set");
    return sets::NormSpec::sup_on(*set, density);
  }
  if (kind == "coeff") return sets::NormSpec::coeff(p.at("m"), p.at("tau"));
  const double md = p.at("max_degree");
  if (md != std::floor(md)) throw InputError("max_degree must be an integer");
  return sets::NormSpec::integral(p.at("p"), p.at("a"), p.at("b"), static_cast<int>(md));
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const std::set<std::string> known{"command", "set",  "norm", "seq",    "suite",  "nmax", "kmax",
                                           "n",       "k",    "density", "points", "r",   "m",    "rmin",
                                           "rmax",    "tolerance", "output", "format", "seed"};
  for (const auto& [key, val] : j.items())
    if (!known.count(key)) throw InputError("unknown config key '" + key + "'");
  RunConfig c;
  read_field(j, "command", c.command);
  if (j.contains("set")) c.set = j["set"].is_string() ? set_json_from_descriptor(j["set"]) : j["set"];
  if (j.contains("norm")) c.norm = j["norm"].is_string() ? norm_json_from_descriptor(j["norm"]) : j["norm"];
  if (c.set) set_from_json(*c.set);  // validate early
  if (c.norm) {
    std::string kind;
    params_of(*c.norm, norm_schemas(), "norm", kind);
  }
  read_field(j, "seq", c.seq);
  read_field(j, "suite", c.suite);
  read_int(j, "nmax", c.nmax);
  read_int(j, "kmax", c.kmax);
  read_int(j, "n", c.n);
  read_int(j, "k", c.k);
  read_int(j, "density", c.density);
  read_int(j, "points", c.points);
  read_field(j, "r", c.r);
  read_field(j, "m", c.m);
  read_field(j, "rmin", c.rmin);
  read_field(j, "rmax", c.rmax);
  read_field(j, "tolerance", c.tolerance);
  read_field(j, "output", c.output);
  if (j.contains("format")) {
    const auto f = j["format"];
    if (f == "csv") c.format = Format::Csv;
    else if (f == "json") c.format = Format::Json;
    else throw InputError("format must be \"csv\" or \"json\"");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InputError("config key 'seed' must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

RunConfig merge(RunConfig base, const RunConfig& over) {
  auto take = [](auto& dst, const auto& src) {
    if (src) dst = src;
  };
  take(base.command, over.command);
  take(base.set, over.set);
  take(base.norm, over.norm);
  take(base.seq, over.seq);
  take(base.suite, over.suite);
  take(base.nmax, over.nmax);
  take(base.kmax, over.kmax);
  take(base.n, over.n);
  take(base.k, over.k);
  take(base.density, over.density);
  take(base.points, over.points);
  take(base.r, over.r);
  take(base.m, over.m);
  take(base.rmin, over.rmin);
  take(base.rmax, over.rmax);
  take(base.tolerance, over.tolerance);
  take(base.output, over.output);
  take(base.format, over.format);
  take(base.seed, over.seed);
  return base;
}

RunConfig defaults() {
  RunConfig c;
  c.set = set_json_from_descriptor("interval");
  c.nmax = 8;
  c.kmax = 3;
  c.n = 8;
  c.r = 1.0;
  c.m = 1.0;
  c.rmin = 0.01;
  c.rmax = 100.0;
  c.points = 41;
  c.tolerance = 1e-3;
  c.format = Format::Csv;
  c.seed = kDefaultSeed;
  c.suite = "all";
  c.seq = "factorial";
  return c;
}

json to_json(const RunConfig& c) {
  json j = json::object();
  auto put = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  put("command", c.command);
  put("set", c.set);
  put("norm", c.norm);
  put("seq", c.seq);
  put("suite", c.suite);
  put("nmax", c.nmax);
  put("kmax", c.kmax);
  put("n", c.n);
  put("k", c.k);
  put("density", c.density);
  put("points", c.points);
  put("r", c.r);
  put("m", c.m);
  put("rmin", c.rmin);
  put("rmax", c.rmax);
  put("tolerance", c.tolerance);
  put("output", c.output);
  if (c.format) j["format"] = *c.format == Format::Csv ? "csv" : "json";
  put("seed", c.seed);
  return j;
}

Resolved resolve(const RunConfig& c, int degree) {
  Resolved r;
  if (c.set) r.set = set_from_json(*c.set);
  const json norm = c.norm ? *c.norm : json{{"kind", "sup"}};
  if (norm.at("kind") == "sup") {
    if (!r.set) throw InputError("the sup norm needs a set");
    // the product set has only a closed-form profile
    if (r.set->kind() == sets::SetKind::ProductIntervalDisk) return r;
    r.density = c.density ? *c.density : sets::min_density_for_degree(*r.set, std::max(degree, 1));
  }
  r.norm = norm_from_json(norm, r.set, std::max(r.density, 1));
  return r;
}

}  // namespace extremal::cli
