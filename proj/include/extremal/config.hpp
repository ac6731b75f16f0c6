#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "extremal/norms.hpp"
#include "extremal/sets.hpp"
#include "json.hpp"

namespace extremal::cli {

using json = nlohmann::json;

// Set descriptors: "interval?a=-1&b=1", "disk?R=1", "green?R=2", "diskpoint?R=1&z0=2&z0im=0", "product?R=1",
// or the JSON form {"kind": "interval", "a": -1, "b": 1}. Omitted parameters take the defaults above.
json set_json_from_descriptor(const std::string& descriptor);
sets::CompactSet set_from_json(const json& j);
sets::CompactSet parse_set(const std::string& descriptor);

// Norm descriptors: "sup" (on the configured set), "coeff?m=2&tau=1", "integral?p=2&a=-1&b=1",
// or {"kind": "coeff", "m": 2, "tau": 1}.
json norm_json_from_descriptor(const std::string& descriptor);
sets::NormSpec norm_from_json(const json& j, const std::optional<sets::CompactSet>& set, int density);

enum class Format { Csv, Json };

// Every field is optional so that flags, the config file and the defaults can be layered.
struct RunConfig {
  std::optional<std::string> command;
  std::optional<json> set;
  std::optional<json> norm;
  std::optional<std::string> seq;
  std::optional<std::string> suite;
  std::optional<int> nmax, kmax, n, k, density, points;
  std::optional<double> r, m, rmin, rmax, tolerance;
  std::optional<std::string> output;
  std::optional<Format> format;
  std::optional<std::uint64_t> seed;
};

// Reads a JSON object; unknown keys and wrongly typed values throw InputError.
RunConfig config_from_json(const json& j);
RunConfig load_config(const std::string& path);
// Fields set in `over` replace those in `base`.
RunConfig merge(RunConfig base, const RunConfig& over);
RunConfig defaults();
json to_json(const RunConfig& c);

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Resolved objects for a configuration. The norm defaults to the sup norm on the set.
struct Resolved {
  std::optional<sets::CompactSet> set;
  std::optional<sets::NormSpec> norm;
  int density = 0;  // grid density actually used (0 when no grid)
};
// Grid density defaults to the smallest adequate one for `degree`.
Resolved resolve(const RunConfig& c, int degree);

}  // namespace extremal::cli
