#include "sobolrank/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <vector>

#include "sobolrank/errors.hpp"

namespace sobolrank {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

long long parse_int(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  long long value = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw ConfigError("config key '" + key + "': cannot parse integer from '" + t + "'");
  }
  return value;
}

std::vector<long long> parse_int_list(const std::string& text, const std::string& key) {
  std::vector<long long> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    out.push_back(parse_int(item, key));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) {
    throw ConfigError("config key '" + key + "': empty list");
  }
  return out;
}

}  // namespace

StudyFileConfig parse_study_config(std::istream& in, const std::string& source_name) {
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source_name + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(source_name + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    if (!entries.emplace(key, value).second) {
      throw ConfigError(source_name + ": duplicate key '" + key + "'");
    }
  }

  static const char* kKnown[] = {"model", "law", "ns", "max_lag", "avg_ks",
                                 "reps",  "seed", "k_rule"};
  for (const auto& [key, value] : entries) {
    bool known = false;
    for (const char* k : kKnown) known = known || key == k;
    if (!known) {
      throw ConfigError(source_name + ": unknown key '" + key + "'");
    }
  }
  for (const char* required : {"model", "law", "ns"}) {
    if (!entries.count(required)) {
      throw ConfigError(source_name + ": missing required key '" + std::string(required) + "'");
    }
  }

  StudyFileConfig out;
  out.model_name = entries.at("model");
  out.law_text = entries.at("law");
  out.config.model = make_model(out.model_name, parse_law(out.law_text));

  out.config.sample_sizes.clear();
  for (long long n : parse_int_list(entries.at("ns"), "ns")) {
    if (n < 2) throw ConfigError("config key 'ns': sample sizes must be >= 2");
    out.config.sample_sizes.push_back(static_cast<std::size_t>(n));
  }

  if (entries.count("max_lag")) {
    const long long v = parse_int(entries.at("max_lag"), "max_lag");
    if (v < 1) throw ConfigError("config key 'max_lag': must be >= 1");
    out.config.max_lag = static_cast<int>(v);
  }
  if (entries.count("avg_ks")) {
    out.config.avg_ks.clear();
    for (long long k : parse_int_list(entries.at("avg_ks"), "avg_ks")) {
      if (k < 1) throw ConfigError("config key 'avg_ks': entries must be >= 1");
      out.config.avg_ks.push_back(static_cast<int>(k));
    }
  }
  if (entries.count("reps")) {
    const long long v = parse_int(entries.at("reps"), "reps");
    if (v < 2) throw ConfigError("config key 'reps': must be >= 2");
    out.config.replications = static_cast<int>(v);
  }
  if (entries.count("seed")) {
    const long long v = parse_int(entries.at("seed"), "seed");
    if (v < 0) throw ConfigError("config key 'seed': must be >= 0");
    out.config.base_seed = static_cast<std::uint64_t>(v);
  }
  if (entries.count("k_rule")) {
    const std::string rule = entries.at("k_rule");
    if (rule == "cube_root") {
      out.config.k_rule = KRule::CubeRoot;
    } else if (rule.rfind("fixed:", 0) == 0) {
      out.config.k_rule = KRule::Fixed;
      const long long v = parse_int(rule.substr(6), "k_rule");
      if (v < 1) throw ConfigError("config key 'k_rule': fixed k must be >= 1");
      out.config.fixed_k = static_cast<int>(v);
    } else {
      throw ConfigError("config key 'k_rule': expected cube_root or fixed:<k>, got '" + rule +
                        "'");
    }
  }

  validate(out.config);
  return out;
}

StudyFileConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open config file");
  }
  return parse_study_config(in, path);
}

}  // namespace sobolrank
