#include "slpkit/configfile.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace slp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& raw, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + raw + "'");
  }
}

long parse_long(const std::string& raw, const std::string& key) {
  long v = 0;
  const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (ec != std::errc() || p != raw.data() + raw.size()) {
    throw ConfigError(key, "expected an integer, got '" + raw + "'");
  }
  return v;
}

bool parse_bool(const std::string& raw, const std::string& key) {
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError(key, "expected true/false, got '" + raw + "'");
}

class KeyReader {
 public:
  explicit KeyReader(const KeyValues& kv) : kv_(kv) {}

  const std::string* find(const std::string& key) {
    seen_.insert(key);
    const auto it = kv_.find(key);
    return it == kv_.end() ? nullptr : &it->second;
  }

  std::string require(const std::string& key) {
    const std::string* v = find(key);
    if (!v) throw ConfigError(key, "required key is missing");
    return *v;
  }

  long get_long(const std::string& key, long fallback) {
    const std::string* v = find(key);
    return v ? parse_long(*v, key) : fallback;
  }

  double get_double(const std::string& key, double fallback) {
    const std::string* v = find(key);
    return v ? parse_double(*v, key) : fallback;
  }

  bool get_bool(const std::string& key, bool fallback) {
    const std::string* v = find(key);
    return v ? parse_bool(*v, key) : fallback;
  }

  std::string get_string(const std::string& key, std::string fallback) {
    const std::string* v = find(key);
    return v ? *v : fallback;
  }

  std::vector<double> get_doubles(const std::string& key) {
    const std::string* v = find(key);
    std::vector<double> out;
    if (!v) return out;
    for (const std::string& tok : split_ws(*v)) out.push_back(parse_double(tok, key));
    return out;
  }

  std::vector<int> get_ints(const std::string& key) {
    const std::string* v = find(key);
    std::vector<int> out;
    if (!v) return out;
    for (const std::string& tok : split_ws(*v)) out.push_back(static_cast<int>(parse_long(tok, key)));
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : kv_) {
      if (!seen_.contains(key)) throw ConfigError(key, "unknown key");
    }
  }

 private:
  const KeyValues& kv_;
  std::set<std::string> seen_;
};

}  // namespace

KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  std::string section;
  std::istringstream iss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(iss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno), "malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno), "empty section name");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (kv.contains(full)) throw ConfigError(full, "duplicate key");
    kv[full] = value;
  }
  return kv;
}

KeyValues parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string canonical_config(const KeyValues& kv) {
  std::string out;
  for (const auto& [key, value] : kv) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  }
  return out;
}

std::string config_hash(const KeyValues& kv) {
  const std::string canon = canonical_config(kv);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ScenarioConfig scenario_from_config(const KeyValues& kv) {
  KeyReader r(kv);
  ScenarioConfig cfg;
  cfg.antennas = static_cast<int>(parse_long(r.require("system.antennas"), "system.antennas"));
  cfg.users = static_cast<int>(parse_long(r.require("system.users"), "system.users"));
  cfg.modulation = static_cast<int>(r.get_long("system.modulation", 8));
  cfg.noise_var = r.get_double("system.noise_var", 1.0);
  cfg.seed = static_cast<std::uint64_t>(r.get_long("system.seed", 1));
  cfg.workers = static_cast<int>(r.get_long("system.workers", 0));

  cfg.gamma_db = r.get_doubles("sweep.gamma_db");
  const std::string methods_raw = r.require("sweep.methods");
  for (const std::string& tok : split_ws(methods_raw)) {
    const auto m = method_from_name(tok);
    if (!m) throw ConfigError("sweep.methods", "unknown method '" + tok + "'");
    cfg.methods.push_back(*m);
  }
  cfg.epsilon = r.get_doubles("sweep.epsilon");
  cfg.xi2 = r.get_doubles("sweep.xi2");
  cfg.upsilon = r.get_doubles("sweep.upsilon");
  cfg.feasibility_axis = r.get_string("sweep.feasibility_axis", "upsilon");

  cfg.channels = static_cast<int>(r.get_long("counts.channels", 100));
  cfg.slots = static_cast<int>(r.get_long("counts.slots", 50));
  cfg.noise_draws = static_cast<int>(r.get_long("counts.noise_draws", 1));
  cfg.validation_draws = r.get_long("counts.validation_draws", 100000);

  cfg.users_grid = r.get_ints("benchmark.users_grid");
  cfg.bench_solves = static_cast<int>(r.get_long("benchmark.solves", 40));

  cfg.solver.max_iterations = static_cast<int>(r.get_long("solver.max_iterations", 50000));
  cfg.solver.tolerance = r.get_double("solver.tolerance", 1e-8);
  cfg.solver.infeas_tolerance = r.get_double("solver.infeas_tolerance", 1e-7);
  cfg.solver.relaxation = r.get_double("solver.relaxation", 1.5);
  cfg.solver.normalize = r.get_bool("solver.normalize", true);

  r.reject_unknown();
  cfg.config_hash = config_hash(kv);
  cfg.validate_common();
  return cfg;
}

}  // namespace slp
