#include "opuc/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "opuc/errors.hpp"

namespace opuc {

using nlohmann::json;

Config default_config() {
  Config c;
  auto add = [&](const std::string& suite, const std::string& family,
                 std::map<std::string, double> params, int n) {
    c.suites.push_back(SuiteRequest{suite, family, std::move(params), n});
  };
  add("recurrences", "random", {}, 30);
  add("cd", "random", {}, 12);
  add("ladder", "cj", {{"a", 1.0}}, 8);
  add("ladder", "sz", {{"a", 1.0}, {"b", 0.5}}, 8);
  add("ladder", "mb", {{"t", 1.0}}, 8);
  add("ode", "cj", {{"a", 1.0}}, 8);
  add("ode", "sz", {{"a", 1.0}, {"b", 0.5}}, 8);
  add("ode", "mb", {{"t", 1.0}}, 6);
  add("functional-eq", "cj", {{"a", 1.0}}, 8);
  add("functional-eq", "sz", {{"a", 1.0}, {"b", 0.5}}, 8);
  add("functional-eq", "mb", {{"t", 1.0}}, 8);
  add("q-ladder", "rs", {{"q", 0.5}}, 10);
  add("q-functional-eq", "rs", {{"q", 0.5}}, 6);
  add("q-functional-eq", "rs", {{"q", 0.2}}, 6);
  add("dpii", "mb", {{"t", 1.0}}, 10);
  add("dpii", "mb", {{"t", 0.5}}, 10);
  add("dpii", "mb", {{"t", 2.0}}, 10);
  add("rn-ode", "mb", {{"t", 1.0}}, 5);
  add("zeros-stationarity", "cj", {{"a", 1.0}}, 15);
  add("zeros-stationarity", "sz", {{"a", 1.0}, {"b", 0.5}}, 15);
  add("zeros-stationarity", "mb", {{"t", 1.0}}, 15);
  add("zeros-stationarity", "rs", {{"q", 0.5}}, 15);
  add("delta", "cj", {{"a", 1.0}}, 10);
  add("delta", "sz", {{"a", 1.0}, {"b", 0.5}}, 10);
  add("delta", "mb", {{"t", 1.0}}, 10);
  add("gen-disc", "cj", {{"a", 1.0}}, 8);
  add("gen-disc", "rs", {{"q", 0.25}}, 8);
  add("q-disc", "random", {}, 8);
  add("adjoint", "cj", {{"a", 1.0}}, 8);
  add("adjoint", "rs", {{"q", 0.5}}, 8);
  return c;
}

namespace {

SuiteRequest request_from_json(const json& j, const std::string& where) {
  SuiteRequest r;
  if (!j.contains("suite") || !j["suite"].is_string())
    throw IoError(where + ": each suite entry needs a string field 'suite'");
  r.suite = j["suite"].get<std::string>();
  if (j.contains("family")) r.family = j["family"].get<std::string>();
  if (j.contains("n")) r.n = j["n"].get<int>();
  for (const char* key : {"a", "b", "t", "q"})
    if (j.contains(key)) r.params[key] = j[key].get<double>();
  if (j.contains("params") && j["params"].is_object())
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      r.params[it.key()] = it.value().get<double>();
  return r;
}

Config config_from_json(const json& j) {
  Config c;
  if (j.contains("grid_m")) c.grid_m = j["grid_m"].get<int>();
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) throw IoError("config: 'suites' must be an array");
    int idx = 0;
    for (const auto& e : j["suites"])
      c.suites.push_back(request_from_json(e, "suites[" + std::to_string(idx++) + "]"));
  }
  return c;
}

// ---- minimal TOML subset ------------------------------------------------

struct TomlParser {
  std::istringstream in;
  int lineno = 0;

  explicit TomlParser(const std::string& text) : in(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw IoError("config parse error at line " + std::to_string(lineno) + ": " + msg);
  }

  static std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  // removes comments outside of strings
  static std::string drop_comment(const std::string& s) {
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') in_str = !in_str;
      if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
  }

  json parse_value(const std::string& raw) {
    const std::string v = strip(raw);
    if (v.empty()) fail("empty value");
    if (v.front() == '"') {
      if (v.size() < 2 || v.back() != '"') fail("unterminated string");
      return v.substr(1, v.size() - 2);
    }
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '[') {
      if (v.back() != ']') fail("unterminated array");
      json arr = json::array();
      std::string inner = v.substr(1, v.size() - 2);
      std::string item;
      bool in_str = false;
      for (char ch : inner) {
        if (ch == '"') in_str = !in_str;
        if (ch == ',' && !in_str) {
          if (!strip(item).empty()) arr.push_back(parse_value(item));
          item.clear();
        } else {
          item += ch;
        }
      }
      if (!strip(item).empty()) arr.push_back(parse_value(item));
      return arr;
    }
    try {
      size_t used = 0;
      if (v.find_first_of(".eE") != std::string::npos) {
        const double d = std::stod(v, &used);
        if (used != v.size()) fail("trailing characters after number '" + v + "'");
        return d;
      }
      const long long i = std::stoll(v, &used);
      if (used != v.size()) fail("trailing characters after number '" + v + "'");
      return i;
    } catch (const IoError&) {
      throw;
    } catch (const std::exception&) {
      fail("cannot parse value '" + v + "'");
    }
  }

  json parse() {
    json root = json::object();
    json* target = &root;
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      line = strip(drop_comment(line));
      if (line.empty()) continue;
      if (line.rfind("[[", 0) == 0) {
        if (line.size() < 5 || line.substr(line.size() - 2) != "]]") fail("malformed table array");
        const std::string name = strip(line.substr(2, line.size() - 4));
        if (name.empty()) fail("empty table-array name");
        if (!root.contains(name)) root[name] = json::array();
        root[name].push_back(json::object());
        target = &root[name].back();
      } else if (line.front() == '[') {
        if (line.back() != ']') fail("malformed table header");
        const std::string name = strip(line.substr(1, line.size() - 2));
        if (name.empty()) fail("empty table name");
        root[name] = json::object();
        target = &root[name];
      } else {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = strip(line.substr(0, eq));
        if (key.empty()) fail("empty key");
        (*target)[key] = parse_value(line.substr(eq + 1));
      }
    }
    return root;
  }
};

}  // namespace

Config parse_config_toml(const std::string& text) {
  TomlParser p(text);
  return config_from_json(p.parse());
}

Config parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const bool toml = path.size() >= 5 && path.substr(path.size() - 5) == ".toml";
  return toml ? parse_config_toml(buf.str()) : parse_config_json(buf.str());
}

std::string config_hash(const Config& c) {
  json j;
  j["grid_m"] = c.grid_m;
  j["suites"] = json::array();
  for (const auto& s : c.suites) {
    json e;
    e["suite"] = s.suite;
    e["family"] = s.family;
    e["n"] = s.n;
    e["params"] = json::object();
    for (const auto& [k, v] : s.params) e["params"][k] = v;
    j["suites"].push_back(e);
  }
  const std::string canon = j.dump();
  unsigned long long h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

}  // namespace opuc
