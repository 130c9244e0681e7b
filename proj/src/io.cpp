#include "qbm/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qbm/error.hpp"

namespace qbm {

namespace {

using json = nlohmann::ordered_json;

double parse_double(const std::string& s, std::size_t line) {
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ConfigError("line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(s);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_value(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void write_csv(std::ostream& os, const MsdSeries& s) {
  for (const auto& [k, v] : s.params_echo) os << "# " << k << '=' << v << '\n';
  os << "t,msd,route,fallback\n";
  const std::string route = to_string(s.route);
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    os << format_value(s.times[i]) << ',' << format_value(s.values[i]) << ',' << route << ','
       << to_string(s.flags[i]) << '\n';
  }
}

std::string to_csv(const MsdSeries& s) {
  std::ostringstream os;
  write_csv(os, s);
  return os.str();
}

MsdSeries parse_csv(std::istream& is) {
  MsdSeries s;
  std::string line;
  std::size_t n = 0;
  bool header_seen = false;
  bool route_seen = false;
  while (std::getline(is, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line.rfind("# ", 0) == 0) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
          throw ConfigError("line " + std::to_string(n) + ": header without '='");
        }
        s.params_echo.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
        continue;
      }
      if (line != "t,msd,route,fallback") {
        throw ConfigError("line " + std::to_string(n) + ": expected 't,msd,route,fallback'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw ConfigError("line " + std::to_string(n) + ": expected 4 fields");
    s.times.push_back(parse_double(f[0], n));
    s.values.push_back(parse_double(f[1], n));
    const Route r = parse_route(f[2]);
    if (route_seen && r != s.route) {
      throw ConfigError("line " + std::to_string(n) + ": mixed routes");
    }
    s.route = r;
    route_seen = true;
    s.flags.push_back(parse_point_flag(f[3]));
  }
  if (!header_seen) throw ConfigError("missing 't,msd,route,fallback' header");
  if (!route_seen) {
    const auto r = s.echo("route");
    if (!r.empty()) s.route = parse_route(r);
  }
  return s;
}

MsdSeries parse_csv_string(const std::string& text) {
  std::istringstream is(text);
  return parse_csv(is);
}

std::string to_json(const MsdSeries& s) {
  json j;
  j["params"] = json::object();
  for (const auto& [k, v] : s.params_echo) j["params"][k] = v;
  j["route"] = to_string(s.route);
  j["series"] = json::array();
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    j["series"].push_back(
        {{"t", s.times[i]}, {"msd", s.values[i]}, {"fallback", to_string(s.flags[i])}});
  }
  return j.dump(2) + "\n";
}

MsdSeries parse_json(const std::string& text) {
  MsdSeries s;
  try {
    const json j = json::parse(text);
    for (const auto& [k, v] : j.at("params").items()) {
      s.params_echo.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
    }
    s.route = parse_route(j.at("route").get<std::string>());
    for (const auto& p : j.at("series")) {
      s.times.push_back(p.at("t").get<double>());
      s.values.push_back(p.at("msd").get<double>());
      s.flags.push_back(parse_point_flag(p.at("fallback").get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed series JSON: ") + e.what());
  }
  return s;
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("unknown format '" + name + "' (expected csv or json)");
}

void write_series(const std::string& path, Format format, const MsdSeries& s) {
  const std::string text = format == Format::csv ? to_csv(s) : to_json(s);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

}  // namespace qbm
