#include "cuspkit/report.hpp"

#include <cmath>
#include <cstdio>

namespace cuspkit {

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void dump(const Json& v, int indent, int level, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (level + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * level), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* colon = indent > 0 ? ": " : ":";
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += colon;
        dump(it.value(), indent, level + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& e : v) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        dump(e, indent, level + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::string s;
  dump(v, 0, 0, s);
  return s;
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump(value, indent, 0, out);
  return out;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const BoundReport& r) {
  Json j;
  j["claim"] = r.name;
  j["source"] = r.source;
  j["relation"] = r.relation;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  Json inputs = Json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  for (const auto& [k, v] : r.details) inputs[k] = v;
  j["witness"] = inputs;
  j["tolerance"] = r.tolerance;
  j["verified"] = r.verified;
  return j;
}

std::string to_csv(const std::vector<Json>& rows) {
  if (rows.empty()) return {};
  std::vector<std::string> keys;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) keys.push_back(it.key());
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) out += ',';
    out += csv_field(keys[i]);
  }
  out += "\r\n";
  for (const Json& row : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) out += ',';
      if (row.contains(keys[i])) out += csv_field(scalar_text(row.at(keys[i])));
    }
    out += "\r\n";
  }
  return out;
}

std::string to_text(const std::vector<Json>& rows) {
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r) out += '\n';
    for (auto it = rows[r].begin(); it != rows[r].end(); ++it) {
      out += it.key();
      out += ": ";
      out += scalar_text(it.value());
      out += '\n';
    }
  }
  return out;
}

}  // namespace cuspkit
