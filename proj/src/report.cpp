#include "kgrhs/report.hpp"

#include <cmath>
#include <cstdio>

namespace kgrhs {

using nlohmann::json;

namespace {

void dump(const json& v, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(item.key()).dump() + ": ";
        dump(item.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ", ";
        first = false;
        dump(item, out, depth + 1);
      }
      out += "]";
      return;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? format_number(d, 17) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

bool fail(std::string* reason, const std::string& why) {
  if (reason) *reason = why;
  return false;
}

bool has_number(const json& obj, const char* key) { return obj.contains(key) && obj.at(key).is_number(); }

}  // namespace

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string dump_json(const json& value) {
  std::string out;
  dump(value, out, 0);
  out += "\n";
  return out;
}

bool validate_report(const json& doc, std::string* reason) {
  if (!doc.is_object()) return fail(reason, "report must be an object");
  for (const auto& item : doc.items())
    if (item.key() != "meta" && item.key() != "result") return fail(reason, "unknown top-level field " + item.key());
  if (!doc.contains("meta") || !doc.at("meta").is_object()) return fail(reason, "meta object missing");
  const json& meta = doc.at("meta");
  if (!meta.contains("tool") || !meta.contains("command") || !meta.contains("version"))
    return fail(reason, "meta needs tool, version and command");
  if (!doc.contains("result") || !doc.at("result").is_object()) return fail(reason, "result object missing");
  const json& r = doc.at("result");
  const std::string command = meta.at("command").get<std::string>();
  if (r.contains("rows")) {
    if (!r.at("rows").is_array()) return fail(reason, "rows must be an array");
    return true;
  }
  if (command == "klein") {
    if (r.contains("amplitudes_unspecified")) return r.contains("mass_shift") || fail(reason, "mass_shift missing");
    for (const char* key : {"refl", "trans", "rt_sum", "correction", "energy_residual"})
      if (!has_number(r, key)) return fail(reason, std::string("klein result needs numeric ") + key);
    if (!r.contains("regime") || !r.at("regime").is_string()) return fail(reason, "klein result needs regime");
    return true;
  }
  for (const char* key : {"case", "solution", "constraints", "expectations", "verifier", "passed"})
    if (!r.contains(key)) return fail(reason, std::string("solve result needs ") + key);
  return true;
}

}  // namespace kgrhs
