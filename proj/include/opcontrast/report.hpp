#pragma once

// Report documents shared by the CLI subcommands: a list of named metrics
// plus input and configuration echoes. JSON output carries full doubles and
// sorted keys; text output prints 9 significant digits.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "opcontrast/contrast.hpp"
#include "opcontrast/errors.hpp"

namespace opcontrast {

inline constexpr const char* kToolVersion = "0.3.0";

struct MetricEntry {
  std::string name;
  double value = 0.0;
  std::string path;
  std::optional<SpectralBounds> bounds;
  std::optional<double> optimal_scale;
  std::optional<bool> singular;
};

inline MetricEntry metric_from_report(std::string name, const ContrastReport& r) {
  return {std::move(name), r.value, to_string(r.path), r.bounds, r.optimal_scale, r.singular};
}

struct ReportDocument {
  std::string tool_version = kToolVersion;
  nlohmann::json input = nlohmann::json::object();
  nlohmann::json config = nlohmann::json::object();
  std::vector<MetricEntry> metrics;
  // Non-metric results (booleans, signed gaps) that need not lie in [0, 1].
  nlohmann::json extras = nlohmann::json::object();

  void add(MetricEntry m) {
    if (!(m.value >= 0.0 && m.value <= 1.0)) {
      throw DomainError("report: metric '" + m.name + "' value " + std::to_string(m.value) +
                        " outside [0, 1]");
    }
    metrics.push_back(std::move(m));
  }
};

inline nlohmann::json to_json(const ReportDocument& doc) {
  nlohmann::json j;
  j["tool_version"] = doc.tool_version;
  j["input"] = doc.input;
  j["config"] = doc.config;
  if (!doc.extras.empty()) j["extras"] = doc.extras;
  auto& metrics = j["metrics"] = nlohmann::json::array();
  for (const auto& m : doc.metrics) {
    nlohmann::json e;
    e["name"] = m.name;
    e["value"] = m.value;
    e["path"] = m.path;
    e["bounds"] = m.bounds ? nlohmann::json{{"lo", m.bounds->lo}, {"hi", m.bounds->hi}}
                           : nlohmann::json(nullptr);
    e["optimal_scale"] = m.optimal_scale ? nlohmann::json(*m.optimal_scale) : nlohmann::json(nullptr);
    if (m.singular) e["singular"] = *m.singular;
    metrics.push_back(std::move(e));
  }
  return j;
}

inline std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string to_text(const ReportDocument& doc) {
  std::string out;
  for (const auto& m : doc.metrics) {
    out += m.name + ": " + format_sig9(m.value) + "\n";
    if (!m.path.empty()) out += "  path: " + m.path + "\n";
    if (m.bounds) {
      out += "  spectral bounds: [" + format_sig9(m.bounds->lo) + ", " + format_sig9(m.bounds->hi) +
             "]\n";
    }
    if (m.optimal_scale) out += "  optimal scale A*: " + format_sig9(*m.optimal_scale) + "\n";
    if (m.singular) out += std::string("  singular: ") + (*m.singular ? "yes" : "no") + "\n";
  }
  for (const auto& [k, v] : doc.extras.items()) {
    out += k + ": ";
    if (v.is_number_float()) {
      out += format_sig9(v.get<double>());
    } else if (v.is_boolean()) {
      out += v.get<bool>() ? "yes" : "no";
    } else {
      out += v.dump();
    }
    out += "\n";
  }
  return out;
}

}  // namespace opcontrast
