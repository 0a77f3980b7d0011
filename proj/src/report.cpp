#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hardy/harness.hpp"

namespace hardy {

std::string_view to_string(Relation relation) {
  return relation == Relation::LessEqual ? "<=" : "==";
}

Check make_check(std::string name, double lhs, Relation relation, double rhs, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = relation;
  const double allowance = tolerance * std::abs(rhs) + tolerance;
  if (relation == Relation::LessEqual)
    c.slack = (rhs + allowance) - lhs;
  else
    c.slack = allowance - std::abs(lhs - rhs);
  c.holds = c.slack >= 0.0;  // false for NaN
  return c;
}

Check failed_check(std::string name, std::string reason) {
  Check c;
  c.name = std::move(name);
  c.lhs = c.rhs = c.slack = std::numeric_limits<double>::quiet_NaN();
  c.holds = false;
  c.reason = std::move(reason);
  return c;
}

bool VerificationReport::all_hold() const {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

std::optional<double> VerificationReport::quantity(std::string_view name) const {
  for (const auto& [key, value] : quantities)
    if (key == name) return value;
  return std::nullopt;
}

const Check* VerificationReport::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void emit_number_map(std::ostream& os, const std::vector<std::pair<std::string, double>>& entries) {
  if (entries.empty()) {
    os << "{}";
    return;
  }
  os << "{\n";
  for (std::size_t i = 0; i < entries.size(); ++i)
    os << "    " << quoted(entries[i].first) << ": " << format_real17(entries[i].second)
       << (i + 1 < entries.size() ? ",\n" : "\n");
  os << "  }";
}

std::string emit_json(const VerificationReport& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"tool_version\": " << quoted(r.tool_version) << ",\n";
  os << "  \"seed\": " << r.seed << ",\n";
  os << "  \"tolerance\": " << format_real17(r.tolerance) << ",\n";
  os << "  \"graph_summary\": {\"n\": " << r.vertex_count << ", \"edge_count\": " << r.edge_count
     << ", \"mass_total\": " << format_real17(r.mass_total) << "},\n";
  os << "  \"quantities\": ";
  emit_number_map(os, r.quantities);
  os << ",\n";
  os << "  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    os << (i ? ",\n" : "\n") << "    {\"name\": " << quoted(c.name) << ", \"lhs\": " << format_real17(c.lhs)
       << ", \"rhs\": " << format_real17(c.rhs) << ", \"relation\": " << quoted(std::string(to_string(c.relation)))
       << ", \"holds\": " << (c.holds ? "true" : "false") << ", \"slack\": " << format_real17(c.slack)
       << ", \"reason\": " << quoted(c.reason) << "}";
  }
  os << (r.checks.empty() ? "],\n" : "\n  ],\n");
  os << "  \"witnesses\": ";
  if (r.witnesses.empty()) {
    os << "{}";
  } else {
    os << "{\n";
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
      os << "    " << quoted(r.witnesses[i].first) << ": [";
      const auto& names = r.witnesses[i].second;
      for (std::size_t j = 0; j < names.size(); ++j) os << (j ? ", " : "") << quoted(names[j]);
      os << "]" << (i + 1 < r.witnesses.size() ? ",\n" : "\n");
    }
    os << "  }";
  }
  os << ",\n";
  os << "  \"timing_ms\": ";
  emit_number_map(os, r.timing_ms);
  os << "\n}\n";
  return os.str();
}

std::string emit_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "name,lhs,rhs,relation,holds,slack,reason\n";
  for (const auto& c : r.checks)
    os << csv_field(c.name) << ',' << format_real17(c.lhs) << ',' << format_real17(c.rhs) << ','
       << to_string(c.relation) << ',' << (c.holds ? "true" : "false") << ',' << format_real17(c.slack) << ','
       << csv_field(c.reason) << '\n';
  return os.str();
}

}  // namespace

std::string emit_report(const VerificationReport& report, ReportFormat format) {
  return format == ReportFormat::Json ? emit_json(report) : emit_csv(report);
}

}  // namespace hardy
