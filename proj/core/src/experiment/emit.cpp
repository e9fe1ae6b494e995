#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

#include "detail/format.hpp"
#include "membranekit/experiment.hpp"

namespace mkit::experiment {

namespace {

using detail::format_double;
using detail::parse_double;
using detail::trim;
using json = nlohmann::ordered_json;

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    out.emplace_back(trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos
                                                                          : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

void check_shape(const SweepResult& r) {
  for (const auto& c : r.columns) {
    if (c.name.empty() || c.unit.empty()) throw ValidationError("every column needs a name and unit");
    if (c.name.find_first_of(",\n") != std::string::npos ||
        c.unit.find_first_of(",\n") != std::string::npos) {
      throw ValidationError("column names and units cannot contain commas or newlines");
    }
  }
  for (const auto& row : r.rows) {
    if (row.size() != r.columns.size()) throw ValidationError("row width differs from column count");
  }
}

std::string emit_csv(const SweepResult& r) {
  std::ostringstream out;
  out << "# tool: " << r.provenance.tool << '\n';
  out << "# config_hash: " << r.provenance.config_hash << '\n';
  out << "# constants: " << r.provenance.constants << '\n';
  for (const auto& n : r.notes) {
    out << "# note: " << n.key << " = " << format_double(n.value) << ' ' << n.unit << '\n';
  }
  out << "# units: ";
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i].unit;
  out << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i].name;
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  return out.str();
}

SweepResult parse_csv(std::string_view text) {
  SweepResult r;
  std::vector<std::string> units;
  bool have_header = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  auto fail = [&](const std::string& msg) -> void {
    throw ValidationError("csv line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const auto key = trim(body.substr(0, colon));
      const auto value = trim(body.substr(colon + 1));
      if (key == "tool") {
        r.provenance.tool = value;
      } else if (key == "config_hash") {
        r.provenance.config_hash = value;
      } else if (key == "constants") {
        r.provenance.constants = value;
      } else if (key == "units") {
        units = split(value, ',');
      } else if (key == "note") {
        const auto eq = value.find('=');
        if (eq == std::string_view::npos) fail("malformed note");
        const auto rhs = trim(value.substr(eq + 1));
        const auto space = rhs.find(' ');
        Note note;
        note.key = trim(value.substr(0, eq));
        if (space == std::string_view::npos || !parse_double(rhs.substr(0, space), note.value)) {
          fail("malformed note value");
        }
        note.unit = trim(rhs.substr(space + 1));
        r.notes.push_back(note);
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (!have_header) {
      if (units.size() != fields.size()) fail("units header does not match the column header");
      for (std::size_t i = 0; i < fields.size(); ++i) r.columns.push_back({fields[i], units[i]});
      have_header = true;
      continue;
    }
    if (fields.size() != r.columns.size()) fail("row width differs from the header");
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!parse_double(fields[i], row[i])) fail("malformed number '" + fields[i] + "'");
    }
    r.rows.push_back(std::move(row));
  }
  if (!have_header) throw ValidationError("csv: no column header");
  return r;
}

std::string emit_json(const SweepResult& r) {
  json doc;
  doc["provenance"] = {{"tool", r.provenance.tool},
                       {"config_hash", r.provenance.config_hash},
                       {"constants", r.provenance.constants}};
  json notes = json::array();
  for (const auto& n : r.notes) notes.push_back({{"key", n.key}, {"value", n.value}, {"unit", n.unit}});
  doc["notes"] = notes;
  json columns = json::array();
  json units = json::object();
  json data = json::object();
  for (std::size_t c = 0; c < r.columns.size(); ++c) {
    columns.push_back(r.columns[c].name);
    units[r.columns[c].name] = r.columns[c].unit;
    json values = json::array();
    for (const auto& row : r.rows) values.push_back(row[c]);
    data[r.columns[c].name] = values;
  }
  doc["columns"] = columns;
  doc["units"] = units;
  doc["data"] = data;
  return doc.dump(2) + "\n";
}

SweepResult parse_json(std::string_view text) {
  SweepResult r;
  try {
    const json doc = json::parse(text);
    const auto& p = doc.at("provenance");
    r.provenance = {p.at("tool").get<std::string>(), p.at("config_hash").get<std::string>(),
                    p.at("constants").get<std::string>()};
    for (const auto& n : doc.at("notes")) {
      r.notes.push_back({n.at("key").get<std::string>(), n.at("value").get<double>(),
                         n.at("unit").get<std::string>()});
    }
    std::size_t rows = 0;
    bool first = true;
    for (const auto& name : doc.at("columns")) {
      const auto key = name.get<std::string>();
      r.columns.push_back({key, doc.at("units").at(key).get<std::string>()});
      const auto& values = doc.at("data").at(key);
      if (first) {
        rows = values.size();
        r.rows.assign(rows, {});
        first = false;
      } else if (values.size() != rows) {
        throw ValidationError("json: column '" + key + "' has a different length");
      }
      for (std::size_t i = 0; i < rows; ++i) r.rows[i].push_back(values[i].get<double>());
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("json: ") + e.what());
  }
  return r;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string emit(const SweepResult& result, Format format) {
  check_shape(result);
  return format == Format::kCsv ? emit_csv(result) : emit_json(result);
}

SweepResult parse_result(std::string_view document, Format format) {
  return format == Format::kCsv ? parse_csv(document) : parse_json(document);
}

std::string emit_report(const Report& report, std::optional<Format> format) {
  std::ostringstream out;
  if (!format) {
    out << "# " << report.title << '\n';
    for (const auto& w : report.warnings) out << "# warning: " << w << '\n';
    for (const auto& e : report.entries) {
      out << e.name << " = " << format_double(e.value) << ' ' << e.unit << '\n';
    }
    return out.str();
  }
  if (*format == Format::kCsv) {
    out << "# " << report.title << '\n';
    for (const auto& w : report.warnings) out << "# warning: " << w << '\n';
    out << "name,value,unit\n";
    for (const auto& e : report.entries) {
      out << e.name << ',' << format_double(e.value) << ',' << e.unit << '\n';
    }
    return out.str();
  }
  json doc;
  doc["title"] = report.title;
  doc["warnings"] = report.warnings;
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"name", e.name}, {"value", e.value}, {"unit", e.unit}});
  }
  doc["entries"] = entries;
  return doc.dump(2) + "\n";
}

}  // namespace mkit::experiment
